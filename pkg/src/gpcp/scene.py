"""Turn a layout into a flat drawing list and write it out as SVG.

The drawing list is painted in order: axis rules, level boxes, polylines,
then labels. Coordinates in the list are already in canvas pixels with the
origin at the top left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from gpcp.dataset import Frame, Kind
from gpcp.draworder import Groups
from gpcp.errors import StyleError
from gpcp.layout import Layout

# Okabe-Ito
DEFAULT_PALETTE = ("#E69F00", "#56B4E9", "#009E73", "#F0E442",
                   "#0072B2", "#D55E00", "#CC79A7", "#000000")


@dataclass(frozen=True)
class RenderStyle:
    alpha: float = 0.6
    line_width: float = 1.0
    palette: tuple[str, ...] = DEFAULT_PALETTE
    line_color: str = "#4D4D4D"  # used when lines are not colored by group
    canvas_width: int = 900
    canvas_height: int = 600
    margins: tuple[float, float, float, float] = (30.0, 40.0, 40.0, 50.0)  # top, right, bottom, left
    show_boxes: bool = True
    show_labels: bool = True
    show_axis_labels: bool = True
    background: str = "#FFFFFF"
    box_stroke: str = "#333333"
    box_fill: str = "none"
    font_size: float = 11.0

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise StyleError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.line_width <= 0:
            raise StyleError("line width must be positive")
        if self.canvas_width <= 0 or self.canvas_height <= 0:
            raise StyleError("canvas size must be positive")
        if len(self.margins) != 4 or any(m < 0 for m in self.margins):
            raise StyleError("margins must be four non-negative numbers")
        top, right, bottom, left = self.margins
        if left + right >= self.canvas_width or top + bottom >= self.canvas_height:
            raise StyleError("margins leave no room to draw")


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[float, float], ...]
    color: str
    opacity: float
    width: float
    row: int


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float
    stroke: str
    fill: str


@dataclass(frozen=True)
class Text:
    x: float
    y: float
    text: str
    size: float
    anchor: str = "middle"


@dataclass(frozen=True)
class Segment:
    x0: float
    y0: float
    x1: float
    y1: float
    stroke: str


Item = Union[Polyline, Rect, Text, Segment]


@dataclass(frozen=True)
class Scene:
    width: int
    height: int
    items: tuple[Item, ...] = field(default=())

    def of_type(self, kind: type) -> list:
        return [item for item in self.items if isinstance(item, kind)]


@dataclass(frozen=True)
class CanvasTransform:
    """Maps unit-square layout coordinates to canvas pixels (y flipped)."""

    width: int
    height: int
    margins: tuple[float, float, float, float]
    x_domain: tuple[float, float]

    @classmethod
    def for_layout(cls, layout: Layout, style: RenderStyle) -> CanvasTransform:
        # boxes on the outermost axes stick out past 0 and 1
        lo = min([0.0] + [ax.x_left for ax in layout.axes])
        hi = max([1.0] + [ax.x_right for ax in layout.axes])
        return cls(style.canvas_width, style.canvas_height, tuple(style.margins), (lo, hi))

    def x(self, x):
        top, right, bottom, left = self.margins
        lo, hi = self.x_domain
        return left + (x - lo) / (hi - lo) * (self.width - left - right)

    def y(self, y):
        top, right, bottom, left = self.margins
        return top + (1 - y) * (self.height - top - bottom)


def _fmt_value(v: float) -> str:
    return f"{v:.6g}"


def build_scene(layout: Layout, frame: Frame, order: np.ndarray, style: RenderStyle,
                groups: Groups | None = None) -> Scene:
    """Assemble the drawing list.

    Lines are colored by ``groups`` through the palette when given, and
    drawn in ``style.line_color`` otherwise.
    """
    if len(order) != layout.n_rows or layout.n_rows != frame.n_rows:
        raise StyleError("draw order, layout and frame disagree on the number of rows")
    if groups is not None and groups.n_groups > len(style.palette):
        raise StyleError(f"palette has {len(style.palette)} colors but there are "
                         f"{groups.n_groups} groups")
    t = CanvasTransform.for_layout(layout, style)
    items: list[Item] = []

    for ax in layout.axes:
        if ax.kind is Kind.NUMERIC:
            px = t.x(ax.x_center)
            items.append(Segment(px, t.y(0.0), px, t.y(1.0), style.box_stroke))

    if style.show_boxes:
        for ax in layout.axes:
            for box in ax.boxes:
                items.append(Rect(t.x(ax.x_left), t.y(box.y1), t.x(ax.x_right), t.y(box.y0),
                                  style.box_stroke, style.box_fill))

    # vertex columns: numeric axes give one vertex, categorical axes two
    xs, ys = [], []
    y_in, y_out = layout.points.y_in, layout.points.y_out
    for ax in layout.axes:
        if ax.kind is Kind.NUMERIC:
            xs.append(t.x(ax.x_center))
            ys.append(t.y(y_in[:, ax.index]))
        else:
            xs.extend((t.x(ax.x_left), t.x(ax.x_right)))
            ys.extend((t.y(y_in[:, ax.index]), t.y(y_out[:, ax.index])))
    vertex_y = np.column_stack(ys)
    for row in order.tolist():
        color = style.palette[groups.ids[row]] if groups is not None else style.line_color
        points = tuple(zip(xs, vertex_y[row].tolist()))
        items.append(Polyline(points, color, style.alpha, style.line_width, row))

    if style.show_labels:
        for ax in layout.axes:
            for box in ax.boxes:
                # skip labels that would overflow their box
                if t.y(box.y0) - t.y(box.y1) < style.font_size:
                    continue
                items.append(Text(t.x(ax.x_center), t.y((box.y0 + box.y1) / 2) + style.font_size * 0.35,
                                  box.label, style.font_size))

    if style.show_axis_labels:
        top, right, bottom, left = style.margins
        name_y = style.canvas_height - bottom + min(bottom - 2, style.font_size * 1.6)
        for ax in layout.axes:
            items.append(Text(t.x(ax.x_center), name_y, ax.column, style.font_size))
            if ax.kind is Kind.NUMERIC:
                px = t.x(ax.x_center) - 4
                if ax.scale_min == ax.scale_max:
                    items.append(Text(px, t.y(0.5), _fmt_value(ax.scale_min), style.font_size * 0.85, "end"))
                else:
                    items.append(Text(px, t.y(0.0), _fmt_value(ax.scale_min), style.font_size * 0.85, "end"))
                    items.append(Text(px, t.y(1.0) + style.font_size * 0.7, _fmt_value(ax.scale_max),
                                      style.font_size * 0.85, "end"))

    return Scene(style.canvas_width, style.canvas_height, tuple(items))


# ---------------------------------------------------------------------------
# SVG output
# ---------------------------------------------------------------------------

def _f(v: float) -> str:
    return f"{v:.6f}"


_ANCHORS = {"start", "middle", "end"}


def _element(item: Item) -> str:
    if isinstance(item, Polyline):
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in item.points)
        return (f'<polyline points="{pts}" fill="none" stroke={quoteattr(item.color)} '
                f'stroke-opacity="{_f(item.opacity)}" stroke-width="{_f(item.width)}" '
                f'stroke-linejoin="round"/>')
    if isinstance(item, Rect):
        return (f'<rect x="{_f(item.x0)}" y="{_f(item.y0)}" width="{_f(item.x1 - item.x0)}" '
                f'height="{_f(item.y1 - item.y0)}" fill={quoteattr(item.fill)} stroke={quoteattr(item.stroke)}/>')
    if isinstance(item, Segment):
        return (f'<line x1="{_f(item.x0)}" y1="{_f(item.y0)}" x2="{_f(item.x1)}" '
                f'y2="{_f(item.y1)}" stroke={quoteattr(item.stroke)}/>')
    if isinstance(item, Text):
        anchor = item.anchor if item.anchor in _ANCHORS else "middle"
        return (f'<text x="{_f(item.x)}" y="{_f(item.y)}" font-size="{_f(item.size)}" '
                f'text-anchor="{anchor}">{escape(item.text)}</text>')
    raise TypeError(f"unknown scene item {item!r}")


def emit_svg(scene: Scene, style: RenderStyle) -> bytes:
    """Serialize a scene; the output depends only on (scene, style)."""
    w, h = scene.width, scene.height
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill={quoteattr(style.background)}/>',
    ]
    lines.extend(_element(item) for item in scene.items)
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
