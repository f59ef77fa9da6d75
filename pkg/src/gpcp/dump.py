"""JSON serialization of a Layout.

The document is self-contained: with the optional ``canvas`` section it
holds everything needed to redraw each polyline. Floats are written with
``repr`` precision, so they round-trip exactly.

Top-level fields::

    format       "gpcp-layout/1"
    n_rows       number of observations
    params       {gap_total, box_width, scale_method}
    axes         [{index, column, kind, x_center, x_left, x_right,
                   break_after, boxes: [{axis, level, label, y0, y1, count}],
                   scale: {min, max} | null}]
    blocks       [{start, end, sub_blocks: [[start, end], ...]}]
    points       {y_in: [[row values per axis]], y_out: [...]}
    warnings     [text]
    canvas       {width, height, margins: [top, right, bottom, left],
                  x_domain: [lo, hi]}          (optional)
"""

from __future__ import annotations

import json
from dataclasses import asdict

from gpcp.dataset import Kind
from gpcp.layout import Layout

FORMAT = "gpcp-layout/1"


def layout_to_dict(layout: Layout, transform=None) -> dict:
    axes = []
    for ax in layout.axes:
        axes.append({
            "index": ax.index,
            "column": ax.column,
            "kind": ax.kind.value,
            "x_center": ax.x_center,
            "x_left": ax.x_left,
            "x_right": ax.x_right,
            "break_after": ax.break_after,
            "boxes": [asdict(box) for box in ax.boxes],
            "scale": ({"min": ax.scale_min, "max": ax.scale_max}
                      if ax.kind is Kind.NUMERIC else None),
        })
    doc = {
        "format": FORMAT,
        "n_rows": layout.n_rows,
        "params": {
            "gap_total": layout.params.gap_total,
            "box_width": layout.params.box_width,
            "scale_method": layout.params.scale_method.value,
        },
        "axes": axes,
        "blocks": [{"start": b.start, "end": b.end, "sub_blocks": [list(s) for s in b.sub_blocks]}
                   for b in layout.blocks],
        "points": {"y_in": layout.points.y_in.tolist(), "y_out": layout.points.y_out.tolist()},
        "warnings": list(layout.warnings),
    }
    if transform is not None:
        doc["canvas"] = {
            "width": transform.width,
            "height": transform.height,
            "margins": list(transform.margins),
            "x_domain": list(transform.x_domain),
        }
    return doc


def dumps(layout: Layout, transform=None) -> str:
    return json.dumps(layout_to_dict(layout, transform), indent=1, allow_nan=False) + "\n"


def polylines_from_dump(doc: dict) -> list[list[tuple[float, float]]]:
    """Rebuild every row's polyline vertices in canvas pixels from a dump
    that carries a ``canvas`` section. Rows come back in data order."""
    canvas = doc["canvas"]
    top, right, bottom, left = canvas["margins"]
    lo, hi = canvas["x_domain"]
    width, height = canvas["width"], canvas["height"]

    def px(x):
        return left + (x - lo) / (hi - lo) * (width - left - right)

    def py(y):
        return top + (1 - y) * (height - top - bottom)

    lines = []
    for y_in, y_out in zip(doc["points"]["y_in"], doc["points"]["y_out"]):
        vertices = []
        for ax in doc["axes"]:
            j = ax["index"]
            if ax["kind"] == Kind.NUMERIC.value:
                vertices.append((px(ax["x_center"]), py(y_in[j])))
            else:
                vertices.append((px(ax["x_left"]), py(y_in[j])))
                vertices.append((px(ax["x_right"]), py(y_out[j])))
        lines.append(vertices)
    return lines
