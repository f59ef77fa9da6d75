"""Geometry of a generalized parallel coordinate plot.

Coordinates live in the unit square: axes are spread uniformly over
``x in [0, 1]`` and every observation gets an entry and an exit height in
``[0, 1]`` on each axis (``y = 0`` is the bottom). On categorical axes the
observations of a level are spread over that level's box; their order
within the box is chosen to avoid crossings with the neighbouring axes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from gpcp.dataset import Column, Frame, Kind
from gpcp.errors import GpcpError, LayoutInvariantError
from gpcp.selection import ResolvedSpec


class ScaleMethod(enum.Enum):
    PER_AXIS = "axis"
    GLOBAL = "global"
    RAW = "raw"


@dataclass(frozen=True)
class LayoutParams:
    gap_total: float = 0.10
    box_width: float = 0.1
    scale_method: ScaleMethod = ScaleMethod.PER_AXIS

    def __post_init__(self):
        if not 0 <= self.gap_total < 1:
            raise GpcpError(f"gap_total must be in [0, 1), got {self.gap_total}")
        if not 0 < self.box_width < 1:
            raise GpcpError(f"box_width must be in (0, 1), got {self.box_width}")


@dataclass(frozen=True)
class LevelBox:
    axis: int
    level: int
    label: str
    y0: float
    y1: float
    count: int


@dataclass(frozen=True)
class FactorBlock:
    """Inclusive run ``[start, end]`` of adjacent categorical axes.

    ``sub_blocks`` partitions the run at breakpoint axes; neighbouring
    sub-blocks share their boundary axis.
    """

    start: int
    end: int
    sub_blocks: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class AxisLayout:
    index: int
    column: str
    kind: Kind
    x_center: float
    x_left: float
    x_right: float
    break_after: bool = False
    boxes: tuple[LevelBox, ...] = ()
    # categorical axes keep a reference to their level codes
    codes: np.ndarray | None = None
    # numeric axes: the data values mapped to 0 and 1
    scale_min: float | None = None
    scale_max: float | None = None


@dataclass(frozen=True, eq=False)
class PointMatrix:
    y_in: np.ndarray
    y_out: np.ndarray


@dataclass(frozen=True, eq=False)
class Layout:
    axes: tuple[AxisLayout, ...]
    points: PointMatrix
    blocks: tuple[FactorBlock, ...]
    params: LayoutParams
    n_rows: int
    warnings: tuple[str, ...] = field(default=())

    def level_rows(self, axis: int, side: str = "in") -> list[np.ndarray]:
        """Rows of each level on ``axis``, bottom to top, as placed on the given side."""
        ax = self.axes[axis]
        if ax.kind is not Kind.CATEGORICAL:
            raise ValueError(f"axis {axis} is numeric")
        y = (self.points.y_in if side == "in" else self.points.y_out)[:, axis]
        order = np.lexsort((y, ax.codes))
        bounds = np.cumsum([b.count for b in ax.boxes])[:-1]
        return np.split(order, bounds)


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------

def scale_numeric(values: Sequence[float] | np.ndarray, method: ScaleMethod = ScaleMethod.PER_AXIS,
                  bounds: tuple[float, float] | None = None) -> np.ndarray:
    """Map values onto ``[0, 1]``.

    ``bounds`` supplies the (min, max) pair shared by all numeric axes for
    ``ScaleMethod.GLOBAL``; a degenerate range maps everything to 0.5.
    """
    values = np.asarray(values, dtype=np.float64)
    if method is ScaleMethod.RAW:
        if values.size and (values.min() < 0 or values.max() > 1):
            raise GpcpError("raw scaling requires values already in [0, 1]")
        return values.copy()
    if method is ScaleMethod.GLOBAL:
        if bounds is None:
            raise ValueError("global scaling needs bounds")
        lo, hi = bounds
    else:
        if values.size == 0:
            return values.copy()
        lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.full(values.shape, 0.5)
    return (values - lo) / (hi - lo)


def identify_factor_blocks(kinds: Sequence[Kind], breaks: Sequence[bool]) -> list[FactorBlock]:
    blocks = []
    axis = 0
    while axis < len(kinds):
        if kinds[axis] is not Kind.CATEGORICAL:
            axis += 1
            continue
        start = axis
        while axis + 1 < len(kinds) and kinds[axis + 1] is Kind.CATEGORICAL:
            axis += 1
        end = axis
        subs, lo = [], start
        for b in range(start, end):
            if breaks[b]:
                subs.append((lo, b))
                lo = b
        subs.append((lo, end))
        blocks.append(FactorBlock(start, end, tuple(subs)))
        axis += 1
    return blocks


def level_boxes(counts: Sequence[int], gap_total: float, n_rows: int) -> list[tuple[float, float]]:
    """Stack one box per level from y=0 upward, heights proportional to counts."""
    k = len(counts)
    if k == 1:
        return [(0.0, 1.0)]
    gap = gap_total / (k - 1)
    boxes = []
    filled = 0
    for i, count in enumerate(counts):
        # position from the running total so rounding error does not accumulate
        y0 = (1 - gap_total) * filled / n_rows + i * gap
        filled += count
        y1 = (1 - gap_total) * filled / n_rows + i * gap
        boxes.append((y0, y1))
    return boxes


def hierarchical_order(codes: Sequence[np.ndarray], n_levels: Sequence[int],
                       left_tiebreak: np.ndarray | None = None,
                       right_tiebreak: np.ndarray | None = None) -> list[list[np.ndarray]]:
    """Within-level row order for every axis of one sub-block.

    ``codes`` holds the level codes of the sub-block's axes, left to right.
    The rightmost axis is ordered by the numeric tiebreak (the left
    neighbour wins over the right one), then by row index. Every other axis
    is ordered within its levels by the rows' positions on the axis to its
    right, which amounts to sorting right to left through the block.

    Returns, per axis, one array of row indices per level (bottom to top).
    """
    n = len(codes[0])
    rows = np.arange(n)
    tiebreak = left_tiebreak if left_tiebreak is not None else right_tiebreak
    last = codes[-1]
    order = np.lexsort((rows, last) if tiebreak is None else (rows, tiebreak, last))
    orders = [order]
    for axis in range(len(codes) - 2, -1, -1):
        position = np.empty(n, dtype=np.int64)
        position[orders[0]] = rows
        orders.insert(0, np.lexsort((position, codes[axis])))
    return [_split_levels(order, c, k) for order, c, k in zip(orders, codes, n_levels)]


def _split_levels(order: np.ndarray, codes: np.ndarray, k: int) -> list[np.ndarray]:
    counts = np.bincount(codes, minlength=k)
    return np.split(order, np.cumsum(counts)[:-1])


def assign_positions(rows: np.ndarray | Sequence[int], y0: float, y1: float) -> np.ndarray:
    """Heights for rows already in bottom-to-top order: slot midpoints of the box."""
    n = len(rows)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    return y0 + (ranks - 0.5) / n * (y1 - y0)


def reconcile_breakpoint(left_order: Sequence[np.ndarray], right_order: Sequence[np.ndarray],
                         boxes: Sequence[tuple[float, float]],
                         n_rows: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Entry heights from the left sub-block's order, exit heights from the right's.

    Both orders use the same slots of each box, so lines only re-sort
    inside the box. Rows absent from every level are left as NaN.
    """
    if n_rows is None:
        n_rows = sum(len(level) for level in left_order)
    y_in = np.full(n_rows, np.nan)
    y_out = np.full(n_rows, np.nan)
    for level, (left, right, (y0, y1)) in enumerate(zip(left_order, right_order, boxes)):
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        if len(left) != len(right) or not np.array_equal(np.sort(left), np.sort(right)):
            raise LayoutInvariantError(f"level {level}: left and right orders cover different rows")
        if len(left):
            y_in[left] = assign_positions(left, y0, y1)
            y_out[right] = assign_positions(right, y0, y1)
    return y_in, y_out


# ---------------------------------------------------------------------------
# Full layout
# ---------------------------------------------------------------------------

def _numeric_neighbour(axes_kind: Sequence[Kind], columns: Sequence[Column], axis: int) -> np.ndarray | None:
    if 0 <= axis < len(axes_kind) and axes_kind[axis] is Kind.NUMERIC:
        return columns[axis].values
    return None


def compute_layout(frame: Frame, spec: ResolvedSpec, params: LayoutParams | None = None) -> Layout:
    params = params or LayoutParams()
    n = frame.n_rows
    if n < 1:
        raise GpcpError("cannot lay out a frame with no rows")
    columns = [frame.columns[i] for i in spec.axis_columns]
    kinds = [c.kind for c in columns]
    m = len(columns)
    spacing = 1.0 / (m - 1) if m > 1 else 1.0
    half_box = params.box_width * spacing / 2

    y_in = np.empty((n, m))
    y_out = np.empty((n, m))
    warnings = []

    bounds = None
    if params.scale_method is ScaleMethod.GLOBAL:
        numeric = [c.values for c in columns if c.is_numeric]
        if numeric:
            bounds = (min(float(v.min()) for v in numeric), max(float(v.max()) for v in numeric))

    axes = []
    box_spans: dict[int, list[tuple[float, float]]] = {}
    for j, column in enumerate(columns):
        x = j * spacing if m > 1 else 0.5
        if column.is_numeric:
            y = scale_numeric(column.values, params.scale_method, bounds)
            y_in[:, j] = y
            y_out[:, j] = y
            if params.scale_method is ScaleMethod.RAW:
                lo, hi = 0.0, 1.0
            elif bounds is not None:
                lo, hi = bounds
            else:
                lo, hi = float(column.values.min()), float(column.values.max())
            axes.append(AxisLayout(j, column.name, Kind.NUMERIC, x, x, x,
                                   spec.break_after[j], scale_min=lo, scale_max=hi))
        else:
            counts = column.level_counts()
            spans = level_boxes(counts.tolist(), params.gap_total, n)
            box_spans[j] = spans
            boxes = tuple(LevelBox(j, k, column.levels[k], y0, y1, int(counts[k]))
                          for k, (y0, y1) in enumerate(spans))
            for box in boxes:
                if box.count == 0:
                    warnings.append(f"axis {j + 1} ({column.name!r}): level {box.label!r} "
                                    "has no observations; drawn as an empty box")
            axes.append(AxisLayout(j, column.name, Kind.CATEGORICAL, x, x - half_box, x + half_box,
                                   spec.break_after[j], boxes=boxes, codes=column.codes))

    blocks = identify_factor_blocks(kinds, spec.break_after)
    # Exit positions come from the sub-block in which the axis is not the
    # right end (or from the last sub-block for the block's own right end).
    # Breakpoint axes take their entry positions afterwards.
    for block in blocks:
        for start, end in block.sub_blocks:
            left_tb = _numeric_neighbour(kinds, columns, start - 1)
            right_tb = _numeric_neighbour(kinds, columns, end + 1)
            orders = hierarchical_order([columns[a].codes for a in range(start, end + 1)],
                                        [len(columns[a].levels) for a in range(start, end + 1)],
                                        left_tb, right_tb)
            for offset, per_level in enumerate(orders):
                axis = start + offset
                if axis == end and spec.break_after[axis]:
                    continue
                for rows, (y0, y1) in zip(per_level, box_spans[axis]):
                    if len(rows):
                        y_out[rows, axis] = assign_positions(rows, y0, y1)
                if not spec.break_after[axis]:
                    y_in[:, axis] = y_out[:, axis]
        for axis in range(block.start, block.end + 1):
            if not spec.break_after[axis]:
                continue
            codes = columns[axis].codes
            k = len(columns[axis].levels)
            # entry side follows the exit heights on the axis to the left
            left_order = _split_levels(np.lexsort((np.arange(n), y_out[:, axis - 1], codes)), codes, k)
            right_order = _split_levels(np.lexsort((y_out[:, axis], codes)), codes, k)
            y_in[:, axis], y_out[:, axis] = reconcile_breakpoint(left_order, right_order,
                                                                 box_spans[axis], n)

    for a in y_in, y_out:
        a.setflags(write=False)
    return Layout(tuple(axes), PointMatrix(y_in, y_out), tuple(blocks), params, n, tuple(warnings))
