"""Painting order of polylines (which lines end up on top)."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from gpcp.dataset import Frame, Kind
from gpcp.errors import GpcpError
from gpcp.layout import Layout
from gpcp.selection import ResolvedSpec


class DrawPolicy(enum.Enum):
    SMALL_ON_TOP = "small-on-top"
    LARGE_ON_TOP = "large-on-top"
    HIERARCHICAL = "hierarchical"
    DATA_ORDER = "data"


@dataclass(frozen=True, eq=False)
class Groups:
    """Per-row group ids plus the size of each group.

    ``first_seen`` lists group ids by first appearance in the data; groups
    with no rows (unobserved levels of a grouping column) are left out.
    """

    ids: np.ndarray
    counts: tuple[int, ...]
    labels: tuple[str, ...]
    first_seen: tuple[int, ...]

    @property
    def n_groups(self) -> int:
        return len(self.counts)


def group_sizes(frame: Frame, group_index: int | None, spec: ResolvedSpec) -> Groups:
    """Group rows by the grouping column, or else by their level combination
    across all categorical axes of the spec."""
    n = frame.n_rows
    if group_index is not None:
        column = frame.columns[group_index]
        if column.kind is not Kind.CATEGORICAL:
            raise GpcpError(f"grouping column {column.name!r} is numeric")
        ids = column.codes
        labels = column.levels
        counts = tuple(int(c) for c in column.level_counts())
    else:
        cat_axes = [frame.columns[i] for i in spec.axis_columns if frame.columns[i].is_categorical]
        if cat_axes:
            keys = list(zip(*(c.codes.tolist() for c in cat_axes)))
        else:
            keys = [()] * n
        index: dict[tuple, int] = {}
        id_list = [index.setdefault(key, len(index)) for key in keys]
        ids = np.array(id_list, dtype=np.int64)
        labels = tuple("/".join(c.levels[k] for c, k in zip(cat_axes, key)) for key in index)
        counts = tuple(int(c) for c in np.bincount(ids, minlength=len(index)))
    _, first_rows = np.unique(ids, return_index=True)
    present = np.unique(ids)
    first_seen = tuple(int(g) for g in present[np.argsort(first_rows, kind="stable")])
    return Groups(ids, counts, tuple(labels), first_seen)


def group_sequence(groups: Groups, policy: DrawPolicy) -> list[int]:
    """Group ids in painting order for the size-based policies."""
    # largest first (so the smallest ends on top); equal sizes by first appearance
    rank = {g: i for i, g in enumerate(groups.first_seen)}
    seq = sorted(groups.first_seen, key=lambda g: (-groups.counts[g], rank[g]))
    if policy is DrawPolicy.LARGE_ON_TOP:
        seq.reverse()
    elif policy is not DrawPolicy.SMALL_ON_TOP:
        raise ValueError(f"{policy} is not size based")
    return seq


def draw_order(groups: Groups, policy: DrawPolicy, layout: Layout | None = None) -> np.ndarray:
    """Permutation of row indices, painted first to last."""
    n = len(groups.ids)
    rows = np.arange(n)
    if policy is DrawPolicy.DATA_ORDER:
        return rows
    if policy is DrawPolicy.HIERARCHICAL:
        if layout is None:
            raise ValueError("hierarchical draw order needs the layout")
        keys = [ax.codes for ax in layout.axes if ax.kind is Kind.CATEGORICAL]
        # lexsort's last key is the primary one
        return np.lexsort([rows] + keys[::-1])
    slot = np.empty(max(groups.n_groups, 1), dtype=np.int64)
    for i, g in enumerate(group_sequence(groups, policy)):
        slot[g] = i
    return np.lexsort((rows, slot[groups.ids]))
