"""Axis expressions: which columns become axes, in what order, and where
factor blocks are broken.

Grammar::

    spec := name (("," | "|") name)*

A ``|`` separator marks a breakpoint after the name on its left. Names may
repeat; surrounding whitespace is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gpcp.dataset import Frame
from gpcp.errors import SpecError


@dataclass(frozen=True)
class AxisEntry:
    column_name: str
    break_after: bool = False


@dataclass(frozen=True)
class AxisSpec:
    entries: tuple[AxisEntry, ...]
    group_column: str | None = None

    def __post_init__(self):
        if not self.entries:
            raise SpecError("axis expression has no entries")
        if self.entries[-1].break_after:
            raise SpecError("the last axis cannot carry a breakpoint")

    def to_text(self) -> str:
        """Canonical expression text (no whitespace)."""
        parts = []
        for entry in self.entries:
            parts.append(entry.column_name)
            parts.append("|" if entry.break_after else ",")
        return "".join(parts[:-1])


@dataclass(frozen=True)
class ResolvedSpec:
    axis_columns: tuple[int, ...]
    break_after: tuple[bool, ...]
    group_index: int | None = None

    @property
    def n_axes(self) -> int:
        return len(self.axis_columns)


_TOKEN_RE = re.compile(r"[,|]")


def parse_spec(text: str, group_column: str | None = None) -> AxisSpec:
    if text is None or not text.strip():
        raise SpecError("empty axis expression")
    names = _TOKEN_RE.split(text)
    separators = _TOKEN_RE.findall(text)
    entries = []
    for i, raw in enumerate(names):
        name = raw.strip()
        if not name:
            if i == 0:
                raise SpecError(f"axis expression starts with {separators[0]!r}")
            if i == len(names) - 1:
                raise SpecError(f"axis expression ends with {separators[-1]!r}")
            raise SpecError(f"consecutive separators {separators[i - 1] + separators[i]!r}")
        brk = i < len(separators) and separators[i] == "|"
        entries.append(AxisEntry(name, brk))
    return AxisSpec(tuple(entries), group_column)


def resolve(spec: AxisSpec, frame: Frame) -> ResolvedSpec:
    """Bind names to column indices and check every breakpoint sits inside a factor block."""
    indices = []
    for entry in spec.entries:
        try:
            indices.append(frame.index_of(entry.column_name))
        except KeyError:
            raise SpecError(f"unknown column {entry.column_name!r}") from None
    kinds = [frame.columns[i].is_categorical for i in indices]
    breaks = tuple(e.break_after for e in spec.entries)
    for axis, brk in enumerate(breaks):
        if not brk:
            continue
        name = spec.entries[axis].column_name
        if not kinds[axis]:
            raise SpecError(f"breakpoint on numeric axis {axis + 1} ({name!r})")
        if axis == 0 or not kinds[axis - 1] or not kinds[axis + 1]:
            raise SpecError(
                f"breakpoint on axis {axis + 1} ({name!r}) needs categorical axes on both sides")

    group_index = None
    if spec.group_column is not None:
        try:
            group_index = frame.index_of(spec.group_column)
        except KeyError:
            raise SpecError(f"unknown grouping column {spec.group_column!r}") from None
    return ResolvedSpec(tuple(indices), breaks, group_index)
