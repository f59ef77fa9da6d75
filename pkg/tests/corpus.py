"""Seeded random frames for the ordering and draw-order checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gpcp.dataset import Column, Frame
from gpcp.selection import AxisEntry, AxisSpec

LABELS = "abcd"


@dataclass
class Case:
    frame: Frame
    spec: AxisSpec
    kinds: list[str]              # "N"/"C" per axis
    codes: list[list[int] | None]  # per axis
    numeric: list[list[float] | None]
    breaks: list[bool]
    n_levels: list[int | None]


def random_case(rng: np.random.Generator, allow_breaks: bool = True,
                with_group: bool = False) -> Case:
    """≤ 12 rows, 2–4 categorical axes, at most one numeric flank."""
    n = int(rng.integers(1, 13))
    n_cat = int(rng.integers(2, 5))
    flank = rng.choice(["none", "left", "right"])

    columns = []
    cat_names = []
    for i in range(n_cat):
        if cat_names and rng.random() < 0.2:
            # repeat an earlier column as a new axis
            cat_names.append(cat_names[int(rng.integers(len(cat_names)))])
            continue
        k = int(rng.integers(1, 4))
        labels = [LABELS[j] for j in rng.integers(0, k, size=n)]
        levels = list(dict.fromkeys(labels))
        if rng.random() < 0.1:
            levels.append("z")  # declared but unobserved
        if rng.random() < 0.5:
            levels = levels[::-1]
        name = f"c{i}"
        columns.append(Column.categorical(name, labels, levels))
        cat_names.append(name)
    axis_names = list(cat_names)
    if flank != "none":
        columns.append(Column.numeric("x", rng.integers(0, 5, size=n).astype(float)))
        if flank == "left":
            axis_names.insert(0, "x")
        else:
            axis_names.append("x")
    frame = Frame(tuple(columns))

    kinds = ["N" if name == "x" else "C" for name in axis_names]
    breaks = [False] * len(axis_names)
    if allow_breaks:
        for a in range(1, len(axis_names) - 1):
            if kinds[a - 1] == kinds[a] == kinds[a + 1] == "C" and rng.random() < 0.4:
                breaks[a] = True
    codes, numeric, n_levels = [], [], []
    for name in axis_names:
        col = frame.column(name)
        if col.is_numeric:
            codes.append(None)
            numeric.append(col.values.tolist())
            n_levels.append(None)
        else:
            codes.append(col.codes.tolist())
            numeric.append(None)
            n_levels.append(len(col.levels))
    group = None
    if with_group and rng.random() < 0.7:
        group = str(rng.choice(sorted(set(cat_names))))
    spec = AxisSpec(tuple(AxisEntry(nm, b) for nm, b in zip(axis_names, breaks)), group)
    return Case(frame, spec, kinds, codes, numeric, breaks, n_levels)


def corpus(size: int = 1000, seed: int = 20191019, **kw) -> list[Case]:
    rng = np.random.default_rng(seed)
    return [random_case(rng, **kw) for _ in range(size)]
