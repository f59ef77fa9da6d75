"""Exit criteria. Each test is one criterion; the terminal summary prints
one PASS/FAIL line per criterion."""

import hashlib
import subprocess
import sys
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from gpcp.dataset import Column, Frame, load_csv
from gpcp.draworder import DrawPolicy, draw_order, group_sizes
from gpcp.layout import compute_layout
from gpcp.scene import RenderStyle, build_scene, emit_svg
from gpcp.selection import parse_spec, resolve

from corpus import corpus
from oracles import (boxes_by_summation, crossing_pairs, hierarchical_paint_order,
                     naive_level_orders, tally_column)


def best_of(fn, repeat=5):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, min(times)


@pytest.fixture(scope="module")
def random_corpus():
    return corpus(1000)


def test_ac1_iris_box_geometry(iris_path):
    text = iris_path.read_text()
    tally = tally_column(text, "Species")
    assert sorted(tally.values()) == [50, 50, 50]

    def run():
        frame = load_csv(text.encode())
        return compute_layout(frame, resolve(parse_spec("Sepal.Length,Species,Sepal.Width"), frame))

    layout, seconds = best_of(run)
    species = layout.axes[1]
    assert [b.count for b in species.boxes] == [tally[b.label] for b in species.boxes]
    expected = [(0.0, 0.30), (0.35, 0.65), (0.70, 1.00)]
    oracle = boxes_by_summation([tally[b.label] for b in species.boxes], 0.10)
    for box, (y0, y1), (f0, f1) in zip(species.boxes, expected, oracle):
        assert abs(box.y0 - y0) <= 1e-12 and abs(box.y1 - y1) <= 1e-12
        assert abs(box.y0 - float(f0)) <= 1e-12 and abs(box.y1 - float(f1)) <= 1e-12
    assert seconds < 0.050, f"{seconds * 1000:.1f} ms"


def test_ac2_iris_nc_ordering(iris):
    layout = compute_layout(iris, resolve(parse_spec("Sepal.Length,Species,Sepal.Width"), iris))
    length = iris.column("Sepal.Length").values.tolist()
    codes = iris.column("Species").codes.tolist()
    y = layout.points.y_in[:, 1]
    for level in range(3):
        members = [r for r in range(iris.n_rows) if codes[r] == level]
        oracle = sorted(members, key=lambda r: (length[r], r))
        by_height = sorted(members, key=lambda r: y[r])
        assert by_height == oracle


def test_ac3_factor_block_ordering_oracle(random_corpus):
    elapsed = 0.0
    mismatches = []
    for i, case in enumerate(random_corpus):
        t0 = time.perf_counter()
        layout = compute_layout(case.frame, resolve(case.spec, case.frame))
        got = {a: {side: [r.tolist() for r in layout.level_rows(a, side)] for side in ("in", "out")}
               for a, ax in enumerate(layout.axes) if ax.codes is not None}
        elapsed += time.perf_counter() - t0
        if got != naive_level_orders(case.kinds, case.codes, case.numeric, case.breaks, case.n_levels):
            mismatches.append(i)
    assert mismatches == []
    assert elapsed < 5.0, f"{elapsed:.2f} s"


def test_ac4_within_pair_non_crossing(random_corpus):
    crossings = 0
    for case in random_corpus:
        layout = compute_layout(case.frame, resolve(case.spec, case.frame))
        y_in, y_out = layout.points.y_in, layout.points.y_out
        for block in layout.blocks:
            for lo, hi in block.sub_blocks:
                for a in range(lo, hi):
                    crossings += len(crossing_pairs(y_out[:, a], y_in[:, a + 1],
                                                    case.codes[a], case.codes[a + 1]))
    assert crossings == 0


def test_ac5_breakpoint_conservation(titanic_path):
    text = titanic_path.read_text()

    def run():
        frame = load_csv(text.encode())
        return frame, compute_layout(frame, resolve(parse_spec("gender,age|class|survived"), frame))

    (frame, layout), seconds = best_of(run, repeat=3)
    assert frame.n_rows == 2201
    for ax in layout.axes:
        tally = tally_column(text, ax.column)
        assert {b.label: b.count for b in ax.boxes} == dict(tally)
    breakpoint_axes = [ax for ax in layout.axes if ax.break_after]
    assert [ax.index for ax in breakpoint_axes] == [1, 2]
    y_in, y_out = layout.points.y_in, layout.points.y_out
    for ax in breakpoint_axes:
        for box in ax.boxes:
            rows = ax.codes == box.level
            assert sorted(y_in[rows, ax.index].tolist()) == sorted(y_out[rows, ax.index].tolist())
            for y in (y_in[rows, ax.index], y_out[rows, ax.index]):
                assert np.all((y >= box.y0) & (y <= box.y1))
        # the breakpoint actually re-sorts something
        assert not np.array_equal(y_in[:, ax.index], y_out[:, ax.index])
    assert seconds < 1.0, f"{seconds:.3f} s"


def _paint_sequence(order, ids):
    seq = []
    for row in order:
        if not seq or seq[-1] != ids[row]:
            seq.append(int(ids[row]))
    return seq


def test_ac6_draw_order_contracts():
    for case in corpus(1000, with_group=True):
        spec = resolve(case.spec, case.frame)
        layout = compute_layout(case.frame, spec)
        groups = group_sizes(case.frame, spec.group_index, spec)
        n = case.frame.n_rows
        small = draw_order(groups, DrawPolicy.SMALL_ON_TOP, layout)
        large = draw_order(groups, DrawPolicy.LARGE_ON_TOP, layout)
        assert _paint_sequence(small, groups.ids) == _paint_sequence(large, groups.ids)[::-1]
        for order in (small, large):
            for g in set(groups.ids.tolist()):
                members = [r for r in order.tolist() if groups.ids[r] == g]
                assert members == sorted(members)
        cat = [c for c in case.codes if c is not None]
        assert draw_order(groups, DrawPolicy.HIERARCHICAL, layout).tolist() == hierarchical_paint_order(cat, n)
        assert draw_order(groups, DrawPolicy.DATA_ORDER, layout).tolist() == list(range(n))


def test_ac7_cli_determinism(titanic_path, tmp_path):
    digests = []
    for i in range(2):
        svg, dump = tmp_path / f"run{i}.svg", tmp_path / f"run{i}.json"
        subprocess.run([sys.executable, "-m", "gpcp", "--input", str(titanic_path),
                        "--vars", "gender,age|class|survived", "--color-by", "survived",
                        "--out", str(svg), "--dump-layout", str(dump)], check=True)
        digests.append((hashlib.sha256(svg.read_bytes()).hexdigest(),
                        hashlib.sha256(dump.read_bytes()).hexdigest()))
    assert digests[0] == digests[1]


def test_ac8_scale():
    rng = np.random.default_rng(8)
    n = 10_000
    columns = []
    for j in range(5):
        columns.append(Column.numeric(f"n{j}", rng.normal(size=n)))
        k = int(rng.integers(2, 7))
        columns.append(Column.categorical(f"c{j}", [f"L{v}" for v in rng.integers(0, k, size=n)]))
    frame = Frame(tuple(columns))
    spec = resolve(parse_spec("n0,c0,c1|c2,n1,c3,n2,n3,c4,n4", group_column="c0"), frame)

    t0 = time.perf_counter()
    layout = compute_layout(frame, spec)
    layout_seconds = time.perf_counter() - t0

    t0 = time.perf_counter()
    groups = group_sizes(frame, spec.group_index, spec)
    order = draw_order(groups, DrawPolicy.HIERARCHICAL, layout)
    style = RenderStyle()
    svg = emit_svg(build_scene(layout, frame, order, style, groups), style)
    svg_seconds = time.perf_counter() - t0

    root = ET.fromstring(svg)
    assert sum(1 for e in root if e.tag.endswith("polyline")) == n
    assert layout_seconds < 1.0, f"layout {layout_seconds:.3f} s"
    assert svg_seconds < 3.0, f"svg {svg_seconds:.3f} s"
