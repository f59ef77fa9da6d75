"""Command line entry point: CSV in, SVG (and optionally a layout dump) out.

Exit codes: 0 success, 1 usage error, 2 data or validation error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from gpcp.dataset import CsvOptions, Kind, load_csv, set_level_order
from gpcp.draworder import DrawPolicy, draw_order, group_sizes
from gpcp.dump import dumps
from gpcp.errors import GpcpError
from gpcp.layout import LayoutParams, ScaleMethod, compute_layout
from gpcp.scene import CanvasTransform, RenderStyle, build_scene, emit_svg
from gpcp.selection import parse_spec, resolve


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; we reserve 2 for data errors
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    input_path: Path
    output_path: Path
    vars: str
    color_by: str | None = None
    overplot: DrawPolicy = DrawPolicy.HIERARCHICAL
    alpha: float = 0.6
    gap_total: float = 0.10
    box_width: float = 0.1
    scale: ScaleMethod = ScaleMethod.PER_AXIS
    width: int = 900
    height: int = 600
    dump_layout: Path | None = None
    level_order: dict[str, list[str]] = field(default_factory=dict)
    categorical: list[str] = field(default_factory=list)
    delimiter: str = ","
    show_boxes: bool = True
    show_labels: bool = True


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gpcp", description="Draw a generalized parallel coordinate plot as SVG.")
    p.add_argument("--input", required=True, type=Path, help="CSV file with a header row")
    p.add_argument("--out", required=True, type=Path, help="SVG file to write")
    p.add_argument("--vars", required=True,
                   help='axis expression, e.g. "a,b|c,d" ("|" breaks the factor block after b)')
    p.add_argument("--color-by", help="categorical column used for line colors and grouping")
    p.add_argument("--overplot", default="hierarchical", choices=[d.value for d in DrawPolicy])
    p.add_argument("--alpha", type=float, default=0.6, help="line opacity in (0, 1]")
    p.add_argument("--gap-total", type=float, default=0.10,
                   help="fraction of each categorical axis left as gaps between boxes")
    p.add_argument("--box-width", type=float, default=0.1,
                   help="box width as a fraction of the axis spacing")
    p.add_argument("--scale", default="axis", choices=[s.value for s in ScaleMethod])
    p.add_argument("--width", type=int, default=900)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--dump-layout", type=Path, help="also write the layout as JSON here")
    p.add_argument("--level-order", action="append", default=[], metavar="COL=l1,l2,...",
                   help="explicit level order for a categorical column (repeatable)")
    p.add_argument("--categorical", action="append", default=[], metavar="COL",
                   help="treat a column as categorical even if it looks numeric (repeatable)")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-boxes", action="store_true")
    p.add_argument("--no-labels", action="store_true")
    return p


def parse_config(argv) -> CliConfig:
    args = build_parser().parse_args(argv)
    level_order = {}
    for item in args.level_order:
        name, sep, labels = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--level-order expects COL=l1,l2,..., got {item!r}")
        level_order[name] = labels.split(",")
    if len(args.delimiter) != 1:
        raise UsageError("--delimiter must be a single character")
    if args.width <= 0 or args.height <= 0:
        raise UsageError("--width and --height must be positive")
    if not 0 < args.alpha <= 1:
        raise UsageError("--alpha must be in (0, 1]")
    if not 0 <= args.gap_total < 1:
        raise UsageError("--gap-total must be in [0, 1)")
    if not 0 < args.box_width < 1:
        raise UsageError("--box-width must be in (0, 1)")
    return CliConfig(
        input_path=args.input, output_path=args.out, vars=args.vars, color_by=args.color_by,
        overplot=DrawPolicy(args.overplot), alpha=args.alpha, gap_total=args.gap_total,
        box_width=args.box_width, scale=ScaleMethod(args.scale), width=args.width,
        height=args.height, dump_layout=args.dump_layout, level_order=level_order,
        categorical=args.categorical, delimiter=args.delimiter,
        show_boxes=not args.no_boxes, show_labels=not args.no_labels,
    )


def render(config: CliConfig) -> tuple[bytes, str | None]:
    """Run the whole pipeline; returns the SVG bytes and the layout dump text."""
    overrides = {name: Kind.CATEGORICAL for name in config.categorical}
    with open(config.input_path, "rb") as fh:
        frame = load_csv(fh, CsvOptions(delimiter=config.delimiter, kind_overrides=overrides))
    for name, labels in config.level_order.items():
        try:
            column = frame.column(name)
        except KeyError:
            raise GpcpError(f"--level-order names unknown column {name!r}") from None
        frame = frame.replace(set_level_order(column, labels))

    spec = resolve(parse_spec(config.vars, group_column=config.color_by), frame)
    layout = compute_layout(frame, spec, LayoutParams(config.gap_total, config.box_width, config.scale))
    groups = group_sizes(frame, spec.group_index, spec)
    order = draw_order(groups, config.overplot, layout)
    style = RenderStyle(alpha=config.alpha, canvas_width=config.width, canvas_height=config.height,
                        show_boxes=config.show_boxes, show_labels=config.show_labels)
    scene = build_scene(layout, frame, order, style, groups if spec.group_index is not None else None)
    svg = emit_svg(scene, style)
    dump = None
    if config.dump_layout is not None:
        dump = dumps(layout, CanvasTransform.for_layout(layout, style))
    for warning in layout.warnings:
        print(f"gpcp: warning: {warning}", file=sys.stderr)
    return svg, dump


def _write_atomic(path: Path, data: bytes) -> None:
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv=None) -> int:
    parser = build_parser()
    try:
        config = parse_config(sys.argv[1:] if argv is None else list(argv))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gpcp: error: {exc}", file=sys.stderr)
        return 1
    try:
        svg, dump = render(config)
    except GpcpError as exc:
        print(f"gpcp: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"gpcp: error: {exc}", file=sys.stderr)
        return 2
    try:
        _write_atomic(config.output_path, svg)
        if dump is not None:
            _write_atomic(config.dump_layout, dump.encode("utf-8"))
    except OSError as exc:
        print(f"gpcp: error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
