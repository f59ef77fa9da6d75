"""Typed tabular data: CSV ingestion, column kind inference, level ordering."""

from __future__ import annotations

import csv
import enum
import io
import math
import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from gpcp.errors import DataError


class Kind(enum.Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


# Optional sign, digits with optional fraction (or a bare fraction), optional exponent.
# Anything else, including "nan"/"inf" and python's "1_000", is text.
_NUMBER_RE = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def _parse_finite(cell: str) -> float | None:
    if not _NUMBER_RE.fullmatch(cell):
        return None
    value = float(cell)
    return value if math.isfinite(value) else None


def infer_kind(raw: Sequence[str]) -> Kind:
    """Numeric iff every cell parses as a finite decimal number."""
    if len(raw) == 0:
        raise ValueError("infer_kind needs at least one cell")
    if all(_parse_finite(cell) is not None for cell in raw):
        return Kind.NUMERIC
    return Kind.CATEGORICAL


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Column:
    """One named column. Numeric columns carry ``values``; categorical ones
    carry integer ``codes`` into the ordered ``levels`` tuple."""

    name: str
    kind: Kind
    values: np.ndarray | None = None
    codes: np.ndarray | None = None
    levels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind is Kind.NUMERIC:
            if self.values is None or self.codes is not None or self.levels is not None:
                raise ValueError(f"numeric column {self.name!r} must carry values only")
            if not np.all(np.isfinite(self.values)):
                raise DataError("non-finite numeric value", column=self.name)
        else:
            if self.codes is None or self.levels is None or self.values is not None:
                raise ValueError(f"categorical column {self.name!r} must carry codes and levels only")
            if len(set(self.levels)) != len(self.levels):
                raise DataError("duplicate level labels", column=self.name)
            if len(self.codes) and (self.codes.min() < 0 or self.codes.max() >= len(self.levels)):
                raise DataError("level code out of range", column=self.name)

    @classmethod
    def numeric(cls, name: str, values: Iterable[float]) -> Column:
        return cls(name, Kind.NUMERIC, values=_frozen(np.array(list(values), dtype=np.float64)))

    @classmethod
    def categorical(cls, name: str, labels: Iterable[str],
                    levels: Sequence[str] | None = None) -> Column:
        """Build from per-row labels. Levels default to first-appearance order."""
        labels = list(labels)
        if levels is None:
            levels = list(dict.fromkeys(labels))
        index = {label: i for i, label in enumerate(levels)}
        try:
            codes = [index[label] for label in labels]
        except KeyError as exc:
            raise DataError(f"label {exc.args[0]!r} not among declared levels", column=name) from None
        return cls(name, Kind.CATEGORICAL,
                   codes=_frozen(np.array(codes, dtype=np.int64)), levels=tuple(levels))

    @property
    def is_numeric(self) -> bool:
        return self.kind is Kind.NUMERIC

    @property
    def is_categorical(self) -> bool:
        return self.kind is Kind.CATEGORICAL

    def __len__(self) -> int:
        return len(self.values if self.is_numeric else self.codes)

    def labels(self) -> list[str]:
        """Per-row level labels of a categorical column."""
        return [self.levels[c] for c in self.codes.tolist()]

    def level_counts(self) -> np.ndarray:
        return np.bincount(self.codes, minlength=len(self.levels))

    def equals(self, other: Column) -> bool:
        if self.name != other.name or self.kind is not other.kind:
            return False
        if self.is_numeric:
            return np.array_equal(self.values, other.values)
        return self.levels == other.levels and np.array_equal(self.codes, other.codes)


@dataclass(frozen=True, eq=False)
class Frame:
    columns: tuple[Column, ...]
    n_rows: int = field(default=-1)

    def __post_init__(self):
        columns = tuple(self.columns)
        object.__setattr__(self, "columns", columns)
        names = [c.name for c in columns]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise DataError(f"duplicate column names: {', '.join(dupes)}")
        lengths = {len(c) for c in columns}
        if len(lengths) > 1:
            raise DataError("columns differ in length")
        n = lengths.pop() if lengths else 0
        if self.n_rows == -1:
            object.__setattr__(self, "n_rows", n)
        elif columns and self.n_rows != n:
            raise DataError(f"n_rows={self.n_rows} but columns have {n} rows")

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def index_of(self, name: str) -> int:
        for i, column in enumerate(self.columns):
            if column.name == name:
                return i
        raise KeyError(name)

    def column(self, name: str) -> Column:
        return self.columns[self.index_of(name)]

    def replace(self, column: Column) -> Frame:
        """Return a frame with the same-named column swapped out."""
        i = self.index_of(column.name)
        return Frame(self.columns[:i] + (column,) + self.columns[i + 1:])

    def equals(self, other: Frame) -> bool:
        return (self.n_rows == other.n_rows and len(self.columns) == len(other.columns)
                and all(a.equals(b) for a, b in zip(self.columns, other.columns)))


@dataclass(frozen=True)
class CsvOptions:
    delimiter: str = ","
    has_header: bool = True
    kind_overrides: Mapping[str, Kind] = field(default_factory=dict)


def load_csv(source: IO[bytes] | IO[str] | bytes | str, options: CsvOptions | None = None) -> Frame:
    """Read delimited UTF-8 text into a Frame.

    ``source`` may be a binary or text stream, or the raw bytes/str content.
    Missing cells are rejected; v1 has no notion of missing data.
    """
    options = options or CsvOptions()
    data = source if isinstance(source, (bytes, str)) else source.read()
    try:
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    except UnicodeDecodeError as exc:
        raise DataError(f"input is not valid UTF-8: {exc.reason} at byte {exc.start}") from None
    if text.startswith("\ufeff"):
        text = text[1:]

    try:
        records = list(csv.reader(io.StringIO(text, newline=""), delimiter=options.delimiter, strict=True))
    except csv.Error as exc:
        raise DataError(f"malformed CSV: {exc}") from None
    # a trailing blank line is not a record
    while records and records[-1] == []:
        records.pop()
    if not records:
        raise DataError("empty input")

    if options.has_header:
        header, body = records[0], records[1:]
    else:
        header, body = [f"V{i + 1}" for i in range(len(records[0]))], records
    if not body:
        raise DataError("no data rows")
    unknown = set(options.kind_overrides) - set(header)
    if unknown:
        raise DataError(f"kind override for unknown column(s): {', '.join(sorted(unknown))}")

    width = len(header)
    for row_number, record in enumerate(body, start=1):
        if len(record) != width:
            raise DataError(f"expected {width} fields, found {len(record)}", row=row_number)
        for name, cell in zip(header, record):
            if cell.strip() == "":
                raise DataError("missing value", row=row_number, column=name)

    columns = []
    for j, name in enumerate(header):
        cells = [record[j] for record in body]
        kind = options.kind_overrides.get(name) or infer_kind(cells)
        if kind is Kind.NUMERIC:
            values = []
            for row_number, cell in enumerate(cells, start=1):
                value = _parse_finite(cell)
                if value is None:
                    raise DataError(f"not a finite number: {cell!r}", row=row_number, column=name)
                values.append(value)
            columns.append(Column.numeric(name, values))
        else:
            columns.append(Column.categorical(name, cells))
    return Frame(tuple(columns))


def write_csv(frame: Frame, delimiter: str = ",") -> str:
    """Serialize a frame so that ``load_csv`` reproduces it (given the same options)."""
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    writer.writerow(frame.names)
    cells = [c.values.tolist() if c.is_numeric else c.labels() for c in frame.columns]
    for row in zip(*cells):
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return out.getvalue()


def set_level_order(col: Column, order: Sequence[str]) -> Column:
    """Reorder a categorical column's levels; each row keeps its label."""
    if not col.is_categorical:
        raise DataError("cannot order levels of a numeric column", column=col.name)
    order = list(order)
    missing = [label for label in col.levels if label not in order]
    extra = [label for label in order if label not in col.levels]
    dupes = sorted({label for label in order if order.count(label) > 1})
    if missing or extra or dupes:
        problems = []
        if missing:
            problems.append("missing label " + ", ".join(missing))
        if extra:
            problems.append("unknown label " + ", ".join(extra))
        if dupes:
            problems.append("repeated label " + ", ".join(dupes))
        raise DataError("; ".join(problems), column=col.name)
    if tuple(order) == col.levels:
        return col
    new_index = {label: i for i, label in enumerate(order)}
    remap = np.array([new_index[label] for label in col.levels], dtype=np.int64)
    return Column(col.name, Kind.CATEGORICAL, codes=_frozen(remap[col.codes]), levels=tuple(order))
