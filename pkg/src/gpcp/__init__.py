"""Generalized parallel coordinate plots for mixed numeric/categorical data."""

from gpcp.dataset import Column, CsvOptions, Frame, Kind, infer_kind, load_csv, set_level_order, write_csv
from gpcp.errors import DataError, GpcpError, SpecError, StyleError
from gpcp.layout import Layout, LayoutParams, ScaleMethod, compute_layout
from gpcp.selection import AxisSpec, ResolvedSpec, parse_spec, resolve

__version__ = "0.1.0"
