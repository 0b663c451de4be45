"""Offline figure renderer for graphdr experiment CSVs."""

from .render import (
    ALGORITHM_STYLE,
    FORMATS,
    KINDS,
    FigureSpec,
    angle_scatter_series,
    best_theta_series,
    iters_vs_n_series,
    render,
    spiral_series,
    style_for,
    theta_bands_series,
)
from .schemas import SCHEMAS, SchemaError, load_csv, sha256_file

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_STYLE",
    "FORMATS",
    "KINDS",
    "SCHEMAS",
    "FigureSpec",
    "SchemaError",
    "angle_scatter_series",
    "best_theta_series",
    "iters_vs_n_series",
    "load_csv",
    "render",
    "sha256_file",
    "spiral_series",
    "style_for",
    "theta_bands_series",
    "__version__",
]
