"""CSV schemas accepted by the renderer and strict header validation."""

from __future__ import annotations

import csv
import hashlib
from pathlib import Path

SWEEP_COLUMNS = ("algorithm", "n", "instance_id", "theta", "mean_iterations",
                 "tau", "converged_fraction")
COMPARE_COLUMNS = ("algorithm", "n", "instance_id", "pierra_angle_rad",
                   "theta_used", "mean_iterations")
BEST_THETA_COLUMNS = ("algorithm", "n", "best_theta", "median_iterations")
SPIRAL_COLUMNS = ("k", "v_x", "v_y", "x1_x", "x1_y", "x2_x", "x2_y",
                  "dist_v", "dist_x")

SCHEMAS = {
    "sweep": SWEEP_COLUMNS,
    "compare": COMPARE_COLUMNS,
    "best": BEST_THETA_COLUMNS,
    "spiral": SPIRAL_COLUMNS,
}


class SchemaError(ValueError):
    """Input CSV header does not match the expected schema."""


def load_csv(path, schema: str) -> list[dict[str, str]]:
    """Read rows from a CSV, rejecting any header drift with a column diff."""
    expected = SCHEMAS[schema]
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {list(expected)}")
        if tuple(header) != expected:
            missing = [c for c in expected if c not in header]
            extra = [c for c in header if c not in expected]
            raise SchemaError(
                f"{path}: header mismatch for {schema!r} schema; "
                f"missing columns {missing}, unexpected columns {extra}, "
                f"got {header}"
            )
        rows = []
        for lineno, values in enumerate(reader, start=2):
            if len(values) != len(expected):
                raise SchemaError(f"{path}:{lineno}: expected {len(expected)} "
                                  f"fields, got {len(values)}")
            rows.append(dict(zip(expected, values)))
    return rows


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
