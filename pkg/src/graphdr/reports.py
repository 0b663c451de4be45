"""Deterministic CSV / JSON output for the experiment subcommands.

Floats are rendered with 17 significant digits, '.' decimal separator and
'\n' line endings so reruns with identical flags are byte-identical.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import time
from pathlib import Path

SWEEP_HEADER = ("algorithm", "n", "instance_id", "theta", "mean_iterations", "tau", "converged_fraction")
COMPARE_HEADER = ("algorithm", "n", "instance_id", "pierra_angle_rad", "theta_used", "mean_iterations")
AGGREGATE_HEADER = ("algorithm", "n", "mean_iterations")
BEST_THETA_HEADER = ("algorithm", "n", "best_theta", "median_iterations")
SPIRAL_HEADER = ("k", "v_x", "v_y", "x1_x", "x1_y", "x2_x", "x2_y", "dist_v", "dist_x")


def fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def records_to_rows(records, header):
    return [tuple(getattr(r, name) for name in header) for r in records]


def write_csv(path, header, rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def read_csv(path):
    """Rows as dicts of strings; numeric parsing is the caller's business."""
    text = Path(path).read_text()
    lines = [ln for ln in text.split("\n") if ln]
    header = lines[0].split(",")
    return header, [dict(zip(header, ln.split(","))) for ln in lines[1:]]


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(path, config, outputs, started_at: float) -> None:
    from . import __version__

    if dataclasses.is_dataclass(config):
        config = dataclasses.asdict(config)
    manifest = {
        "config": config,
        "library_version": __version__,
        "wall_time_s": round(time.time() - started_at, 3),
        "outputs": {str(Path(p).name): sha256_file(p) for p in outputs},
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")


def verify_manifest(path) -> list[str]:
    """Re-hash the files named by a manifest; returns a list of mismatch messages."""
    manifest = json.loads(Path(path).read_text())
    base = Path(path).parent
    problems = []
    for name, digest in manifest.get("outputs", {}).items():
        target = base / name
        if not target.exists():
            problems.append(f"missing output file: {name}")
        elif sha256_file(target) != digest:
            problems.append(f"hash mismatch: {name}")
    return problems
