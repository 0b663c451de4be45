"""Figure rendering from experiment CSVs.

Each figure kind has a pure ``*_series`` function that reduces raw rows to the
exact data that gets plotted (the renderer never mutates its inputs), so that
reruns can be compared series-for-series without decoding image files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .schemas import SCHEMAS, load_csv

KINDS = ("spiral", "theta_bands", "best_theta", "angle_scatter", "iters_vs_n")
FORMATS = ("png", "svg")

# kind -> schema of its single input CSV
KIND_SCHEMA = {
    "spiral": "spiral",
    "theta_bands": "sweep",
    "best_theta": "best",
    "angle_scatter": "compare",
    "iters_vs_n": "compare",
}

# canonical per-algorithm color/marker assignment, stable across runs
ALGORITHM_STYLE = {
    "sequential": ("#1f77b4", "o"),
    "complete": ("#ff7f0e", "s"),
    "parallel_down": ("#2ca02c", "^"),
    "parallel_up": ("#d62728", "v"),
    "malitsky_tam": ("#9467bd", "D"),
    "generalized_ryu": ("#8c564b", "X"),
}
_FALLBACK_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]
_FALLBACK_MARKERS = "o s ^ v D X P * h <".split()


def style_for(algorithm: str, index: int = 0) -> tuple[str, str]:
    """Canonical (color, marker) for an algorithm; deterministic fallback."""
    if algorithm in ALGORITHM_STYLE:
        return ALGORITHM_STYLE[algorithm]
    return (_FALLBACK_COLORS[index % len(_FALLBACK_COLORS)],
            _FALLBACK_MARKERS[index % len(_FALLBACK_MARKERS)])


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    output: str
    format: str = "png"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}, expected one of {KINDS}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}, expected one of {FORMATS}")
        if len(self.inputs) != 1:
            raise ValueError(f"{self.kind} takes exactly one input CSV")


def _floats(rows, column):
    return np.array([float(r[column]) for r in rows])


def theta_bands_series(rows):
    """Per (algorithm, n, theta): (min, median, max) of tau over instances."""
    cells = {}
    for r in rows:
        key = (r["algorithm"], int(r["n"]), float(r["theta"]))
        cells.setdefault(key, []).append(float(r["tau"]))
    out = {}
    for (alg, n, theta), taus in sorted(cells.items()):
        a = np.array(taus)
        out.setdefault(alg, {}).setdefault(n, []).append(
            (theta, float(a.min()), float(np.median(a)), float(a.max()))
        )
    return out


def best_theta_series(rows):
    """Per algorithm: sorted list of (n, best_theta)."""
    out = {}
    for r in rows:
        out.setdefault(r["algorithm"], []).append((int(r["n"]), float(r["best_theta"])))
    return {alg: sorted(pts) for alg, pts in out.items()}


def angle_scatter_series(rows):
    """Per n, per algorithm: list of (angle, mean_iterations) points."""
    out = {}
    for r in rows:
        out.setdefault(int(r["n"]), {}).setdefault(r["algorithm"], []).append(
            (float(r["pierra_angle_rad"]), float(r["mean_iterations"]))
        )
    return {n: {alg: sorted(pts) for alg, pts in per.items()}
            for n, per in sorted(out.items())}


def iters_vs_n_series(rows):
    """Per algorithm: sorted list of (n, mean over instances of mean_iterations)."""
    cells = {}
    for r in rows:
        cells.setdefault((r["algorithm"], int(r["n"])), []).append(
            float(r["mean_iterations"])
        )
    out = {}
    for (alg, n), vals in sorted(cells.items()):
        out.setdefault(alg, []).append((n, float(np.mean(vals))))
    return out


def spiral_series(rows):
    return {
        "k": _floats(rows, "k"),
        "v": np.column_stack([_floats(rows, "v_x"), _floats(rows, "v_y")]),
        "x1": np.column_stack([_floats(rows, "x1_x"), _floats(rows, "x1_y")]),
        "x2": np.column_stack([_floats(rows, "x2_x"), _floats(rows, "x2_y")]),
        "dist_v": _floats(rows, "dist_v"),
        "dist_x": _floats(rows, "dist_x"),
    }


def _panel_grid(count):
    fig, axes = plt.subplots(1, count, figsize=(4.0 * count, 3.4), squeeze=False,
                             sharey=True)
    return fig, axes[0]


def _draw_theta_bands(series):
    algs = sorted(series)
    fig, axes = _panel_grid(len(algs))
    for ax, alg in zip(axes, algs):
        for n, points in sorted(series[alg].items()):
            theta, lo, med, hi = (np.array(c) for c in zip(*points))
            color, marker = style_for(alg)
            ax.fill_between(theta, lo, hi, alpha=0.2, color=color)
            ax.plot(theta, med, color=color, marker=marker, markersize=4,
                    label=f"n={n}")
        ax.set_title(alg)
        ax.set_xlabel(r"$\theta$")
        ax.set_ylim(bottom=1.0)  # tau >= 1 by definition
        ax.legend(fontsize=8)
    axes[0].set_ylabel(r"performance ratio $\tau$")
    return fig


def _draw_best_theta(series):
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for i, (alg, points) in enumerate(sorted(series.items())):
        ns, thetas = zip(*points)
        color, marker = style_for(alg, i)
        ax.plot(ns, thetas, color=color, marker=marker, label=alg)
    ax.set_xlabel("n")
    ax.set_ylabel(r"best $\theta$")
    ax.set_ylim(0.0, 2.0)
    ax.legend(fontsize=8)
    return fig


def _draw_angle_scatter(series):
    fig, axes = _panel_grid(len(series))
    for ax, (n, per_alg) in zip(axes, sorted(series.items())):
        for i, (alg, points) in enumerate(sorted(per_alg.items())):
            angles, iters = zip(*points)
            color, marker = style_for(alg, i)
            ax.scatter(angles, iters, s=18, color=color, marker=marker, label=alg)
        ax.set_yscale("log")
        ax.set_title(f"n = {n}")
        ax.set_xlabel("angle (rad)")
        ax.legend(fontsize=7)
    axes[0].set_ylabel("mean iterations")
    return fig


def _draw_iters_vs_n(series):
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    for i, (alg, points) in enumerate(sorted(series.items())):
        ns, means = zip(*points)
        color, marker = style_for(alg, i)
        ax.plot(ns, means, color=color, marker=marker, label=alg)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("mean iterations")
    ax.legend(fontsize=8)
    return fig


def _draw_spiral(series):
    fig, (left, right) = plt.subplots(1, 2, figsize=(8.5, 3.6))
    left.plot(series["v"][:, 0], series["v"][:, 1], "-o", markersize=3,
              color="#1f77b4", label="governing v")
    left.plot(series["x1"][:, 0], series["x1"][:, 1], "-", color="#ff7f0e",
              label="shadow x1")
    left.plot(series["x2"][:, 0], series["x2"][:, 1], "-", color="#2ca02c",
              label="shadow x2")
    left.set_aspect("equal")
    left.legend(fontsize=8)
    left.set_title("trajectories")
    right.semilogy(series["k"], series["dist_v"], color="#1f77b4",
                   label=r"$\|v^k - v^*\|$")
    right.semilogy(series["k"], series["dist_x"], color="#ff7f0e",
                   label=r"$\|x_1^k - x^*\|$")
    right.set_xlabel("k")
    right.legend(fontsize=8)
    right.set_title("distance to limit")
    return fig


_SERIES = {
    "spiral": spiral_series,
    "theta_bands": theta_bands_series,
    "best_theta": best_theta_series,
    "angle_scatter": angle_scatter_series,
    "iters_vs_n": iters_vs_n_series,
}
_DRAW = {
    "spiral": _draw_spiral,
    "theta_bands": _draw_theta_bands,
    "best_theta": _draw_best_theta,
    "angle_scatter": _draw_angle_scatter,
    "iters_vs_n": _draw_iters_vs_n,
}


def render(spec: FigureSpec):
    """Render one figure to spec.output; returns the plotted data series."""
    rows = load_csv(spec.inputs[0], KIND_SCHEMA[spec.kind])
    if not rows:
        raise ValueError(f"{spec.inputs[0]}: no data rows")
    series = _SERIES[spec.kind](rows)
    fig = _DRAW[spec.kind](series)
    fig.tight_layout()
    Path(spec.output).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.output, format=spec.format, dpi=150)
    plt.close(fig)
    return series
