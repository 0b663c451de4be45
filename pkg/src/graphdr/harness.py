"""Randomized experiment harness: theta sweeps, best-theta extraction and the
angle-vs-iterations comparison, all deterministic under a master seed.

Seed discipline: master_seed -> per-(n, instance) problem seed and
per-(n, instance, start) start seed, via SeedSequence spawn keys.  Problems
and starting points therefore never depend on which algorithms or theta
values are requested, and the same starts are shared by every (algorithm,
theta) cell of one instance.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .engine import RunConfig, run
from .errors import InvalidInputError
from .graphs import NAMED_GRAPHS, build_named, build_operator
from .limits import LimitOracle
from .subspaces import Problem, orthonormalize, random_subspace
from .angles import pierra_angle

DEFAULT_THETA_GRID = tuple(round(0.1 * k, 1) for k in range(1, 20))


@dataclass(frozen=True)
class DimMode:
    """How subspace dimensions are drawn.

    generic: d_i uniform on [d_min, d_max]; the intersection is whatever the
    draw produces (typically trivial when the codimensions add up past p).
    common_core: a shared core_dim-dimensional subspace is planted in every
    U_i, guaranteeing dim of the intersection >= core_dim.
    """

    kind: str = "generic"
    d_min: int | None = None
    d_max: int | None = None
    core_dim: int = 2

    def __post_init__(self):
        if self.kind not in ("generic", "common_core"):
            raise InvalidInputError(f"unknown dim mode {self.kind!r}")
        if self.kind == "common_core" and self.core_dim < 1:
            raise InvalidInputError("core_dim must be at least 1")

    def bounds(self, p: int) -> tuple[int, int]:
        lo = self.d_min if self.d_min is not None else math.ceil(p / 4)
        hi = self.d_max if self.d_max is not None else math.ceil(3 * p / 4)
        if not 1 <= lo <= hi <= p - 1:
            raise InvalidInputError(f"infeasible dimension range [{lo}, {hi}] for p={p}")
        if self.kind == "common_core" and lo <= self.core_dim:
            raise InvalidInputError("common core requires d_min > core_dim")
        return lo, hi


@dataclass(frozen=True)
class ExperimentConfig:
    master_seed: int
    p: int = 50
    n_values: tuple[int, ...] = tuple(range(3, 13))
    instances_per_n: int = 20
    starts_per_instance: int = 10
    theta_grid: tuple[float, ...] = DEFAULT_THETA_GRID
    algorithms: tuple[str, ...] = NAMED_GRAPHS
    tol: float = 1e-6
    max_iters: int = 10**6
    dim_mode: DimMode = field(default_factory=DimMode)

    def __post_init__(self):
        if any(not 0.0 < t < 2.0 for t in self.theta_grid):
            raise InvalidInputError("theta grid values must lie in (0, 2)")
        if any(n < 2 for n in self.n_values):
            raise InvalidInputError("n values must be at least 2")
        unknown = set(self.algorithms) - set(NAMED_GRAPHS)
        if unknown:
            raise InvalidInputError(f"unknown algorithms: {sorted(unknown)}")


@dataclass(frozen=True)
class SweepRecord:
    algorithm: str
    n: int
    instance_id: int
    theta: float
    mean_iterations: float
    tau: float
    converged_fraction: float


@dataclass(frozen=True)
class CompareRecord:
    algorithm: str
    n: int
    instance_id: int
    pierra_angle_rad: float
    theta_used: float
    mean_iterations: float


@dataclass(frozen=True)
class BestThetaRecord:
    algorithm: str
    n: int
    best_theta: float
    median_iterations: float


@dataclass(frozen=True)
class AggregateRecord:
    algorithm: str
    n: int
    mean_iterations: float


def _problem_rng(master_seed: int, n: int, instance: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(0, n, instance)))


def _start_rng(master_seed: int, n: int, instance: int, start: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(master_seed, spawn_key=(1, n, instance, start))
    )


def generate_problem(p: int, n: int, dim_mode: DimMode, rng: np.random.Generator) -> Problem:
    """Draw one random feasibility problem."""
    lo, hi = dim_mode.bounds(p)
    dims = rng.integers(lo, hi + 1, size=n)
    if dim_mode.kind == "generic":
        subs = tuple(random_subspace(p, int(d), rng) for d in dims)
    else:
        core = random_subspace(p, dim_mode.core_dim, rng)
        subs = []
        for d in dims:
            extra = rng.standard_normal((p, int(d) - dim_mode.core_dim))
            subs.append(orthonormalize(np.hstack([core.basis, extra])))
        subs = tuple(subs)
    return Problem(subspaces=subs)


def generate_starts(p: int, n: int, count: int, master_seed: int, instance: int) -> list[np.ndarray]:
    """The shared per-instance starting points, as (n-1, p) Gaussian blocks."""
    return [
        _start_rng(master_seed, n, instance, s).standard_normal((n - 1, p))
        for s in range(count)
    ]


def instance_problem(config: ExperimentConfig, n: int, instance: int) -> Problem:
    return generate_problem(config.p, n, config.dim_mode, _problem_rng(config.master_seed, n, instance))


def run_starts(problem, op, oracle: LimitOracle, theta, starts, tol, max_iters):
    """Iteration counts from each start; returns (counts, converged flags)."""
    cfg = RunConfig(theta=theta, tol=tol, max_iters=max_iters)
    counts, flags = [], []
    for v0 in starts:
        limit = oracle.limits(v0)
        result = run(problem, op, cfg, v0, limit.v_star)
        counts.append(result.iterations)
        flags.append(result.converged)
    return counts, flags


def _sweep_cell(args):
    config, n, instance, algorithm = args
    problem = instance_problem(config, n, instance)
    starts = generate_starts(config.p, n, config.starts_per_instance, config.master_seed, instance)
    op = build_operator(build_named(algorithm, n))
    oracle = LimitOracle(problem, op)
    rows = []
    for theta in config.theta_grid:
        counts, flags = run_starts(problem, op, oracle, theta, starts, config.tol, config.max_iters)
        rows.append(
            {
                "algorithm": algorithm,
                "n": n,
                "instance_id": instance,
                "theta": theta,
                "mean_iterations": float(np.mean(counts)),
                "converged_fraction": float(np.mean(flags)),
            }
        )
    # tau relative to the best fully-converged theta of this (algorithm, instance)
    candidates = [r["mean_iterations"] for r in rows if r["converged_fraction"] == 1.0]
    best = min(candidates) if candidates else min(r["mean_iterations"] for r in rows)
    return [
        SweepRecord(tau=r["mean_iterations"] / best, **r)
        for r in rows
    ]


def _run_cells(cells, worker, jobs: int):
    if jobs <= 1:
        results = [worker(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, cells))
    return [rec for chunk in results for rec in chunk]


def theta_sweep(config: ExperimentConfig, jobs: int = 1) -> list[SweepRecord]:
    """Mean iteration counts and tau ratios over the full theta grid."""
    cells = [
        (config, n, i, alg)
        for n in config.n_values
        for i in range(config.instances_per_n)
        for alg in config.algorithms
    ]
    records = _run_cells(cells, _sweep_cell, jobs)
    records.sort(key=lambda r: (r.algorithm, r.n, r.instance_id, r.theta))
    return records


def best_theta(records) -> list[BestThetaRecord]:
    """Per (algorithm, n): the grid theta minimizing the median of
    mean_iterations across instances, ties broken toward theta = 1."""
    if not records:
        raise InvalidInputError("no sweep records given")
    groups: dict[tuple[str, int], dict[float, list[float]]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.n), {}).setdefault(r.theta, []).append(
            r.mean_iterations
        )
    out = []
    for (alg, n), per_theta in sorted(groups.items()):
        medians = {t: float(np.median(v)) for t, v in per_theta.items()}
        best = min(medians, key=lambda t: (medians[t], abs(t - 1.0), t))
        out.append(BestThetaRecord(algorithm=alg, n=n, best_theta=best, median_iterations=medians[best]))
    return out


def _compare_cell(args):
    config, n, instance, thetas = args
    problem = instance_problem(config, n, instance)
    starts = generate_starts(config.p, n, config.starts_per_instance, config.master_seed, instance)
    angle = pierra_angle(problem).angle_rad
    rows = []
    for alg in config.algorithms:
        op = build_operator(build_named(alg, n))
        oracle = LimitOracle(problem, op)
        theta = thetas[(alg, n)]
        counts, _ = run_starts(problem, op, oracle, theta, starts, config.tol, config.max_iters)
        rows.append(
            CompareRecord(
                algorithm=alg,
                n=n,
                instance_id=instance,
                pierra_angle_rad=angle,
                theta_used=theta,
                mean_iterations=float(np.mean(counts)),
            )
        )
    return rows


def compare(config: ExperimentConfig, best_thetas, jobs: int = 1) -> list[CompareRecord]:
    """Run every algorithm at its best theta from shared starts, recording the
    product-space Friedrichs angle of each instance.

    best_thetas: mapping (algorithm, n) -> theta, or a list of BestThetaRecord.
    """
    if not isinstance(best_thetas, dict):
        best_thetas = {(r.algorithm, r.n): r.best_theta for r in best_thetas}
    missing = [
        (alg, n)
        for n in config.n_values
        for alg in config.algorithms
        if (alg, n) not in best_thetas
    ]
    if missing:
        raise InvalidInputError(f"missing best theta for {missing[:4]}")
    cells = [
        (config, n, i, best_thetas)
        for n in config.n_values
        for i in range(config.instances_per_n)
    ]
    records = _run_cells(cells, _compare_cell, jobs)
    records.sort(key=lambda r: (r.algorithm, r.n, r.instance_id))
    return records


def aggregate_by_n(records) -> list[AggregateRecord]:
    """Mean of mean_iterations over instances, per (algorithm, n)."""
    if not records:
        raise InvalidInputError("no records to aggregate")
    groups: dict[tuple[str, int], list[float]] = {}
    for r in records:
        groups.setdefault((r.algorithm, r.n), []).append(r.mean_iterations)
    return [
        AggregateRecord(algorithm=alg, n=n, mean_iterations=float(np.mean(v)))
        for (alg, n), v in sorted(groups.items())
    ]
