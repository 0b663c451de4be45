"""Command-line front end: solve, demo-spiral, sweep-theta, best-theta,
compare, aggregate and verify subcommands.

Exit codes: 0 success, 1 usage/config error, 2 non-convergence in solve.
All randomness flows from --seed; experiment subcommands require it.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .engine import RunConfig, demo_spiral, run
from .errors import InvalidInputError
from .graphs import NAMED_GRAPHS, AlgorithmGraph, build_named, build_operator
from .harness import (
    BestThetaRecord,
    DimMode,
    ExperimentConfig,
    SweepRecord,
    aggregate_by_n,
    best_theta,
    compare,
    generate_problem,
    generate_starts,
    theta_sweep,
)
from .limits import LimitOracle
from .reports import (
    AGGREGATE_HEADER,
    BEST_THETA_HEADER,
    COMPARE_HEADER,
    SPIRAL_HEADER,
    SWEEP_HEADER,
    read_csv,
    records_to_rows,
    verify_manifest,
    write_csv,
    write_manifest,
)
from .subspaces import project


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on bad flags; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _comma_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok)


def _comma_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok)


def _algorithms(text: str) -> tuple[str, ...]:
    if text == "all":
        return NAMED_GRAPHS
    algs = tuple(tok for tok in text.split(",") if tok)
    unknown = set(algs) - set(NAMED_GRAPHS)
    if unknown:
        raise InvalidInputError(f"unknown algorithm(s): {sorted(unknown)}")
    return algs


def _add_experiment_flags(sub):
    sub.add_argument("--p", type=int, default=50)
    sub.add_argument("--n", type=_comma_ints, default=tuple(range(3, 13)),
                     help="comma list of subspace counts")
    sub.add_argument("--alg", type=str, default="all", help="comma list or 'all'")
    sub.add_argument("--theta-grid", type=_comma_floats, default=None)
    sub.add_argument("--instances", type=int, default=20)
    sub.add_argument("--starts", type=int, default=10)
    sub.add_argument("--tol", type=float, default=1e-6)
    sub.add_argument("--max-iters", type=int, default=10**6)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--dim-mode", choices=("generic", "common-core"), default="generic")
    sub.add_argument("--d-min", type=int, default=None)
    sub.add_argument("--d-max", type=int, default=None)
    sub.add_argument("--core-dim", type=int, default=2)
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--config", type=str, default=None, help="JSON file mirroring flags")


def _experiment_config(args) -> ExperimentConfig:
    if args.seed is None:
        raise InvalidInputError("experiment subcommands require --seed")
    dim_mode = DimMode(
        kind=args.dim_mode.replace("-", "_"),
        d_min=args.d_min,
        d_max=args.d_max,
        core_dim=args.core_dim,
    )
    kwargs = dict(
        master_seed=args.seed,
        p=args.p,
        n_values=args.n,
        instances_per_n=args.instances,
        starts_per_instance=args.starts,
        algorithms=_algorithms(args.alg),
        tol=args.tol,
        max_iters=args.max_iters,
        dim_mode=dim_mode,
    )
    if args.theta_grid is not None:
        kwargs["theta_grid"] = args.theta_grid
    return ExperimentConfig(**kwargs)


def _write_outputs(out_path: str, header, rows, config, started_at):
    """Write a CSV and its manifest; nothing is left behind on failure."""
    out = Path(out_path)
    write_csv(out, header, rows)
    write_manifest(out.with_suffix(out.suffix + ".manifest.json"), config, [out], started_at)


def _load_config_defaults(argv):
    """Pre-scan for --config and return its contents as parser defaults."""
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            cfg = json.loads(Path(argv[i + 1]).read_text())
            return {k.replace("-", "_"): v for k, v in cfg.items()}
        if tok.startswith("--config="):
            cfg = json.loads(Path(tok.split("=", 1)[1]).read_text())
            return {k.replace("-", "_"): v for k, v in cfg.items()}
    return {}


def cmd_solve(args) -> int:
    rng = np.random.default_rng(args.seed)
    dim_mode = DimMode(
        kind=args.dim_mode.replace("-", "_"),
        d_min=args.d_min,
        d_max=args.d_max,
        core_dim=args.core_dim,
    )
    problem = generate_problem(args.p, args.n, dim_mode, rng)
    if args.alg == "custom":
        if not args.custom_graph:
            raise InvalidInputError("--alg custom needs a custom_graph in --config")
        spec = args.custom_graph
        graph = AlgorithmGraph(
            n=args.n,
            edges_G=tuple(tuple(e) for e in spec["edges_G"]),
            edges_Gp=tuple(tuple(e) for e in spec.get("edges_Gp", spec["edges_G"])),
            name="custom",
        )
    else:
        if args.alg not in NAMED_GRAPHS:
            raise InvalidInputError(f"unknown algorithm {args.alg!r}")
        graph = build_named(args.alg, args.n)
    op = build_operator(graph)
    v0 = rng.standard_normal((args.n - 1, args.p))
    oracle = LimitOracle(problem, op)
    limit = oracle.limits(v0)
    cfg = RunConfig(theta=args.theta, tol=args.tol, max_iters=args.max_iters)
    result = run(problem, op, cfg, v0, limit.v_star)
    feas = [float(np.linalg.norm(result.x_final - project(S, result.x_final)))
            for S in problem.subspaces]
    payload = {
        "algorithm": args.alg,
        "p": args.p,
        "n": args.n,
        "theta": args.theta,
        "seed": args.seed,
        "iterations": result.iterations,
        "converged": result.converged,
        "final_residual": result.final_residual,
        "feasibility_errors": feas,
        "oracle_x_agreement": float(np.linalg.norm(result.x_final - limit.x_star)),
    }
    print(json.dumps(payload, indent=2))
    return 0 if result.converged else 2


def cmd_demo_spiral(args) -> int:
    started = time.time()
    trace = demo_spiral(angle=args.angle, theta=args.theta, tol=args.tol)
    rows = [
        (int(k), trace.v[k, 0], trace.v[k, 1], trace.x1[k, 0], trace.x1[k, 1],
         trace.x2[k, 0], trace.x2[k, 1], trace.dist_v[k], trace.dist_x[k])
        for k in range(trace.iterations + 1)
    ]
    _write_outputs(args.out, SPIRAL_HEADER, rows,
                   {"angle": args.angle, "theta": args.theta, "tol": args.tol}, started)
    print(f"wrote {args.out} ({trace.iterations} iterations)")
    return 0


def cmd_sweep_theta(args) -> int:
    started = time.time()
    config = _experiment_config(args)
    records = theta_sweep(config, jobs=args.jobs)
    _write_outputs(args.out, SWEEP_HEADER, records_to_rows(records, SWEEP_HEADER),
                   config, started)
    print(f"wrote {args.out}: {len(records)} rows")
    return 0


def _sweep_records_from_csv(path) -> list[SweepRecord]:
    header, rows = read_csv(path)
    if tuple(header) != SWEEP_HEADER:
        raise InvalidInputError(f"unexpected sweep CSV header: {header}")
    return [
        SweepRecord(
            algorithm=r["algorithm"],
            n=int(r["n"]),
            instance_id=int(r["instance_id"]),
            theta=float(r["theta"]),
            mean_iterations=float(r["mean_iterations"]),
            tau=float(r["tau"]),
            converged_fraction=float(r["converged_fraction"]),
        )
        for r in rows
    ]


def cmd_best_theta(args) -> int:
    started = time.time()
    records = best_theta(_sweep_records_from_csv(args.infile))
    _write_outputs(args.out, BEST_THETA_HEADER, records_to_rows(records, BEST_THETA_HEADER),
                   {"in": args.infile}, started)
    print(f"wrote {args.out}: {len(records)} rows")
    return 0


def cmd_compare(args) -> int:
    started = time.time()
    config = _experiment_config(args)
    header, rows = read_csv(args.best)
    if tuple(header) != BEST_THETA_HEADER:
        raise InvalidInputError(f"unexpected best-theta CSV header: {header}")
    thetas = {(r["algorithm"], int(r["n"])): float(r["best_theta"]) for r in rows}
    records = compare(config, thetas, jobs=args.jobs)
    _write_outputs(args.out, COMPARE_HEADER, records_to_rows(records, COMPARE_HEADER),
                   config, started)
    print(f"wrote {args.out}: {len(records)} rows")
    return 0


def cmd_aggregate(args) -> int:
    started = time.time()
    header, rows = read_csv(args.infile)
    if tuple(header) != COMPARE_HEADER:
        raise InvalidInputError(f"unexpected compare CSV header: {header}")
    from .harness import CompareRecord

    records = aggregate_by_n([
        CompareRecord(
            algorithm=r["algorithm"],
            n=int(r["n"]),
            instance_id=int(r["instance_id"]),
            pierra_angle_rad=float(r["pierra_angle_rad"]),
            theta_used=float(r["theta_used"]),
            mean_iterations=float(r["mean_iterations"]),
        )
        for r in rows
    ])
    _write_outputs(args.out, AGGREGATE_HEADER, records_to_rows(records, AGGREGATE_HEADER),
                   {"in": args.infile}, started)
    print(f"wrote {args.out}: {len(records)} rows")
    return 0


def cmd_verify(args) -> int:
    problems = verify_manifest(args.manifest)
    if problems:
        for msg in problems:
            print(msg, file=sys.stderr)
        return 1
    print("ok")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="graphdr", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    solve = subs.add_parser("solve", help="solve one random instance")
    solve.add_argument("--p", type=int, default=50)
    solve.add_argument("--n", type=int, default=3)
    solve.add_argument("--alg", type=str, default="complete")
    solve.add_argument("--theta", type=float, default=1.0)
    solve.add_argument("--seed", type=int, default=None)
    solve.add_argument("--tol", type=float, default=1e-6)
    solve.add_argument("--max-iters", type=int, default=10**6)
    solve.add_argument("--dim-mode", choices=("generic", "common-core"), default="generic")
    solve.add_argument("--d-min", type=int, default=None)
    solve.add_argument("--d-max", type=int, default=None)
    solve.add_argument("--core-dim", type=int, default=2)
    solve.add_argument("--config", type=str, default=None)
    solve.add_argument("--custom-graph", type=json.loads, default=None,
                       help='custom edge lists, e.g. {"edges_G": [[1,2],[2,3]]}')
    solve.set_defaults(func=cmd_solve)

    demo = subs.add_parser("demo-spiral", help="two-line spiral trace to CSV")
    demo.add_argument("--angle", type=float, default=0.2)
    demo.add_argument("--theta", type=float, default=1.0)
    demo.add_argument("--tol", type=float, default=1e-6)
    demo.add_argument("--out", type=str, default="spiral.csv")
    demo.set_defaults(func=cmd_demo_spiral)

    sweep = subs.add_parser("sweep-theta", help="theta-grid sweep to CSV")
    _add_experiment_flags(sweep)
    sweep.add_argument("--out", type=str, default="sweep.csv")
    sweep.set_defaults(func=cmd_sweep_theta)

    best = subs.add_parser("best-theta", help="extract best theta per (algorithm, n)")
    best.add_argument("--in", dest="infile", type=str, required=True)
    best.add_argument("--out", type=str, default="best.csv")
    best.set_defaults(func=cmd_best_theta)

    comp = subs.add_parser("compare", help="angle-vs-iterations comparison to CSV")
    _add_experiment_flags(comp)
    comp.add_argument("--best", type=str, required=True, help="best-theta CSV")
    comp.add_argument("--out", type=str, default="compare.csv")
    comp.set_defaults(func=cmd_compare)

    agg = subs.add_parser("aggregate", help="mean iterations per (algorithm, n)")
    agg.add_argument("--in", dest="infile", type=str, required=True)
    agg.add_argument("--out", type=str, default="aggregate.csv")
    agg.set_defaults(func=cmd_aggregate)

    ver = subs.add_parser("verify", help="re-hash the outputs named by a manifest")
    ver.add_argument("--manifest", type=str, required=True)
    ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _load_config_defaults(argv)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read config file: {exc}", file=sys.stderr)
        return 1
    try:
        args = parser.parse_args(argv)
        if defaults:
            for key, value in defaults.items():
                if hasattr(args, key) and f"--{key.replace('_', '-')}" not in " ".join(argv):
                    # config supplies values; explicit flags win
                    if key in ("n",) and not isinstance(value, (int, tuple)):
                        value = tuple(value)
                    setattr(args, key, value)
        if not hasattr(args, "custom_graph"):
            args.custom_graph = None
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
