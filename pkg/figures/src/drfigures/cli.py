"""make-figures: batch-render experiment CSVs into figure files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FORMATS, FigureSpec, render
from .schemas import SchemaError

# input flag -> figure kinds rendered from it
_FLAG_KINDS = {
    "sweep": ("theta_bands",),
    "compare": ("angle_scatter", "iters_vs_n"),
    "best": ("best_theta",),
    "spiral": ("spiral",),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="make-figures",
        description="Render figures from experiment CSVs (read-only inputs).",
    )
    parser.add_argument("--sweep", help="theta-sweep CSV -> theta_bands figure")
    parser.add_argument("--compare", help="per-instance compare CSV -> "
                                          "angle_scatter and iters_vs_n figures")
    parser.add_argument("--best", help="best-theta CSV -> best_theta figure")
    parser.add_argument("--spiral", help="two-line demo trace CSV -> spiral figure")
    parser.add_argument("--outdir", default="figs", help="output directory")
    parser.add_argument("--format", default="png", choices=FORMATS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    jobs = []
    for flag, kinds in _FLAG_KINDS.items():
        path = getattr(args, flag)
        if path is not None:
            jobs.extend((kind, path) for kind in kinds)
    if not jobs:
        print("error: no input CSVs given (use --sweep/--compare/--best/--spiral)",
              file=sys.stderr)
        return 1
    outdir = Path(args.outdir)
    try:
        for kind, path in jobs:
            out = outdir / f"{kind}.{args.format}"
            render(FigureSpec(kind=kind, inputs=(path,), output=str(out),
                              format=args.format))
            print(out)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
