"""Acceptance check for the figure renderer.

Run with `pytest figures/tests/test_acceptance.py -v -s` for the PASS line.
"""

import subprocess
import sys

import numpy as np

from drfigures import FigureSpec, render, sha256_file

KIND_INPUT = {
    "theta_bands": "sweep.csv",
    "best_theta": "best.csv",
    "angle_scatter": "compare.csv",
    "iters_vs_n": "compare.csv",
    "spiral": "spiral.csv",
}


def test_criterion_11_renderer(csv_dir, tmp_path):
    hashes = {name: sha256_file(csv_dir / name) for name in set(KIND_INPUT.values())}
    for kind, name in KIND_INPUT.items():
        first = render(FigureSpec(kind, (str(csv_dir / name),),
                                  str(tmp_path / "a" / f"{kind}.png")))
        again = render(FigureSpec(kind, (str(csv_dir / name),),
                                  str(tmp_path / "b" / f"{kind}.png")))
        assert (tmp_path / "a" / f"{kind}.png").stat().st_size > 0
        if kind == "spiral":
            assert all(np.array_equal(first[k], again[k]) for k in first)
        else:
            assert first == again
    for name, digest in hashes.items():
        assert sha256_file(csv_dir / name) == digest
    # the experiment library stands alone: importing it never pulls this package
    subprocess.run(
        [sys.executable, "-c",
         "import graphdr, sys; assert 'drfigures' not in sys.modules"],
        check=True,
    )
    print("\nACCEPTANCE 11 (all five figure kinds render, inputs untouched,"
          " identical series on rerun): PASS")
