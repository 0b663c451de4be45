import subprocess

import pytest


def graphdr(*args):
    subprocess.run(["graphdr", *args], check=True, capture_output=True)


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """Desk-scale CSVs produced by the experiment CLI (the only coupling point)."""
    d = tmp_path_factory.mktemp("csvs")
    common = ["--p", "8", "--n", "3,4", "--alg", "all", "--instances", "2",
              "--starts", "2", "--seed", "17"]
    graphdr("sweep-theta", *common, "--theta-grid", "0.6,1.0,1.4",
            "--out", str(d / "sweep.csv"))
    graphdr("best-theta", "--in", str(d / "sweep.csv"), "--out", str(d / "best.csv"))
    graphdr("compare", *common, "--best", str(d / "best.csv"),
            "--out", str(d / "compare.csv"))
    graphdr("demo-spiral", "--out", str(d / "spiral.csv"))
    return d
