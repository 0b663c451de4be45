import json

import numpy as np
import pytest

from graphdr.cli import main
from graphdr.reports import read_csv


def run_cli(args):
    return main(list(args))


def test_solve_converged(capsys):
    code = run_cli(["solve", "--p", "20", "--n", "3", "--alg", "complete",
                    "--theta", "1.0", "--seed", "7"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["converged"]
    assert out["final_residual"] < 1e-6
    assert max(out["feasibility_errors"]) < 1e-5


def test_solve_unknown_algorithm(capsys):
    assert run_cli(["solve", "--alg", "unknown", "--seed", "1"]) == 1


def test_solve_theta_out_of_range():
    assert run_cli(["solve", "--theta", "2.0", "--seed", "1"]) == 1


def test_solve_nonconvergence_exit_code(capsys):
    code = run_cli(["solve", "--p", "30", "--n", "4", "--alg", "sequential",
                    "--seed", "3", "--max-iters", "2", "--tol", "1e-12"])
    assert code == 2


def test_solve_custom_graph(capsys):
    code = run_cli(["solve", "--p", "10", "--n", "3", "--alg", "custom", "--seed", "5",
                    "--custom-graph",
                    '{"edges_G": [[1,2],[2,3],[1,3]], "edges_Gp": [[1,2],[2,3]]}'])
    out = json.loads(capsys.readouterr().out)
    assert code == 0 and out["converged"]


def test_experiment_requires_seed(tmp_path):
    assert run_cli(["sweep-theta", "--p", "8", "--n", "3",
                    "--out", str(tmp_path / "s.csv")]) == 1


def test_sweep_csv_schema_and_min_tau(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code = run_cli(["sweep-theta", "--p", "8", "--n", "3", "--alg", "complete",
                    "--instances", "2", "--starts", "2", "--theta-grid", "0.8,1.0,1.2",
                    "--seed", "11", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["algorithm", "n", "instance_id", "theta", "mean_iterations",
                      "tau", "converged_fraction"]
    taus = {}
    for r in rows:
        taus.setdefault(r["instance_id"], []).append(float(r["tau"]))
    assert all(min(v) == 1.0 for v in taus.values())
    assert (tmp_path / "sweep.csv.manifest.json").exists()


def test_full_pipeline_and_verify(tmp_path, capsys):
    sweep = tmp_path / "sweep.csv"
    best = tmp_path / "best.csv"
    comp = tmp_path / "compare.csv"
    agg = tmp_path / "agg.csv"
    common = ["--p", "8", "--n", "3", "--alg", "sequential,complete",
              "--instances", "2", "--starts", "2", "--seed", "4"]
    assert run_cli(["sweep-theta", *common, "--theta-grid", "0.8,1.0,1.2",
                    "--out", str(sweep)]) == 0
    assert run_cli(["best-theta", "--in", str(sweep), "--out", str(best)]) == 0
    header, rows = read_csv(best)
    assert header == ["algorithm", "n", "best_theta", "median_iterations"]
    assert run_cli(["compare", *common, "--best", str(best), "--out", str(comp)]) == 0
    header, rows = read_csv(comp)
    assert header == ["algorithm", "n", "instance_id", "pierra_angle_rad",
                      "theta_used", "mean_iterations"]
    assert run_cli(["aggregate", "--in", str(comp), "--out", str(agg)]) == 0
    header, rows = read_csv(agg)
    assert header == ["algorithm", "n", "mean_iterations"]
    assert run_cli(["verify", "--manifest", str(tmp_path / "sweep.csv.manifest.json")]) == 0
    # tampering is detected
    sweep.write_text(sweep.read_text() + "tamper\n")
    assert run_cli(["verify", "--manifest", str(tmp_path / "sweep.csv.manifest.json")]) == 1


def test_demo_spiral_csv(tmp_path, capsys):
    out = tmp_path / "spiral.csv"
    assert run_cli(["demo-spiral", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["k", "v_x", "v_y", "x1_x", "x1_y", "x2_x", "x2_y",
                      "dist_v", "dist_x"]
    dist_v = np.array([float(r["dist_v"]) for r in rows])
    dist_x = np.array([float(r["dist_x"]) for r in rows])
    assert np.all(np.diff(dist_v) < 0)
    assert np.any(np.diff(dist_x[:-5]) > 1e-12)
    assert int(rows[-1]["k"]) == len(rows) - 1


def test_unwritable_output_path(tmp_path):
    code = run_cli(["demo-spiral", "--out", str(tmp_path / "no" / "dir" / "x.csv")])
    assert code == 1


def test_config_file_supplies_flags(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": 8, "n": [3], "alg": "complete", "instances": 1,
                               "starts": 1, "theta_grid": [1.0], "seed": 2}))
    out = tmp_path / "sweep.csv"
    assert run_cli(["sweep-theta", "--config", str(cfg), "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert len(rows) == 1 and rows[0]["algorithm"] == "complete"


def test_byte_identical_reruns(tmp_path, capsys):
    args = ["sweep-theta", "--p", "8", "--n", "3", "--alg", "complete",
            "--instances", "2", "--starts", "2", "--theta-grid", "0.9,1.0",
            "--seed", "21"]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run_cli(args + ["--out", str(a)]) == 0
    assert run_cli(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
