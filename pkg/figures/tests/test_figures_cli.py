from drfigures.cli import main


def test_full_pipeline_renders_all_kinds(csv_dir, tmp_path, capsys):
    code = main(["--sweep", str(csv_dir / "sweep.csv"),
                 "--compare", str(csv_dir / "compare.csv"),
                 "--best", str(csv_dir / "best.csv"),
                 "--spiral", str(csv_dir / "spiral.csv"),
                 "--outdir", str(tmp_path), "--format", "png"])
    assert code == 0
    produced = sorted(p.name for p in tmp_path.iterdir())
    assert produced == ["angle_scatter.png", "best_theta.png", "iters_vs_n.png",
                        "spiral.png", "theta_bands.png"]
    assert all((tmp_path / name).stat().st_size > 0 for name in produced)


def test_partial_inputs_render_subset(csv_dir, tmp_path):
    assert main(["--best", str(csv_dir / "best.csv"),
                 "--outdir", str(tmp_path)]) == 0
    assert [p.name for p in tmp_path.iterdir()] == ["best_theta.png"]


def test_no_inputs_is_an_error(tmp_path, capsys):
    assert main(["--outdir", str(tmp_path)]) == 1
    assert "no input CSVs" in capsys.readouterr().err


def test_schema_mismatch_exit_code_and_column_diff(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("algorithm,n,wrong\ncomplete,3,1\n")
    assert main(["--best", str(bad), "--outdir", str(tmp_path / "figs")]) == 1
    err = capsys.readouterr().err
    assert "missing columns" in err and "best_theta" in err and "wrong" in err


def test_missing_file_is_an_error(tmp_path, capsys):
    assert main(["--spiral", str(tmp_path / "nope.csv"),
                 "--outdir", str(tmp_path)]) == 1
