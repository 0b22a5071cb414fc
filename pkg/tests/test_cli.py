import json

import pytest

from filippov.cli import main


def test_classify_stdout(capsys):
    rc = main(["classify", "--tau", "i", "--lambda", "-0.3", "--beta", "0.5", "--mu", "0.1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == "case 9_2"
    assert "hash " in out and "segments" in out


def test_classify_missing_param_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--tau", "i", "--lambda", "0.1"])
    assert exc.value.code == 2


def test_classify_out_of_range_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--tau", "i", "--lambda", "1.5", "--beta", "0.5", "--mu", "0.0"])
    assert exc.value.code == 2


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "params.json"
    cfg.write_text(json.dumps({"tau": "i", "lambda": -0.3, "beta": 0.5, "mu": 0.1}))
    rc = main(["classify", "--config", str(cfg), "--lambda", "0.3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.splitlines()[0] == "case 17_2"  # 0.263 < lambda < 0.5


def test_portrait_write_refuse_force(tmp_path, capsys):
    out = tmp_path / "p.svg"
    args = ["portrait", "--tau", "v", "--lambda", "0.2", "--beta", "0.5",
            "--mu", "0.0", "--out", str(out)]
    assert main(args) == 0
    first = out.read_bytes()
    assert first.startswith(b"<svg")
    assert main(args) == 1
    assert "exists" in capsys.readouterr().err
    assert main(args + ["--force"]) == 0
    assert out.read_bytes() == first


def test_sweep_writes_csv_and_diagram(tmp_path, capsys):
    csv = tmp_path / "g.csv"
    svg = tmp_path / "g.svg"
    rc = main(["sweep", "--tau", "v", "--mu", "0.0", "--grid", "8", "--jobs", "1",
               "--out", str(csv), "--diagram", str(svg)])
    out = capsys.readouterr().out
    assert rc == 0
    assert csv.read_text().startswith("lambda,beta,tau,mu,case_id,topo_hash\n")
    assert svg.read_text().startswith("<svg")
    assert str(csv) in out and str(svg) in out
    assert "cases" in out and "signatures" in out


def test_verify_exit_zero(capsys):
    rc = main(["verify"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln.strip()]
    assert len(lines) == 7
    assert sum(ln.startswith("DISCREPANCY") for ln in lines) == 3
    assert not any(ln.startswith("FAIL") for ln in lines)


def test_atlas_refuses_existing(tmp_path, capsys):
    target = tmp_path / "atlas"
    target.mkdir()
    (target / "grid_i_+0.0.csv").write_text("stale")
    rc = main(["atlas", "--out", str(target), "--grid", "8"])
    assert rc == 1
    assert "force" in capsys.readouterr().err
