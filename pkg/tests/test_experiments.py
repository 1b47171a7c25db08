import json

import pytest

from ringdef import cli, experiments
from ringdef.experiments import ExperimentConfig, run_experiment


def test_list_experiments():
    names = [e["name"] for e in experiments.list_experiments()]
    assert names == sorted(
        [
            "gauss-s-table",
            "imag-quadratic-rk",
            "rank-one",
            "nprop-sweep",
            "obstruction",
            "construct-unit",
            "zk-witness",
        ]
    )


def test_config_validation():
    with pytest.raises(ValueError, match="unknown experiment"):
        ExperimentConfig(name="nope").validate()
    with pytest.raises(ValueError, match="trials"):
        ExperimentConfig(name="gauss-s-table", trials=-1).validate()


def test_gauss_table_runs_clean():
    report = run_experiment(ExperimentConfig(name="gauss-s-table"))
    assert report.summary["checks"] == 8
    assert report.all_expected


def test_report_determinism(tmp_path):
    cfg = ExperimentConfig(name="gauss-s-table")
    first = run_experiment(cfg).canonical_json()
    second = run_experiment(cfg).canonical_json()
    assert first == second
    path = tmp_path / "golden.json"
    experiments.emit_report(run_experiment(cfg), path)
    assert path.read_text() == first


def test_report_embeds_config_and_hash():
    cfg = ExperimentConfig(name="imag-quadratic-rk", d_values=(-1,))
    report = run_experiment(cfg)
    assert report.config["d_values"] == [-1]
    assert report.config_hash == cfg.config_hash()
    assert report.version == experiments.ARTIFACT_VERSION


def test_verify_report_roundtrip(tmp_path):
    cfg = ExperimentConfig(name="imag-quadratic-rk", d_values=(-1, -7))
    report = run_experiment(cfg)
    path = tmp_path / "report.json"
    experiments.emit_report(report, path)
    data = json.loads(path.read_text())
    ok, problems = experiments.verify_report(data)
    assert ok, problems


def test_verify_detects_tampering(tmp_path):
    cfg = ExperimentConfig(name="imag-quadratic-rk", d_values=(-1,))
    report = run_experiment(cfg)
    data = report.to_json_dict()
    data["checks"][0]["payload"]["lattice"]["rows"] = [[1, 0], [0, 3]]
    ok, problems = experiments.verify_report(data)
    assert not ok and problems


def test_obstruction_report_reverifies():
    report = run_experiment(ExperimentConfig(name="obstruction"))
    assert report.all_expected
    data = json.loads(report.canonical_json())
    ok, problems = experiments.verify_report(data)
    assert ok, problems


def test_zk_report_reverifies():
    cfg = ExperimentConfig(name="zk-witness", w_values=(0, 2))
    report = run_experiment(cfg)
    assert report.all_expected
    ok, problems = experiments.verify_report(json.loads(report.canonical_json()))
    assert ok, problems


def test_cli_list(capsys):
    assert cli.main(["list"]) == 0
    out = capsys.readouterr().out
    assert "zk-witness" in out


def test_cli_run_and_verify(tmp_path, capsys):
    out_path = tmp_path / "r.json"
    code = cli.main(["run", "gauss-s-table", "--out", str(out_path)])
    assert code == 0
    assert out_path.exists()
    assert cli.main(["verify", str(out_path)]) == 0


def test_cli_usage_errors(capsys):
    assert cli.main(["run", "not-an-experiment"]) == 2
    assert cli.main(["verify", "/nonexistent/file.json"]) == 2
    assert cli.main(["bogus-subcommand"]) == 2


def test_cli_eval_builtin(capsys):
    code = cli.main(
        ["eval", "--formula", "rk_member", "--order", "quad:-1", "--assign", "x=3"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert '"status": "TRUE"' in out


def test_cli_eval_coordinates(capsys):
    code = cli.main(
        ["eval", "--formula", "rk_member", "--order", "quad:-1", "--assign", "x=0,1"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert '"status": "FALSE"' in out


def test_cli_eval_zk(capsys):
    code = cli.main(["eval", "--formula", "zk", "--order", "rational", "--assign", "w=2"])
    assert code == 0
    out = capsys.readouterr().out
    assert '"w": 2' in out


def test_cli_eval_system(capsys):
    code = cli.main(
        ["eval", "--formula", "system_S", "--order", "rational", "--assign", "w=3"]
    )
    assert code == 0


def test_order_spec_parsing():
    assert cli.parse_order_spec("rational").degree == 1
    assert cli.parse_order_spec("quad:-1").basis_names == ("1", "i")
    assert cli.parse_order_spec("quad:5:nonmax").meta["maximal"] is False
    assert cli.parse_order_spec("comp:-1:5").degree == 4
    with pytest.raises(ValueError):
        cli.parse_order_spec("cubic:7")
