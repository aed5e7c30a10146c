import csv
import io
import json

import pytest
from click.testing import CliRunner

from hassett_ec.cli import main
from hassett_ec.report import CHECK_ORDER, RunConfig, run


def test_full_run_n4_passes():
    rep = run(RunConfig(n=4))
    assert list(rep.results) == list(CHECK_ORDER)
    assert {r.status for r in rep.results.values()} == {"PASS"}
    assert rep.exit_code == 0


def test_enumerate_only_n3():
    rep = run(RunConfig(n=3, checks=("enumerate",)))
    ev = rep.results["enumerate"].evidence
    assert len(ev["items"]) == 6 and all("level" in it for it in ev["items"])


def test_config_errors():
    with pytest.raises(ValueError):
        RunConfig(n=1)
    with pytest.raises(ValueError):
        RunConfig(n=3, checks=())
    with pytest.raises(ValueError):
        RunConfig(n=3, checks=("nonsense",))


def test_checks_run_in_dependency_order():
    cfg = RunConfig(n=3, checks=("fullness", "gram", "enumerate"))
    assert cfg.checks == ("enumerate", "gram", "fullness")


def test_odd_findings_do_not_fail():
    rep = run(RunConfig(n=3, checks=("windows", "maxmin")))
    assert {r.status for r in rep.results.values()} == {"FINDING"}
    assert rep.exit_code == 0


def test_internal_error_surfaces_as_fail(monkeypatch):
    import hassett_ec.report as report

    def boom(cfg, ctx):
        raise RuntimeError("broken")

    monkeypatch.setitem(report._CHECKS, "invariance", boom)
    rep = run(RunConfig(n=3, checks=("invariance",)))
    assert rep.results["invariance"].status == "FAIL"
    assert "broken" in rep.results["invariance"].evidence["trace"]
    assert rep.exit_code == 1


def test_report_is_deterministic_without_timing():
    a = run(RunConfig(n=4)).to_json(with_timing=False)
    b = run(RunConfig(n=4)).to_json(with_timing=False)
    assert a == b
    assert json.loads(a)["schema_version"] == "hassett-ec/report/v1"


def test_cli_verify_and_exit_codes(tmp_path):
    runner = CliRunner()
    out = tmp_path / "r.json"
    res = runner.invoke(main, ["verify", "--n", "3", "--checks", "enumerate,windows", "--out", str(out)])
    assert res.exit_code == 0
    data = json.loads(out.read_text())
    assert data["checks"]["windows"]["status"] == "FINDING"
    assert runner.invoke(main, ["enumerate", "--n", "1"]).exit_code == 2
    assert runner.invoke(main, ["verify", "--n", "3", "--checks", "bogus"]).exit_code == 2


def test_cli_tabular_and_gram(tmp_path):
    runner = CliRunner()
    res = runner.invoke(main, ["report", "--n", "2", "--format", "tabular"])
    assert res.exit_code == 0 and res.output.splitlines()[0] == "check\tstatus\tsummary"
    res = runner.invoke(main, ["gram", "--n", "3"])
    header, *rows = list(csv.reader(io.StringIO(res.output)))
    assert header[1:] == ["L[1,2,3|-1]", "L[1,2,3|1]", "L[1,2|0]", "L[1,3|0]", "L[2,3|0]", "L[|0]"]
    assert len(rows) == 6


def test_cli_fullness_with_certificates():
    res = CliRunner().invoke(main, ["fullness", "--n", "3", "--certificates"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert data["ok"] and len(data["proofs"]) == data["targets"] == 6


def test_cli_unwritable_output(tmp_path):
    res = CliRunner().invoke(main, ["enumerate", "--n", "3", "--out", str(tmp_path / "missing" / "x.json")])
    assert res.exit_code != 0
