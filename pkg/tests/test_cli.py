import json

import jsonschema
import numpy as np
import pytest

from psgauss.catalog import get_entry
from psgauss.chartio import save_chart_file
from psgauss.cli import main
from psgauss.report import (
    ConfigError,
    RunConfig,
    grid_points,
    report_json,
    resolve_surface,
    run_verify,
)

try:
    from importlib.resources import files

    SCHEMA = json.loads(
        files("psgauss").joinpath("schemas/report-v1.json").read_text()
    )
except Exception:  # pragma: no cover
    SCHEMA = None


def test_verify_exit_zero_and_output(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["verify", "clifford_torus", "--out", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "PASSED" in text
    assert "route_equivalence" in text
    rep = json.loads(out.read_text())
    assert rep["passed"] is True
    assert rep["surface"] == "clifford_torus"
    jsonschema.validate(rep, SCHEMA)


def test_verify_reports_are_deterministic(tmp_path):
    out = tmp_path / "r.json"
    main(["verify", "marginally_trapped", "--out", str(out)])
    first = out.read_bytes()
    main(["verify", "marginally_trapped", "--out", str(out)])
    assert out.read_bytes() == first


def test_verify_family_alias(tmp_path):
    out = tmp_path / "h3.json"
    code = main(["verify", "horosphere", "--n", "3", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["surface"] == "horosphere_n3"
    assert rep["n"] == 3


def test_verify_unknown_surface(capsys):
    code = main(["verify", "moebius_band"])
    assert code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "config"


def test_verify_bad_grid(capsys):
    assert main(["verify", "clifford_torus", "--grid", "2x2"]) == 2
    assert main(["verify", "clifford_torus", "--grid", "axb"]) == 2


def test_verify_failing_tolerance(capsys):
    # absurdly tight numeric tolerance forces a check failure, not a crash
    code = main(["verify", "clifford_torus", "--tol-fd", "1e-15"])
    assert code == 1
    assert "FAILED" in capsys.readouterr().out


def test_verify_degenerate_chart_file(tmp_path, capsys):
    path = tmp_path / "degen.chart"
    path.write_text(
        "label: degen\n"
        "ambient: 3 0\n"
        "params: u v\n"
        "index: 0\n"
        "domain: 0.2 1.0 ; 0.2 1.0\n"
        "component: cos(u)\n"
        "component: sin(u)\n"
        "component: 0.0\n"
    )
    code = main(["verify", str(path)])
    assert code == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"] in ("NullPivot", "DegenerateMetric")


def test_verify_chart_file_roundtrip(tmp_path, capsys):
    path = tmp_path / "torus.chart"
    save_chart_file(path, get_entry("clifford_torus").immersion)
    code = main(["verify", str(path), "--grid", "5x5"])
    assert code == 0
    assert "verdict=one_type_through_origin" in capsys.readouterr().out


def test_catalog_list_and_show(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "clifford_torus" in out and "E^5_1" in out
    assert main(["catalog", "show", "chen_flat"]) == 0
    out = capsys.readouterr().out
    assert "component:" in out and "expected" in out
    assert main(["catalog", "show", "nope"]) == 2
    assert main(["catalog", "show"]) == 2


def test_figures_written(tmp_path):
    out = tmp_path / "figs" / "ct.json"
    code = main(
        ["verify", "clifford_torus", "--out", str(out), "--figures",
         "--grid", "5x5"]
    )
    assert code == 0
    produced = sorted(p.name for p in out.parent.iterdir())
    assert "ct_points.csv" in produced
    assert any(p.endswith(".png") for p in produced)


def test_resolve_surface_and_grid_validation():
    entry = resolve_surface("pr_clifford_torus")
    assert entry.name == "pr_clifford_torus"
    with pytest.raises(ConfigError):
        resolve_surface("not_a_surface_or_file")
    with pytest.raises(ConfigError):
        RunConfig(surface="clifford_torus", margin=0.7).validate()
    with pytest.raises(ConfigError):
        RunConfig(surface="clifford_torus", tol_fd=-1.0).validate()
    imm = get_entry("clifford_torus").immersion
    pts, counts = grid_points(imm)
    assert counts == (9, 9) and len(pts) == 81
    imm3 = get_entry("horosphere_n3").immersion
    pts3, counts3 = grid_points(imm3)
    assert counts3 == (5, 5, 5) and len(pts3) == 125
    with pytest.raises(ConfigError):
        grid_points(imm, counts=(9,))


def test_threaded_run_matches_serial(monkeypatch):
    cfg = RunConfig(surface="pr_clifford_torus")
    serial = report_json(run_verify(cfg))
    monkeypatch.setenv("PSGAUSS_THREADS", "4")
    threaded = report_json(run_verify(RunConfig(surface="pr_clifford_torus")))
    assert threaded == serial


def test_report_summaries_shape():
    rep = run_verify(RunConfig(surface="umbilical_lorentz_cap"))
    for key in ("K", "S", "hsq_sphere", "Hhat_norm", "RD_max"):
        s = rep["summaries"][key]
        assert set(s) == {"min", "max", "mean"}
        assert s["min"] <= s["mean"] <= s["max"]
    assert rep["spectral"]["lambda_p"] == pytest.approx(1.0, abs=1e-5)
    assert rep["conventions"]["laplacian_sign"].startswith("positive")
