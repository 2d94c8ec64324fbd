"""Command line: datasets, exit codes, conformance report"""
import json
import math

import numpy as np
import pytest
from scipy import integrate

from curvedspec.conformance import CheckResult, ConformanceReport, check_names
from curvedspec.datasets import read_dataset
from curvedspec.errors import ConvergenceError, InvariantFailure
from curvedspec.main import main


def _run(tmp_path, name, *argv):
    out = tmp_path / name
    code = main([*argv, "--out", str(out), "--quiet"])
    return code, out


def test_lfh_spectrum_query(tmp_path):
    code, out = _run(tmp_path, "lfh.csv", "query", "spectrum", "--model", "lfh", "--n-max", "3", "--nu", "1")
    assert code == 0
    data = read_dataset(out)
    assert data.column("n").tolist() == [0, 1, 2, 3]
    kappa2 = 2.14**2
    assert np.allclose(data.column("energy_sq_fm2"), 4 * kappa2 * np.array([2, 3, 4, 5]))
    assert data.meta["s_convention"] == "derived"


def test_discretized_spectrum_column(tmp_path):
    code, out = _run(tmp_path, "rm.csv", "query", "spectrum", "--model", "rosen_morse", "--n-max", "2", "--m", "0", "--discretized")
    assert code == 0
    data = read_dataset(out)
    assert np.allclose(data.column("discretized_fm2"), data.column("energy_sq_fm2"), rtol=5e-3)


def test_ptii_spectrum_has_one_bound_state(tmp_path):
    code, out = _run(tmp_path, "ptii.csv", "query", "spectrum", "--model", "ptii", "--n-max", "3", "--m", "1")
    assert code == 0
    data = read_dataset(out)
    assert len(data.frame) == 1
    assert data.meta["s_convention"] == "override"


def test_ptii_spectrum_without_bound_states(tmp_path):
    code, out = _run(tmp_path, "none.csv", "query", "spectrum", "--model", "ptii", "--m", "2")
    assert code == 1
    assert not out.exists()


def test_eckart_cannot_be_discretized(tmp_path):
    code, _ = _run(tmp_path, "eckart.csv", "query", "spectrum", "--model", "eckart", "--discretized")
    assert code == 1


def test_formfactor_query_at_origin(tmp_path):
    code, out = _run(tmp_path, "ff.csv", "query", "formfactor", "--method", "all", "--Q", "0")
    assert code == 0
    frame = read_dataset(out).frame.set_index("method")
    assert frame.loc["closed_form", "G"] / frame.loc["hankel", "G"] == pytest.approx(1.5, abs=1e-6)
    assert frame.loc["reference", "G"] == pytest.approx(frame.loc["hankel", "G"], rel=1e-10)
    assert frame.loc["rosen_morse", "G"] == 1.0
    assert frame.loc["exact_fh", "G_imag_abs"] == pytest.approx(0.0, abs=1e-12)
    assert np.isnan(frame.loc["hankel", "G_imag_abs"])


def test_normalized_formfactor_query(tmp_path):
    code, out = _run(tmp_path, "ffn.json", "query", "formfactor", "--method", "hankel", "--Q", "0", "0.5", "--normalize", "--format", "json")
    assert code == 0
    data = read_dataset(out)
    G = data.column("G")
    assert G[0] == 1.0 and 0 < G[1] < 1
    assert data.meta["normalization"] == "G(Q)/G(0)"


def test_normalization_needs_origin(tmp_path):
    code, _ = _run(tmp_path, "bad.csv", "query", "formfactor", "--method", "hankel", "--Q", "0.5", "--normalize")
    assert code == 1


def test_wavefunction_query(tmp_path):
    code, out = _run(tmp_path, "wf.csv", "query", "wavefunction", "--model", "ptii", "--start", "0.1", "--stop", "1.0", "--step", "0.1")
    assert code == 0
    data = read_dataset(out)
    assert len(data.frame) == 10
    assert np.allclose(data.column("rho"), data.column("zeta_fm") / 0.728)


def test_wavefunction_grid_must_start_positive(tmp_path):
    code, _ = _run(tmp_path, "wf.csv", "query", "wavefunction", "--start", "0")
    assert code == 1


def test_limits_query(tmp_path):
    code, out = _run(tmp_path, "limits.csv", "query", "limits", "--R-values", "5", "10", "20", "40")
    assert code == 0
    data = read_dataset(out)
    assert data.column("R_fm").tolist() == [5.0, 10.0, 20.0, 40.0]
    assert 1.8 <= float(data.meta["fitted_rate"]) <= 2.2


def test_fig1_is_deterministic(tmp_path):
    _, first = _run(tmp_path, "a.csv", "figures", "fig1")
    _, second = _run(tmp_path, "b.csv", "figures", "fig1")
    assert first.read_bytes() == second.read_bytes()
    data = read_dataset(first)
    assert data.columns == ["zeta_fm", "psi_lfh", "psi_ptii"]
    assert len(data.frame) == 401
    assert data.column("psi_lfh").max() == 1.0
    assert np.abs(data.column("psi_ptii")).max() == 1.0
    assert data.column("psi_lfh")[0] == 0.0
    assert float(data.meta["s"]) == 2.5


def test_fig1_to_stdout(capsys):
    assert main(["figures", "fig1", "--format", "json", "--quiet"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["dataset"] == "fig1"


def test_fig2_curves_start_at_one(tmp_path):
    code, out = _run(tmp_path, "fig2.csv", "figures", "fig2", "--q-stop", "0.5", "--q-step", "0.25")
    assert code == 0
    data = read_dataset(out)
    assert data.column("Q_GeV") == pytest.approx([0.0, 0.25, 0.5], abs=1e-12)
    assert data.column("G_hyperbolic")[0] == 1.0
    assert data.column("G_rosen_morse")[0] == 1.0
    assert "not paper-specified" in data.meta["rm_note"]


def test_fig3_q4g_increases_near_origin(tmp_path):
    code, out = _run(tmp_path, "fig3.csv", "figures", "fig3", "--q-stop", "0.5", "--q-step", "0.1")
    assert code == 0
    data = read_dataset(out)
    assert data.columns == ["Q_GeV", "Q4G_hyperbolic", "Q4G_rosen_morse"]
    assert data.column("Q_GeV") == pytest.approx([0.0, 0.1, 0.2, 0.3, 0.4, 0.5], abs=1e-12)
    for name in ("Q4G_hyperbolic", "Q4G_rosen_morse"):
        values = data.column(name)
        assert values[0] == 0.0
        assert np.all(np.diff(values) > 0)
    assert data.meta["units"] == "Q^4 G in GeV^4"


def test_fig4_columns_and_area_gap(tmp_path):
    code, out = _run(tmp_path, "fig4.csv", "figures", "fig4")
    assert code == 0
    data = read_dataset(out)
    labels = ["0", "1", "2", "3"]
    integrands = [f"integrand_{kind}_Q{q}" for q in labels for kind in ("exact", "approx")]
    assert data.columns == ["rho", *integrands]
    assert len(data.columns) - 1 == 8
    rho = data.column("rho")
    assert rho[0] == 0.0 and rho[-1] == 4.0
    # the Hankel family is over its own Q = 0 area, the exact one on the same footing
    assert integrate.trapezoid(data.column("integrand_approx_Q0"), rho) == pytest.approx(1.0, abs=1e-3)
    exact_area = integrate.trapezoid(data.column("integrand_exact_Q0"), rho)
    gap = float(data.meta["area_gap_Q0"])
    assert 0.2 <= gap <= 0.4
    assert abs(exact_area - 1.0) == pytest.approx(gap, abs=1e-3)
    assert float(data.meta["area_difference_Q0"]) == pytest.approx(exact_area - 1.0, abs=1e-3)


def test_config_file_and_flags(tmp_path):
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps({"kappa_per_fm": 1.0}), encoding="utf-8")
    code, out = _run(tmp_path, "cfg.csv", "query", "spectrum", "--config", str(config_path), "--n-max", "0")
    assert code == 0
    assert read_dataset(out).column("energy_sq_fm2")[0] == pytest.approx(8.0)


@pytest.mark.parametrize(
    "argv",
    [["figures", "fig9"], ["query"], ["query", "spectrum", "--model", "dirac"], ["check", "--rel-tol", "tight"]],
)
def test_usage_errors_exit_with_one(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 1


def test_invalid_configuration_exits_with_one(tmp_path):
    code, _ = _run(tmp_path, "x.csv", "query", "spectrum", "--kappa", "-1")
    assert code == 1


def test_check_subset(tmp_path):
    code, out = _run(tmp_path, "check.json", "check", "--only", "parameter_consistency", "ratio_closed_over_hankel_at_Q0")
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["summary"]["total"] == 2
    assert report["summary"]["DOCUMENTED"] == 1
    assert report["ratio_closed_over_hankel_at_Q0"] == pytest.approx(1.5, abs=1e-6)
    assert [c["name"] for c in report["checks"]] == ["parameter_consistency", "ratio_closed_over_hankel_at_Q0"]


def test_check_failure_exits_with_three(tmp_path):
    code, out = _run(tmp_path, "fail.json", "check", "--only", "susy_partner_spectra", "--grid-size", "512")
    assert code == 3
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["checks"][0]["status"] == "FAIL"
    assert report["checks"][0]["converged"] is True


def test_documented_findings_stay_in_their_bands(tmp_path):
    names = ["unit_peak_difference", "fig4_areas", "kernel_stages", "exact_imaginary_part", "i0_derivative_is_i1"]
    code, out = _run(tmp_path, "bands.json", "check", "--only", *names)
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out.read_text(encoding="utf-8"))["checks"]}
    assert checks["i0_derivative_is_i1"]["status"] == "PASS"
    for name in names[:4]:
        assert checks[name]["status"] == "DOCUMENTED"
    assert 0.6 <= checks["unit_peak_difference"]["measured"]["max_unit_peak_difference"] <= 0.95
    assert checks["fig4_areas"]["measured"]["relative_gap"] == pytest.approx(0.303, abs=0.01)
    ratios = checks["exact_imaginary_part"]["measured"]["imag_over_abs_G"]
    assert max(ratios.values()) > 1e-3
    stages = checks["kernel_stages"]["measured"]["areas"]
    assert stages["printed"] == pytest.approx(1 / 3, rel=1e-4)
    assert stages["exact"] == pytest.approx(3 * math.pi / 32, rel=1e-4)


def test_area_gap_outside_band_fails(tmp_path):
    code, out = _run(tmp_path, "gap.json", "check", "--only", "fig4_areas", "--s", "6")
    assert code == 3
    result = json.loads(out.read_text(encoding="utf-8"))["checks"][0]
    assert result["status"] == "FAIL"
    assert result["measured"]["relative_gap"] > 0.4


def test_check_unknown_name(tmp_path):
    code, _ = _run(tmp_path, "x.json", "check", "--only", "no_such_check")
    assert code == 1


def test_check_registry():
    names = check_names()
    assert len(names) == len(set(names))
    for name in ("laguerre_vs_scipy", "susy_anticommutator", "unit_peak_difference", "rm_cornell", "dataset_round_trip"):
        assert name in names


def test_report_exit_code_priority():
    passed = CheckResult("a", "PASS")
    failed = CheckResult("b", "FAIL")
    stalled = CheckResult("c", "FAIL", converged=False)
    assert ConformanceReport([passed, CheckResult("d", "DOCUMENTED")], "h").exit_code == 0
    assert ConformanceReport([passed, failed], "h").exit_code == 3
    assert ConformanceReport([failed, stalled], "h").exit_code == 2
    counts = ConformanceReport([passed, failed, stalled], "h").counts()
    assert counts == {"PASS": 1, "FAIL": 2, "DOCUMENTED": 0}


def test_report_raises_for_status():
    ConformanceReport([CheckResult("a", "PASS"), CheckResult("d", "DOCUMENTED")], "h").raise_for_status()
    with pytest.raises(InvariantFailure, match="1 of 2 checks failed: b") as excinfo:
        ConformanceReport([CheckResult("a", "PASS"), CheckResult("b", "FAIL")], "h").raise_for_status()
    assert excinfo.value.exit_code == 3
    with pytest.raises(ConvergenceError):
        ConformanceReport([CheckResult("b", "FAIL"), CheckResult("c", "FAIL", converged=False)], "h").raise_for_status()
