from pathlib import Path

import numpy as np
import pytest

import dadslab

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def test_gain_minima_match_oracle():
    p1, p2, p3 = dadslab.min_gain_bounds(dadslab.DadsParams())
    assert p1 == pytest.approx(1.149708053136739, rel=1e-12)
    assert p2 == pytest.approx(23.77681041445258, rel=1e-12)
    assert p3 == pytest.approx(0.02847972616862316, rel=1e-12)


def test_control_and_deadzone():
    p = dadslab.DadsParams()
    u = dadslab.control(0.1, -10.0, p, (7.5, 43.5, 24.0))
    assert u == pytest.approx(-142.9384374358633, rel=1e-12)
    assert dadslab.control(-0.1, -10.0, p, (7.5, 43.5, 24.0)) == pytest.approx(-u, rel=1e-15)
    assert dadslab.update_rate(0.1, 0.0, p) == pytest.approx(0.495, rel=1e-12)
    assert dadslab.update_rate(0.005, 0.0, p) == 0.0


def test_invalid_params_reported():
    p = dadslab.DadsParams(kappa=2.1, a=4.2)
    assert p.violations()


def test_small_gain_baseline():
    assert dadslab.small_gain_threshold(10, 20, 1, 0.1) == pytest.approx(2000)
    assert dadslab.is_hurwitz(dadslab.planar_linear_matrix(10, 20, 1, 0.1, 2001))
    assert not dadslab.is_hurwitz(dadslab.planar_linear_matrix(10, 20, 1, 0.1, 1999))


def test_planar_run_regulates(tmp_path):
    run = dadslab.run_config_file(str(CONFIGS / "planar_paper.cfg"))
    assert run.passed
    assert abs(run.y[-1]) <= 0.01 and run.w_norm[-1] <= 0.01
    assert abs(run.z[-1] + 1.326) <= 0.05
    assert np.all(np.diff(run.z) >= 0)
    assert {c["name"] for c in run.checks} == {"transient", "z_window", "tails", "dissipation"}
    assert all(c["slack"] >= -c["tolerance"] for c in run.checks)
    files = run.write(str(tmp_path))
    assert (tmp_path / "trajectory.csv").read_text().startswith("t,y,z,u,w_norm,Phi,V\n")
    assert len(files) == 6


def test_run_is_deterministic():
    a = dadslab.run_config_file(str(CONFIGS / "transport_closed_loop.cfg"), horizon=2.0)
    b = dadslab.run_config_file(str(CONFIGS / "transport_closed_loop.cfg"), horizon=2.0)
    assert a.csv() == b.csv()
    assert a.fingerprint == b.fingerprint


def test_open_loop_oracle():
    run = dadslab.run_config_file(str(CONFIGS / "heat_unstable_openloop.cfg"), dt=1e-4)
    (check,) = run.checks
    assert check["name"] == "analytic_oracle"
    assert check["constants"]["max_relative_error"] < 2e-3


def test_config_error_carries_line():
    text = "[plant]\nkind = planar\n[controller]\nkappa = 2.1\na = 4.2\n"
    with pytest.raises(dadslab.ConfigError, match=r"line 5: .*2\*kappa > a"):
        dadslab.validate_config(text)
