import json
import math

import pytest

import chshlab


def test_grid_and_angles():
    states, weights = chshlab.make_grid(32)
    assert len(states) == 32
    assert states[1] == 11.25
    assert math.isclose(sum(weights), 1.0, abs_tol=1e-12)
    assert chshlab.normalize_angle(-45.0) == pytest.approx(315.0)
    assert chshlab.equal_spacing_setting(22.5) == [0.0, 22.5, 45.0, 67.5]
    with pytest.raises(ValueError):
        chshlab.make_grid(0)
    with pytest.raises(chshlab.DomainError):
        chshlab.normalize_angle(float("nan"))


def test_per_state_and_population():
    q = chshlab.joint_quantities(0.0, 0.0, 11.25)
    assert q["pp"] == pytest.approx(0.8535533905932737)
    assert q["pn"] == pytest.approx(-0.3535533905932737)
    assert chshlab.expected_value_population(0.0, 22.5) == pytest.approx(math.sqrt(0.5), abs=1e-12)
    setting = chshlab.equal_spacing_setting(22.5)
    assert chshlab.chsh_population(setting) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert chshlab.qm_chsh(setting) == pytest.approx(2 * math.sqrt(2), abs=1e-12)
    assert abs(chshlab.chsh_single(setting, 11.25)) <= 2.0


def test_scan_and_suite():
    scan = chshlab.scan_individual(chshlab.equal_spacing_setting(90.0))
    assert scan["s_min"] == pytest.approx(-2.0)
    assert abs(scan["s_max"]) < 1e-12
    rows = chshlab.run_population_suite()
    assert [r["test_index"] for r in rows] == list(range(1, 11))
    assert all(abs(r["delta"]) <= 0.07 for r in rows)
    cmp = chshlab.compare_models(22.5)
    assert cmp["hv_violates"] and cmp["qm_violates"]
    assert not chshlab.compare_models(45.0)["hv_violates"]


def test_monte_carlo_is_seeded():
    a = chshlab.mc_expected_value(0.0, 22.5, 20000, 7)
    b = chshlab.mc_expected_value(0.0, 22.5, 20000, 7)
    assert a == b
    est, se = a
    assert abs(est - math.sqrt(0.5)) <= 5 * se


def test_diffraction_and_stats():
    theta = chshlab.diffraction_angle(1, 485e-9, 1e-5)
    assert theta == pytest.approx(2.77993588432, abs=1e-9)
    assert chshlab.screen_position(theta, 2.0) == pytest.approx(9.71142857861, abs=1e-9)
    with pytest.raises(ValueError):
        chshlab.diffraction_angle(2, 750e-9, 1e-6)
    assert chshlab.median([1, 2, 3, 4]) == 2.5


def test_cli_roundtrip():
    code, out, err = chshlab.run_cli(["suite"])
    assert code == 0
    doc = json.loads(out)
    assert doc["tables"][0]["id"] == "population_suite"
    assert chshlab.run_cli(["scan", "--theta", "22.5"])[0] == 3
    assert chshlab.run_cli(["tables", "--lambda-index", "99"])[0] == 2
