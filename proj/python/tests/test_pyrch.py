import math

import numpy as np
import pytest

import pyrch

HEAVY_TOP = {"inertia": [1.1, 1.7, 2.3], "mass": 0.5, "gravity": 9.81, "height": 0.3,
             "chi": [0.0, 0.6, 0.8]}


def test_quarter_turn_exponential():
    r = pyrch.rotation_exp([0.0, 0.0, math.pi / 2])
    np.testing.assert_allclose(r @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-15)


def test_hat_and_bracket():
    a, b = np.array([1.0, 2.0, 3.0]), np.array([-0.5, 0.1, 0.7])
    np.testing.assert_allclose(pyrch.hat(a) @ b, np.cross(a, b), atol=1e-15)
    np.testing.assert_allclose(pyrch.lie_bracket("so3", a, b), np.cross(a, b), atol=1e-15)
    with pytest.raises(Exception):
        pyrch.lie_bracket("so4", a, b)


def test_momentum_map_of_quarter_turn():
    r = pyrch.rotation_exp([0.0, 0.0, math.pi / 2])
    np.testing.assert_allclose(pyrch.momentum_map(r, [1.0, 0.0, 0.0]), [0.0, 1.0, 0.0], atol=1e-15)


def test_simulate_free_rigid_body():
    out = pyrch.simulate({"system": "rigid_body_free", "run": {"dt": 1e-3, "T": 1.0}})
    assert out["states"].shape == (1001, 3)
    assert out["labels"] == ["pi1", "pi2", "pi3"]
    assert out["times"][-1] == pytest.approx(1.0)
    assert max(out["drift"].values()) <= 1e-8


def test_hj_check_scenarios():
    trivial = pyrch.hj_check({"system": "rigid_body_free", "gamma": {"kind": "zero", "mu": [0, 0, 0]}})
    assert trivial["pass_count"] == 100
    top = pyrch.hj_check({"system": "heavy_top_free", "params": HEAVY_TOP, "gamma": {"kind": "zero"}})
    assert top["fail_count"] == 100
    assert top["inconsistent_count"] == 0


def test_equivalence_demo():
    config = {
        "system": "rigid_body_rotors",
        "initial": {"pi": [0.3, -0.5, 0.8], "l": [0.2, 0.4, 0.9]},
        "run": {"dt": 1e-3, "T": 1.0},
        "control": {"kind": "matching", "target": {"system": "heavy_top_free", "params": HEAVY_TOP}},
    }
    assert pyrch.equivalence_demo(config)["max_deviation"] <= 1e-6
    config["control"]["enabled"] = False
    assert pyrch.equivalence_demo(config)["max_deviation"] > 1e-2


def test_bracket_verify():
    report = pyrch.bracket_verify(instances=100, seed=1)
    assert all(a["pass"] for axioms in report.values() for a in axioms.values())
    broken = pyrch.bracket_verify(instances=100, inject_sign_error=True)
    assert not broken["se3_rotors"]["jacobi"]["pass"]


def test_config_errors_name_the_field():
    with pytest.raises(pyrch.ConfigError, match="run.dt"):
        pyrch.simulate({"system": "rigid_body_free", "run": {"dt": -1.0}})


def test_canonical_config_is_stable():
    text = pyrch.canonical_config({"system": "heavy_top_rotors"})
    import json
    assert pyrch.canonical_config(json.loads(text)) == text
