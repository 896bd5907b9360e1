"""Smoke tests of the python bindings."""

import json
import math

import pytest

try:
    import nlsbg
except ImportError:  # in-tree runs put the bare extension on PYTHONPATH
    import _nlsbg as nlsbg


@pytest.fixture(scope="module")
def tanh_solver():
    return nlsbg.ScatteringSolver(nlsbg.tanh_datum(12.0, 0.05))


def test_version():
    assert nlsbg.__version__.startswith("nlsbg")


def test_airy_origin():
    ai, aip = nlsbg.airy(0.0)
    assert abs(ai - 0.35502805388781724) < 1e-12
    assert abs(aip + 0.25881940379280680) < 1e-12


def test_tanh_is_reflectionless(tanh_solver):
    assert abs(tanh_solver.reflection(0.5)) < 1e-6
    modes = tanh_solver.discrete_spectrum()
    assert len(modes) == 1
    assert abs(modes[0].z - 1j) < 1e-6


def test_hastings_mcleod_values():
    table = nlsbg.solve_pii(1.0, -5.0)
    assert abs(table.u_at(0.0) - 0.3670615515448) < 1e-9
    assert abs(table.tail(0.0) - 0.0690913807085) < 1e-9
    # oddness in kappa
    neg = nlsbg.solve_pii(-1.0, -5.0)
    assert neg.u_at(1.3) == -table.u_at(1.3)


def test_phase_geometry():
    g = nlsbg.stationary_points(-1.5)
    assert abs(g.xi1 * g.xi2 - 1.0) < 1e-12
    assert abs(nlsbg.theta_prime(complex(g.xi1, 0.0), -1.5)) < 1e-12
    region = nlsbg.classify_region(-80.0, 40.0, 2.0)
    assert region == nlsbg.Region.TransitionMinus1


def test_black_soliton_stationary():
    state = nlsbg.evolve(nlsbg.tanh_datum(), 1.0)
    assert max(abs(w) for w in state.w) == 0.0
    assert abs(nlsbg.sample_field(state, 0.5) - math.tanh(0.5)) < 1e-12
    mass, energy = nlsbg.conserved_quantities(state)
    assert abs(mass + 2.0) < 1e-10
    assert abs(energy - 8.0 / 3.0) < 1e-10


def test_prediction_at_the_edge(tanh_solver):
    p = nlsbg.q_asymptotic(-80.0, 40.0, tanh_solver, 2.0)
    assert p.case_tag == nlsbg.CaseTag.CaseI
    assert abs(p.s) < 1e-12
    assert abs(p.q_pred - (-1.0)) < 1e-4
    # audit identity
    assert abs(complex(math.cos(p.alpha_inf), math.sin(p.alpha_inf)) - p.t_inf_sq) < 1e-8


def test_signature_pipeline_json():
    cfg = json.dumps({"schema": "nlsbg-run/1", "datum": {"type": "tanh"}})
    rep = json.loads(nlsbg.run_signature_json(cfg))
    assert rep["pass"] is True
    assert rep["remainder_fit"]["exponent"] <= -0.30
    assert nlsbg.config_hash_json(cfg) == rep["config_hash"]


def test_config_validation_raises():
    bad = json.dumps({"schema": "nlsbg-run/1", "datum": {"type": "tanh", "oops": 1}})
    with pytest.raises(ValueError):
        nlsbg.run_signature_json(bad)
