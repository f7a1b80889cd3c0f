import json
import math

import numpy as np
import pytest

import nilharm


def test_group_operations():
    h1 = nilharm.builtin_group("heisenberg-1")
    assert (h1.m, h1.k) == (2, 1)
    assert h1.is_mw()
    g = nilharm.GroupElement(v=np.array([1.0, 0.0]), z=np.array([0.0]))
    h = nilharm.GroupElement(v=np.array([0.0, 1.0]), z=np.array([0.0]))
    gh = h1.multiply(g, h)
    assert gh.z[0] == pytest.approx(0.5, abs=1e-15)
    inv = h1.multiply(g, h1.inverse(g))
    assert np.linalg.norm(inv.v) == 0.0 and np.linalg.norm(inv.z) == 0.0

    f3 = nilharm.builtin_group("free2step-3")
    assert not f3.is_mw()


def test_frame_pins_heisenberg():
    h1 = nilharm.builtin_group("heisenberg-1")
    fr = nilharm.frame(h1, np.array([2.0]))
    assert fr.d[0] == pytest.approx(2.0, abs=1e-12)
    B = nilharm.b_matrix(h1, np.array([2.0]))
    resid = fr.X.T @ B @ fr.Y - np.diag(fr.d)
    assert np.abs(resid).max() <= 1e-12
    with pytest.raises(nilharm.NondegeneracyError):
        nilharm.frame(h1, np.array([0.0]))


def test_eigenfunction_residual():
    h1 = nilharm.builtin_group("heisenberg-1")
    lam = np.array([1.0])
    h = nilharm.h_lambda(h1, lam, [0])
    g = nilharm.GroupElement(v=np.array([0.4, -0.3]), z=np.array([0.2]))
    val = h(g)
    lap = nilharm.sublaplacian_apply(h1, h, g)
    assert abs(lap + val) <= 1e-6
    ident = nilharm.GroupElement(v=np.zeros(2), z=np.zeros(1))
    assert h(ident) == pytest.approx(1.0, abs=1e-14)


def test_matrix_coefficient_matches_closed_form():
    h1 = nilharm.builtin_group("heisenberg-1")
    fr = nilharm.frame(h1, np.array([1.0]))
    x, y = np.array([0.7]), np.array([-0.4])
    mc = nilharm.matrix_coefficient(fr, [2], [2], x, y)
    closed = nilharm.special_hermite_diag([2], np.array([x[0] + 1j * y[0]]), fr.d)
    assert mc == pytest.approx(closed, abs=1e-8)
    # d = 1 diagonal at alpha = 0 is a plain Gaussian.
    z = np.array([1.0 + 0.5j])
    val = nilharm.special_hermite_diag([0], z)
    assert val.real == pytest.approx(math.exp(-abs(z[0]) ** 2 / 4), abs=1e-14)


def test_chain_scaling():
    h1 = nilharm.builtin_group("heisenberg-1")
    spec = nilharm.ChainSpec([nilharm.ChainTerm(np.array([2.0]), [0])])
    f0 = nilharm.build_chain(h1, spec, 0)
    f2 = nilharm.build_chain(h1, spec, 2)
    g = nilharm.GroupElement(v=np.array([0.3, 0.1]), z=np.array([-0.2]))
    assert f2(g) == pytest.approx(4.0 * f0(g), abs=0.0)


def test_run_experiment_and_errors():
    spec = nilharm.ExperimentSpec()
    spec.task = "verify-group"
    spec.group_name = "heisenberg-2"
    ok, payload = nilharm.run_experiment(spec)
    assert ok
    doc = json.loads(payload)
    assert doc["overall_pass"] is True
    assert doc["group"] == "heisenberg-2"

    spec.task = "no-such-task"
    with pytest.raises(nilharm.SpecError):
        nilharm.run_experiment(spec)
