"""Smoke tests for the kantmfg extension module."""

import math

import numpy as np
import pytest

import kantmfg as km


def test_risk_aggregate_reference_values():
    values = np.array([1.0, 3.0])
    masses = np.array([0.5, 0.5])
    assert km.risk_aggregate(values, masses, km.RiskFactor.mean()) == pytest.approx(2.0)
    assert km.risk_aggregate(values, masses, km.RiskFactor(1.0)) == pytest.approx(
        2.4337808304830272, abs=1e-14
    )
    assert km.risk_aggregate(values, masses, km.RiskFactor.worst_case()) == 3.0
    assert km.risk_aggregate(values, masses, km.RiskFactor.best_case()) == 1.0


def test_single_type_equilibrium():
    scn = km.symmetric_fishing(0.5)
    profile, report = km.extragradient_solve(
        scn.space, scn.model, scn.group, scn.weights, scn.risk
    )
    assert report.converged
    assert profile.star[0] == pytest.approx(km.kantian_reference(0.5), abs=1e-8)
    assert profile.star[0] == pytest.approx(2.0 / 7.0, abs=1e-8)


def test_four_type_direct_solutions():
    scn = km.four_type_game(1.0)
    direct = km.quadratic_rkn_direct(scn.space, scn.model, 1.0)
    expected = np.array([0.5, 0.25, 1.0, 0.5]) / 3.2
    assert direct.residual < 1e-12
    assert np.max(np.abs(direct.actions - expected)) < 1e-12

    coarse = km.quadratic_hrkn_direct(scn.space, scn.model, 1.0)
    assert coarse.residual < 1e-12
    expected_coarse = np.array([1 / 8.2, 1 / 10.2, 2 / 8.2, 2 / 10.2])
    assert np.max(np.abs(coarse.equilibrium - expected_coarse)) < 1e-10


def test_continuum_pipeline():
    scn = km.continuum_uniform(0.5, "flat", 201)
    v = km.fredholm_solve(scn.spec)
    assert np.max(np.abs(v - 1.0 / 7.0)) < 1e-12

    cand = km.solve_continuum(scn.spec)
    assert np.max(np.abs(cand.actions - 2.0 / 7.0)) < 1e-12
    assert km.pontryagin_residual(scn.spec, cand) < 1e-5

    windowed = km.continuum_windowed(0.5, "affine", 201)
    wcand = km.solve_continuum(windowed.spec)
    assert km.pontryagin_residual(windowed.spec, wcand) < 1e-5


def test_group_cost_surface():
    scn = km.symmetric_fishing(1.0)
    star = np.array([0.9])
    candidate = np.array([0.25])
    cost = km.group_cost(
        0, candidate, star, scn.space, scn.model, scn.group, scn.weights, scn.risk
    )
    assert cost == pytest.approx(2 * 0.25**2 - 0.25, abs=1e-12)
    grad = km.grad_group_cost(
        0, candidate, star, scn.space, scn.model, scn.group, scn.weights, scn.risk
    )
    assert grad[0] == pytest.approx(0.0, abs=1e-12)


def test_error_mapping():
    with pytest.raises(ValueError):
        km.xi_profile("cubic")
    with pytest.raises(ValueError):
        km.risk_aggregate(np.array([1.0]), np.array([-1.0]), km.RiskFactor.mean())
