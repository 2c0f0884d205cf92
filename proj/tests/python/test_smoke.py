"""Smoke tests for the python bindings."""

import math

import pytest

import qrabi

BRUNE_OMEGA0 = 2.0 * math.pi * 51.099e9


def test_constants():
    assert qrabi.constants.hbar == pytest.approx(1.054571817e-34)
    assert qrabi.constants.dipole_from_a0e(2.5) == pytest.approx(2.1196e-29, rel=1e-4)


def test_specfun():
    assert qrabi.specfun.bessel_j0(0.0) == 1.0
    assert abs(qrabi.specfun.bessel_j0(qrabi.specfun.j0_zero(1))) < 1e-12
    assert qrabi.specfun.j0_zero(1) == pytest.approx(2.404826, abs=1e-6)
    assert qrabi.specfun.hyp1f2_kernel(0.0) == 1.0
    assert qrabi.specfun.polylog_neg_half(0.0) == 0.0
    with pytest.raises(ValueError):
        qrabi.specfun.polylog_neg_half(1.5)


def test_thermal_field():
    field = qrabi.PhotonField.thermal(BRUNE_OMEGA0, 0.8)
    assert field.mean_photon_number() == pytest.approx(0.0489, abs=2e-4)
    assert field.occupation_probability(0) > 0.95


def test_coupled_solve_chain():
    field = qrabi.PhotonField.thermal(BRUNE_OMEGA0, 0.8)
    nbar = field.mean_photon_number()
    geometry = qrabi.CavityGeometry(7e7, 0.025, 0.027)
    sol = qrabi.solve_cavity_coupled(0.295310e6, nbar, geometry, BRUNE_OMEGA0)
    assert sol.a0 == pytest.approx(0.473053e6, rel=1e-3)
    assert sol.q_net == pytest.approx(1.28318e6, rel=1e-3)

    system = qrabi.TwoLevelSystem(BRUNE_OMEGA0, qrabi.constants.dipole_from_a0e(1250.0))
    assert qrabi.free_space_a0(system) == pytest.approx(15.6765, rel=0.01)

    model = qrabi.TransitionModel.make(system, field, sol, qrabi.CavityMode.Lossy)
    assert qrabi.prob_lossy_low_nbar(model, 0.0) == 0.0
    peak = qrabi.prob_lossy_low_nbar(model, math.pi / sol.omega_rabi)
    assert peak > 0.6


def test_dynamics():
    params = qrabi.RateParams(0.499941, 5.9409e-5, 1.0)
    state = qrabi.generalized_solution(params, 1.0, 10.0)
    assert state.p1 + state.p2 == pytest.approx(1.0, abs=1e-12)
    series = qrabi.ode_oracle(params, 1.0, [0.0, 1.0, 2.0])
    assert len(series["p2"]) == 3
    assert series["p2"][0] == 1.0

    kb = qrabi.constants.kB
    s = qrabi.entropy(state)
    assert 0.0 <= s <= kb * math.log(2.0) + 1e-25


def test_fit_roundtrip():
    defaults = {
        "omega_rabi": 0.295310e6,
        "q_net": 1.28318e6,
        "nbar": 0.0489,
        "amplitude": 1.0,
        "offset": 0.0,
    }
    system = qrabi.TwoLevelSystem(BRUNE_OMEGA0, qrabi.constants.dipole_from_a0e(1250.0))
    field = qrabi.PhotonField.thermal(BRUNE_OMEGA0, 0.8)
    sol = qrabi.lossy_fixed_point(0.473053e6, 0.0489, 1.28318e6, BRUNE_OMEGA0)
    model = qrabi.TransitionModel.make(system, field, sol, qrabi.CavityMode.Lossy)

    samples = []
    for i in range(16):
        t = 1e-6 + 30e-6 * i / 15.0
        samples.append((t, qrabi.prob_lossy_low_nbar(model, t), 1.0))
    result = qrabi.fit_trace(
        samples,
        BRUNE_OMEGA0,
        defaults,
        ["amplitude"],
        {"amplitude": (0.5, 1.5)},
        seed=1,
    )
    assert result.converged
    assert result.parameters["amplitude"] == pytest.approx(1.0, rel=0.05)
