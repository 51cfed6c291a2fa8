import math

import numpy as np
import pytest

import qnoise


def test_vacuum_cavity_is_quantum_limited():
    p = qnoise.CavityParams(gamma=2.0, delta=0.0, gbar=1.0, theta=math.pi / 2)
    omega = qnoise.symmetric_grid(5.0, 10)
    d = qnoise.cavity_spectra(p, omega)
    mid = len(omega) // 2
    assert d["chi_ZF"][mid] == pytest.approx(-math.sqrt(2), rel=1e-12)
    assert d["s_zz"][mid].real == pytest.approx(0.25, rel=1e-12)
    r1 = d["s_zz"].real * d["S_FF"].real - np.abs(d["s_zF"]) ** 2 - 0.25
    assert np.max(np.abs(r1)) < 1e-9


def test_engine_matches_closed_form():
    p = qnoise.CavityParams(gamma=0.7, delta=1.3, gbar=0.4, theta=0.9)
    omega = qnoise.symmetric_grid(4.0, 16)
    a = qnoise.cavity_spectra(p, omega)
    b = qnoise.network_spectra(p, omega)
    for key in ("chi_ZF", "chi_FF", "S_ZZ", "S_ZF", "S_FF"):
        np.testing.assert_allclose(b[key], a[key], rtol=1e-9, atol=0)


def test_audit_verdicts():
    p = qnoise.CavityParams(gamma=1.0, delta=0.5, gbar=1.0, theta=0.3)
    omega = qnoise.symmetric_grid(3.0, 8)
    assert set(qnoise.audit(p, omega)["verdict"]) == {"quantum_limited"}
    hot = qnoise.audit(p, omega, qnoise.InputState.thermal(1.0))
    assert set(hot["verdict"]) == {"above_limit"}
    assert np.all(hot["uncertainty_gap"] > 0)


def test_mimo_and_qubit():
    p = qnoise.CavityParams(gamma=1.0, delta=0.4, gbar=1.0, theta=0.7)
    omega = qnoise.symmetric_grid(2.0, 4)
    vac = qnoise.mimo_check([p, p], omega, [qnoise.InputState.vacuum()])
    assert set(vac["verdict"]) == {"quantum_limited"}
    r = qnoise.qubit_rates(qnoise.CavityParams(gamma=2.0, gbar=1.0, theta=math.pi / 2))
    assert r["gamma_meas"] == pytest.approx(2.0)
    assert r["ratio"] == pytest.approx(1.0)
    assert qnoise.optimal_angle(1.0, 1.0) == pytest.approx(-math.pi / 4)


def test_sideband_asymmetry():
    osc = qnoise.MechOscillator.from_occupation(1.0, 1e-5, 1.0, 2.0)
    p = qnoise.CavityParams(gamma=1e-3, gbar=math.sqrt(1e-3 * 1e-3 * 1e-5))
    r = qnoise.sideband_asymmetry(p, osc)
    assert r["ratio"] == pytest.approx(1.5, rel=2e-2)
    assert len(r["omega"]) == 4001


def test_errors():
    with pytest.raises(ValueError):
        qnoise.CavityParams(gamma=-1.0)
    with pytest.raises(qnoise.PhysicsError):
        qnoise.qubit_rates(qnoise.CavityParams(gamma=2.0, delta=0.0, theta=0.0))
    with pytest.raises(ValueError):
        qnoise.network_spectra(qnoise.CavityParams(), np.array([0.0, 1.0, 3.0]))
