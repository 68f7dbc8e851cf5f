import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.signal import hilbert

from cqedlab.circuits import CONSTANTS
from cqedlab.dynamics import evolve, steady_state
from cqedlab.errors import DomainError, SteadyStateError
from cqedlab.opalg import projector
from cqedlab.twolevel import (
    TlsDriveParams, dipole_from_decay, measured_fwhm, rabi_coherence_eg, rabi_population_gg,
    tls_lindblad_model, tls_linewidths, tls_steady, tls_susceptibility,
)


@given(st.floats(-2, 2), st.floats(0.05, 1.5))
def test_lossless_rabi_matches_master_equation(delta, G):
    p = TlsDriveParams(gamma=0.0, delta=delta, rabi_g=G)
    times = np.linspace(0, 12, 25)
    tr = evolve(tls_lindblad_model(p), projector(2, 0), times)
    np.testing.assert_allclose(tr.population(0), rabi_population_gg(p, times), atol=1e-6)
    np.testing.assert_allclose(tr.states[:, 1, 0], rabi_coherence_eg(p, times), atol=1e-6)


def test_rabi_limits():
    p = TlsDriveParams(gamma=0.0, delta=0.0, rabi_g=0.5)
    assert rabi_population_gg(p, math.pi) == pytest.approx(0.0, abs=1e-15)
    # far off resonance the ground state barely moves
    far = TlsDriveParams(gamma=0.0, delta=100.0, rabi_g=0.5)
    assert rabi_population_gg(far, np.linspace(0, 10, 50)).min() > 0.999
    idle = TlsDriveParams(gamma=0.0, delta=0.0, rabi_g=0.0)
    assert rabi_population_gg(idle, 3.0) == 1.0
    assert rabi_coherence_eg(idle, 3.0) == 0


@given(st.floats(0.05, 3), st.floats(-5, 5), st.floats(0, 3))
def test_steady_state_closed_form(gamma, delta, G):
    p = TlsDriveParams(gamma, delta, G)
    rho = steady_state(tls_lindblad_model(p)).data
    ree, reg = tls_steady(p)
    assert rho[1, 1].real == pytest.approx(ree, abs=1e-10)
    assert rho[1, 0] == pytest.approx(reg, abs=1e-10)


def test_steady_state_fixed_values():
    ree, reg = tls_steady(TlsDriveParams(gamma=1.0, delta=0.0, rabi_g=1.0))
    assert ree == pytest.approx(1 / 3)
    assert reg == pytest.approx(1j / 3)
    # saturation
    assert tls_steady(TlsDriveParams(1.0, 0.3, 1e4))[0] == pytest.approx(0.5, rel=1e-7)
    with pytest.raises(SteadyStateError):
        tls_steady(TlsDriveParams(gamma=0.0, delta=0.0, rabi_g=1.0))


def _fig_params(G_over_gamma=0.5):
    gamma = 3.81e7
    d = dipole_from_decay(gamma, 780e-9)
    return TlsDriveParams(gamma=gamma, delta=0.0, rabi_g=G_over_gamma * gamma, density=1e18, dipole=d)


def test_dipole_from_decay_round_trip():
    gamma = 3.81e7
    d = dipole_from_decay(gamma, 780e-9)
    omega = 2 * math.pi * CONSTANTS.c_light / 780e-9
    rate = omega ** 3 * d ** 2 / (3 * math.pi * CONSTANTS.eps0 * CONSTANTS.hbar * CONSTANTS.c_light ** 3)
    assert rate == pytest.approx(2 * gamma)
    assert 1e-29 < d < 1e-28


def test_absorption_line_shape():
    p = _fig_params()
    x = np.linspace(-20, 20, 40001) * p.gamma
    chi = tls_susceptibility(p, x)
    im, re = chi.imag, chi.real
    assert np.argmax(im) == 20000
    np.testing.assert_allclose(im, im[::-1], rtol=1e-12)
    np.testing.assert_allclose(re, -re[::-1], rtol=1e-12, atol=1e-30)
    hw, fw = tls_linewidths(p)
    assert fw == pytest.approx(2 * math.sqrt(1.5) * p.gamma)
    assert measured_fwhm(x, im) == pytest.approx(fw, rel=1e-6)
    # Re chi falls through zero at resonance
    assert re[19999] > 0 > re[20001]


def test_power_broadening():
    widths = [tls_linewidths(_fig_params(r))[1] for r in (0.0, 0.5, 1.0, 2.0)]
    assert np.all(np.diff(widths) > 0)
    assert widths[0] == pytest.approx(2 * 3.81e7)


def test_kramers_kronig_in_weak_field():
    # at G = 0 the response is causal: Re chi is the Hilbert transform of Im chi
    p = TlsDriveParams(gamma=1.0, delta=0.0, rabi_g=0.0, density=1.0, dipole=1.0)
    x = np.linspace(-4000, 4000, 2 ** 20)
    chi = tls_susceptibility(p, x)
    # scipy's analytic signal of Im chi has imaginary part H[Im chi]; here Re chi = -H[Im chi]
    kk = -np.imag(hilbert(chi.imag))
    mid = np.abs(x) < 20
    scale = np.abs(chi.real).max()
    np.testing.assert_allclose(kk[mid], chi.real[mid], atol=2e-3 * scale)


def test_saturated_response_is_scaled_kramers_kronig():
    # with G > 0 the Hilbert pair picks up gamma / sqrt(gamma^2 + 2G^2)
    G = 1.0
    p = TlsDriveParams(gamma=1.0, delta=0.0, rabi_g=G, density=1.0, dipole=1.0)
    x = np.linspace(-4000, 4000, 2 ** 20)
    chi = tls_susceptibility(p, x)
    kk = -np.imag(hilbert(chi.imag))
    mid = np.abs(x) < 20
    gc = math.sqrt(1 + 2 * G ** 2)
    np.testing.assert_allclose(kk[mid] * gc, chi.real[mid], atol=2e-3 * np.abs(chi.real).max())


def test_measured_fwhm_of_triangle():
    x = np.linspace(-1, 1, 201)
    assert measured_fwhm(x, 1 - np.abs(x)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        measured_fwhm(x, np.ones_like(x))


def test_parameter_validation():
    with pytest.raises(DomainError):
        TlsDriveParams(gamma=-1.0, delta=0.0, rabi_g=1.0)
    assert TlsDriveParams(1.0, 3.0, 2.0).generalized_rabi == pytest.approx(5.0)


@given(st.floats(-3, 3), st.floats(0.01, 2), st.floats(0, 50))
def test_ground_population_bounds(delta, G, t):
    p = TlsDriveParams(0.0, delta, G)
    floor = delta ** 2 / p.generalized_rabi ** 2
    assert floor - 1e-12 <= rabi_population_gg(p, t) <= 1 + 1e-12


def test_half_contrast_when_detuning_is_twice_the_coupling():
    p = TlsDriveParams(0.0, 2.0, 1.0)
    t = np.linspace(0, 10, 100001)
    assert rabi_population_gg(p, t).min() == pytest.approx(0.5, abs=1e-9)
