import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import constants as sc
from scipy.integrate import trapezoid
from scipy.special import mathieu_a, mathieu_b

from cqedlab.circuits import (
    CONSTANTS, CpbParams, FluxQubitParams, PhaseQubitParams, TransmissionLineSpec, cpb_bands,
    cpb_hamiltonian, flux_potential, flux_potential_junctions, flux_tls, josephson_inductance,
    lc_quantize, phase_potential, phase_tls, phase_well_minima, tline_modes, transmon_effective,
)
from cqedlab.errors import CutoffWarning, DomainError, RegimeError, RegimeWarning
from cqedlab.opalg import eig_hermitian


def test_constants():
    assert CONSTANTS.flux_quantum == pytest.approx(2.067833848e-15, rel=1e-9)
    assert CONSTANTS.resistance_quantum == pytest.approx(6453.2, rel=1e-4)


def test_lc_quantization():
    osc = lc_quantize(1e-9, 1e-12)
    assert osc.omega == pytest.approx(1 / math.sqrt(1e-21))
    assert osc.frequency == pytest.approx(5.0329212104487e9, rel=1e-12)
    assert osc.Z == pytest.approx(math.sqrt(1e3))
    assert osc.Q_zpf * osc.Phi_zpf == pytest.approx(sc.hbar / 2)
    levels = eig_hermitian(osc.hamiltonian(6)).values
    np.testing.assert_allclose(levels / (sc.hbar * osc.omega), np.arange(6) + 0.5)


def test_lc_flux_charge_commutator():
    osc = lc_quantize(2e-9, 3e-13)
    n = 8
    phi, q = osc.flux_operator(n).data, osc.charge_operator(n).data
    comm = (phi @ q - q @ phi) / (1j * sc.hbar)
    # identity away from the truncation edge
    np.testing.assert_allclose(np.diag(comm)[:-1], 1.0, rtol=1e-12)


@given(st.floats(1e-12, 1e-6), st.floats(1e-15, 1e-9))
def test_lc_zpf_product(L, C):
    osc = lc_quantize(L, C)
    assert osc.Q_zpf * osc.Phi_zpf == pytest.approx(sc.hbar / 2, rel=1e-12)
    assert osc.z == pytest.approx(osc.Z / CONSTANTS.resistance_quantum)


def test_lc_rejects_nonpositive():
    with pytest.raises(DomainError):
        lc_quantize(0.0, 1e-12)


def test_tline_modes():
    spec = TransmissionLineSpec(ell=4e-7, cap=1.6e-10, length=0.01, n_max=4)
    x = np.linspace(0, spec.length, 4001)
    modes = tline_modes(spec, grid=x)
    v = 1 / math.sqrt(4e-7 * 1.6e-10)
    for m in modes:
        assert m.omega == pytest.approx(m.n * math.pi * v / spec.length)
    # orthonormal on [0, length]
    gram = np.array([[trapezoid(a.phi * b.phi, x) for b in modes] for a in modes])
    np.testing.assert_allclose(gram, np.eye(4), atol=1e-6)
    with pytest.raises(DomainError):
        TransmissionLineSpec(ell=4e-7, cap=1.6e-10, length=0.01, n_max=0)


def test_josephson_inductance():
    assert josephson_inductance(1e-6, 0.0) == pytest.approx(3.2910597e-10, rel=1e-7)
    assert josephson_inductance(1e-6, math.pi / 3) == pytest.approx(2 * josephson_inductance(1e-6, 0.0))
    with pytest.raises(DomainError):
        josephson_inductance(1e-6, math.pi / 2)


@pytest.mark.parametrize("ratio", [1.0, 5.0, 50.0])
def test_cpb_matches_mathieu(ratio):
    # at Ng = 0 the charge-basis levels are EC times the Mathieu values a0, b2, a2, b4 at q = EJ/2EC
    q = ratio / 2
    expected = [mathieu_a(0, q), mathieu_b(2, q), mathieu_a(2, q), mathieu_b(4, q)]
    levels = eig_hermitian(cpb_hamiltonian(CpbParams(EC=1.0, EJ=ratio, Nmax=20))).values[:4]
    np.testing.assert_allclose(levels, expected, rtol=1e-9, atol=1e-9)


def test_cpb_symmetry_in_gate_charge():
    ng = np.linspace(0, 1, 11)
    bands = cpb_bands(CpbParams(1.0, 3.0), ng, 3).energies
    np.testing.assert_allclose(bands, bands[::-1], atol=1e-10)


def test_cpb_charge_degeneracy_gap():
    p = CpbParams(EC=1.0, EJ=1e-3, Ng=0.5)
    levels = eig_hermitian(cpb_hamiltonian(p)).values
    assert levels[1] - levels[0] == pytest.approx(1e-3, rel=1e-2)


def test_cpb_cutoff_warning():
    with pytest.warns(CutoffWarning):
        out = cpb_bands(CpbParams(1.0, 1.0, Nmax=3), [0.0, 0.5], n_levels=6)
    assert not out.converged
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert cpb_bands(CpbParams(1.0, 50.0, Nmax=10), [0.0, 0.5], n_levels=3).converged


def test_cpb_validation():
    with pytest.raises(DomainError):
        CpbParams(EC=0.0, EJ=1.0)
    with pytest.raises(DomainError):
        cpb_bands(CpbParams(1.0, 1.0), [0.0], n_levels=0)


def test_transmon_duffing():
    derived, h = transmon_effective(EC=1.0, EJ=50.0, n_trunc=5, hbar=1.0)
    levels = eig_hermitian(h).values
    assert derived.omega_q == pytest.approx(math.sqrt(400) - 1)
    assert derived.omega_p == pytest.approx(20.0)
    assert levels[1] - levels[0] == pytest.approx(derived.omega_q)
    assert (levels[2] - levels[1]) - (levels[1] - levels[0]) == pytest.approx(-1.0)
    assert derived.anharmonicity == pytest.approx(-1.0)
    # [phi, n] = i needs 2 phi_zpf n_zpf = 1
    assert derived.phi_zpf * derived.n_zpf == pytest.approx(0.5)


def test_transmon_against_charge_basis():
    _, h = transmon_effective(EC=1.0, EJ=80.0, n_trunc=3, hbar=1.0)
    exact = eig_hermitian(cpb_hamiltonian(CpbParams(1.0, 80.0, Nmax=20))).values
    duff = eig_hermitian(h).values
    assert duff[1] == pytest.approx(exact[1] - exact[0], rel=5e-3)
    anh_exact = (exact[2] - exact[1]) - (exact[1] - exact[0])
    assert anh_exact == pytest.approx(-1.0, rel=0.15)


def test_transmon_regimes():
    with pytest.raises(RegimeError):
        transmon_effective(1.0, 4.0, 4)
    with pytest.warns(RegimeWarning):
        transmon_effective(1.0, 8.0, 4)


@given(st.floats(0.5, 1.0), st.floats(0.4, 0.6), st.floats(-3, 3), st.floats(-3, 3))
def test_flux_potential_coordinates_agree(alpha, k, pp, pm):
    p = FluxQubitParams(alpha=alpha, k=k)
    assert flux_potential(p, pp, pm) == pytest.approx(flux_potential_junctions(p, pp + pm, pp - pm), abs=1e-12)


def test_flux_double_well_at_half_flux():
    p = FluxQubitParams(alpha=0.8, k=0.5)
    pm = np.linspace(-math.pi, math.pi, 2001)
    u = flux_potential(p, 0.0, pm)
    np.testing.assert_allclose(u, u[::-1], atol=1e-12)
    inner = np.nonzero((u[1:-1] < u[:-2]) & (u[1:-1] < u[2:]))[0] + 1
    assert len(inner) == 2
    # minima at cos(phi_-) = 1 / (2 alpha)
    np.testing.assert_allclose(np.abs(pm[inner]), math.acos(1 / 1.6), atol=2e-3)


def test_flux_alpha_warning():
    with pytest.warns(RegimeWarning):
        FluxQubitParams(alpha=0.3, k=0.5)


def test_flux_tls_spectrum():
    p = FluxQubitParams(alpha=0.8, k=0.51, Ip=300e-9, tunnel_delta=2 * math.pi * 1e9)
    eps = 2 * p.Ip * CONSTANTS.flux_quantum * 0.01
    gap = np.diff(eig_hermitian(flux_tls(p)).values)[0]
    assert gap == pytest.approx(math.hypot(eps, sc.hbar * p.tunnel_delta), rel=1e-10)


def test_phase_potential_wells():
    grid = np.linspace(-2 * math.pi, 4 * math.pi, 6001)
    deep = phase_well_minima(PhaseQubitParams(beta_L=4.0, flux_bias=0.5), grid)
    assert len(deep) >= 2
    assert all(c > 0 for _, _, c in deep)
    single = phase_well_minima(PhaseQubitParams(beta_L=0.5, flux_bias=0.3), grid)
    assert len(single) == 1
    # one well: minimum sits where sin(phi) + (phi - 2 pi f)/beta = 0
    x = single[0][0]
    assert math.sin(x) + (x - 2 * math.pi * 0.3) / 0.5 == pytest.approx(0, abs=1e-5)


@given(st.floats(0.1, 0.9))
def test_phase_minimum_moves_with_flux(f):
    grid = np.linspace(-2 * math.pi, 4 * math.pi, 3001)
    p1 = phase_well_minima(PhaseQubitParams(beta_L=0.5, flux_bias=f), grid)[0][0]
    p2 = phase_well_minima(PhaseQubitParams(beta_L=0.5, flux_bias=f + 0.05), grid)[0][0]
    assert p2 > p1


def test_phase_operating_range_and_tls():
    assert PhaseQubitParams(beta_L=3.0).in_operating_range
    assert not PhaseQubitParams(beta_L=5.0).in_operating_range
    p = PhaseQubitParams(beta_L=3.0, omega01=2 * math.pi * 6e9, barrier_dU=5 * sc.hbar * 2 * math.pi * 6e9,
                         cap=1e-12, dI_circ=0.0)
    assert p.chi() == pytest.approx(math.sqrt(1 / 15))
    gap = np.diff(eig_hermitian(phase_tls(p)).values)[0]
    assert gap == pytest.approx(sc.hbar * p.omega01)
    with pytest.raises(DomainError):
        PhaseQubitParams(beta_L=0.0)
    assert phase_potential(PhaseQubitParams(1.0), 0.0) == 0.0
