"""
Circuit quantization and superconducting-qubit Hamiltonians.

All quantities at this module's boundary are SI unless a function says
otherwise. Energy-valued parameters (``EC``, ``EJ``, ``barrier_dU``) may be
given in any single energy unit; functions that convert energy to angular
frequency take an explicit ``hbar`` so dimensionless work (``hbar=1``) is
just as easy as SI.

Charging-energy convention
--------------------------
The Cooper-pair box is written as ``H = 4 EC (N - Ng)^2 - EJ cos(phi)`` with
``EC = e^2 / 2 C_sigma`` (single-electron charging energy). A charging
energy defined per Cooper pair, ``EC' = (2e)^2 / 2 C_sigma``, maps onto this
one as ``EC' = 4 EC``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.constants as sc

from .errors import CutoffWarning, DomainError, RegimeError, RegimeWarning
from .opalg import Operator, destroy, eig_hermitian, identity, sigmax, sigmaz

__all__ = [
    "PhysicalConstants", "CONSTANTS",
    "OscillatorParams", "lc_quantize",
    "TransmissionLineSpec", "LineMode", "tline_modes",
    "josephson_inductance",
    "CpbParams", "BandTable", "cpb_hamiltonian", "cpb_bands",
    "TransmonDerived", "transmon_effective",
    "FluxQubitParams", "flux_potential", "flux_potential_junctions", "flux_tls",
    "PhaseQubitParams", "phase_potential", "phase_tls", "phase_well_minima",
]


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = sc.hbar
    e_charge: float = sc.e
    eps0: float = sc.epsilon_0
    c_light: float = sc.c

    @property
    def h(self) -> float:
        return 2 * math.pi * self.hbar

    @property
    def flux_quantum(self) -> float:
        """Superconducting flux quantum h / 2e in Wb."""
        return 2 * math.pi * self.hbar / (2 * self.e_charge)

    @property
    def resistance_quantum(self) -> float:
        """h / (2e)^2 in ohms (about 6453.2)."""
        return self.h / (2 * self.e_charge) ** 2


CONSTANTS = PhysicalConstants()


# --------------------------------------------------------------------------
# LC oscillator and transmission line


@dataclass(frozen=True)
class OscillatorParams:
    L: float
    C: float
    omega: float
    Z: float
    z: float
    Q_zpf: float
    Phi_zpf: float
    hbar: float = sc.hbar

    @property
    def frequency(self) -> float:
        return self.omega / (2 * math.pi)

    def ladder(self, n_levels: int) -> Operator:
        return destroy(n_levels)

    def flux_operator(self, n_levels: int) -> Operator:
        a = destroy(n_levels)
        return self.Phi_zpf * (a + a.dag())

    def charge_operator(self, n_levels: int) -> Operator:
        a = destroy(n_levels)
        return -1j * self.Q_zpf * (a - a.dag())

    def hamiltonian(self, n_levels: int) -> Operator:
        """``hbar omega (a^dagger a + 1/2)`` in joules."""
        a = destroy(n_levels)
        return self.hbar * self.omega * (a.dag() @ a + 0.5 * identity(n_levels))


def lc_quantize(L: float, C: float, constants: PhysicalConstants = CONSTANTS) -> OscillatorParams:
    """Quantize a lumped LC resonator.

    Returns the angular frequency, characteristic impedance, dimensionless
    impedance ``z = Z / R_Q`` and the charge/flux zero-point fluctuations.
    """
    if not (L > 0 and C > 0):
        raise DomainError(f"L and C must be positive, got L={L}, C={C}")
    omega = 1.0 / math.sqrt(L * C)
    Z = math.sqrt(L / C)
    hbar = constants.hbar
    return OscillatorParams(
        L=L, C=C, omega=omega, Z=Z,
        z=Z / constants.resistance_quantum,
        Q_zpf=math.sqrt(hbar / (2 * Z)),
        Phi_zpf=math.sqrt(hbar * Z / 2),
        hbar=hbar,
    )


@dataclass(frozen=True)
class TransmissionLineSpec:
    ell: float       # inductance per length, H/m
    cap: float       # capacitance per length, F/m
    length: float
    n_max: int

    def __post_init__(self):
        if not (self.ell > 0 and self.cap > 0 and self.length > 0):
            raise DomainError("line inductance, capacitance and length must be positive")
        if self.n_max < 1:
            raise DomainError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def v_p(self) -> float:
        return 1.0 / math.sqrt(self.ell * self.cap)


@dataclass(frozen=True)
class LineMode:
    n: int
    k: float
    omega: float
    phi: np.ndarray | None = field(default=None, repr=False)


def tline_modes(spec: TransmissionLineSpec, grid=None) -> list[LineMode]:
    """Standing-wave modes of an open-ended line, n = 1..n_max.

    The uniform n = 0 mode is a free particle, not an oscillator, and is left
    out. When ``grid`` (positions in m) is given each mode carries
    ``sqrt(2/length) cos(k_n x)`` sampled on it.
    """
    x = None if grid is None else np.asarray(grid, dtype=float)
    modes = []
    for n in range(1, spec.n_max + 1):
        k = n * math.pi / spec.length
        phi = None if x is None else math.sqrt(2.0 / spec.length) * np.cos(k * x)
        modes.append(LineMode(n=n, k=k, omega=spec.v_p * k, phi=phi))
    return modes


# --------------------------------------------------------------------------
# Josephson junction and Cooper-pair box


def josephson_inductance(Ic: float, phase: float, constants: PhysicalConstants = CONSTANTS) -> float:
    if not Ic > 0:
        raise DomainError(f"critical current must be positive, got {Ic}")
    c = math.cos(phase)
    if abs(c) < 1e-9:
        raise DomainError(f"Josephson inductance is singular at phase={phase}")
    return constants.flux_quantum / (2 * math.pi * Ic * c)


@dataclass(frozen=True)
class CpbParams:
    EC: float
    EJ: float
    Ng: float = 0.0
    Nmax: int = 10

    def __post_init__(self):
        if not self.EC > 0:
            raise DomainError(f"EC must be positive, got {self.EC}")
        if self.EJ < 0:
            raise DomainError(f"EJ must be non-negative, got {self.EJ}")
        if self.Nmax < 3:
            raise DomainError(f"Nmax must be >= 3, got {self.Nmax}")

    @property
    def charges(self) -> np.ndarray:
        return np.arange(-self.Nmax, self.Nmax + 1)


def _cpb_matrix(EC, EJ, Ng, Nmax):
    charges = np.arange(-Nmax, Nmax + 1)
    h = np.diag(4.0 * EC * (charges - Ng) ** 2)
    off = np.full(2 * Nmax, -EJ / 2.0)
    return h + np.diag(off, 1) + np.diag(off, -1)


def cpb_hamiltonian(p: CpbParams) -> Operator:
    """Charge-basis Cooper-pair box Hamiltonian on N = -Nmax..Nmax."""
    return Operator(_cpb_matrix(p.EC, p.EJ, p.Ng, p.Nmax))


@dataclass(frozen=True)
class BandTable:
    ng: np.ndarray
    energies: np.ndarray      # shape (len(ng), n_levels), relative to offset
    offset: float             # ground-band minimum over the grid
    edge_population: float    # worst top-band weight on the cutoff charges
    converged: bool


def cpb_bands(p: CpbParams, ng_grid, n_levels: int, edge_tol: float = 1e-8) -> BandTable:
    """Sorted CPB eigenvalues over a gate-charge grid.

    ``p.Ng`` is ignored; each grid point supplies its own gate charge. Energies
    are shifted so the lowest ground-band value on the grid is zero. If the
    highest requested band puts more than ``edge_tol`` of its weight on the
    cutoff charges ``+-Nmax`` a :class:`CutoffWarning` is issued and
    ``converged`` is False.
    """
    ng = np.asarray(ng_grid, dtype=float)
    if not 1 <= n_levels <= 2 * p.Nmax:
        raise DomainError(f"n_levels must be in [1, {2 * p.Nmax}], got {n_levels}")
    energies = np.empty((ng.size, n_levels))
    worst = 0.0
    for i, g in enumerate(ng):
        es = eig_hermitian(Operator(_cpb_matrix(p.EC, p.EJ, g, p.Nmax)))
        energies[i] = es.values[:n_levels]
        top = es.vectors[:, n_levels - 1]
        worst = max(worst, float(abs(top[0]) ** 2 + abs(top[-1]) ** 2))
    converged = worst <= edge_tol
    if not converged:
        warnings.warn(
            f"charge cutoff Nmax={p.Nmax} too small: band {n_levels - 1} has "
            f"{worst:.2e} weight on the edge charges", CutoffWarning, stacklevel=2)
    offset = float(energies[:, 0].min())
    return BandTable(ng=ng, energies=energies - offset, offset=offset,
                     edge_population=worst, converged=converged)


# --------------------------------------------------------------------------
# Transmon


@dataclass(frozen=True)
class TransmonDerived:
    omega_q: float      # 0->1 transition, (sqrt(8 EC EJ) - EC) / hbar
    omega_p: float      # plasma frequency sqrt(8 EC EJ) / hbar
    phi_zpf: float
    n_zpf: float
    kerr: float         # coefficient of b^dag b^dag b b, equal to -EC/2

    @property
    def anharmonicity(self) -> float:
        """omega_12 - omega_01 in energy units (equals -EC)."""
        return 2 * self.kerr


def transmon_effective(EC: float, EJ: float, n_trunc: int, hbar: float = sc.hbar):
    """Duffing-oscillator reduction of the transmon.

    Returns ``(TransmonDerived, H)`` with
    ``H = hbar omega_q b^dag b - (EC/2) b^dag b^dag b b`` truncated to
    ``n_trunc`` levels and expressed in the energy unit of ``EC``.
    ``omega_q`` includes the ``-EC`` shift so ``omega_01 = omega_q`` exactly.
    """
    if not (EC > 0 and EJ > 0):
        raise DomainError("EC and EJ must be positive")
    ratio = EJ / EC
    if ratio < 5:
        raise RegimeError(f"EJ/EC = {ratio:.3g} is below 5; the bosonic expansion does not apply")
    if ratio < 10:
        warnings.warn(f"EJ/EC = {ratio:.3g} < 10: transmon expansion is unreliable", RegimeWarning,
                      stacklevel=2)
    plasma = math.sqrt(8 * EC * EJ)
    derived = TransmonDerived(
        omega_q=(plasma - EC) / hbar,
        omega_p=plasma / hbar,
        phi_zpf=(2 * EC / EJ) ** 0.25,
        n_zpf=(EJ / (32 * EC)) ** 0.25,
        kerr=-EC / 2,
    )
    b = destroy(n_trunc)
    bd = b.dag()
    h = (plasma - EC) * (bd @ b) + derived.kerr * (bd @ bd @ b @ b)
    return derived, h


# --------------------------------------------------------------------------
# Flux qubit


@dataclass(frozen=True)
class FluxQubitParams:
    """Three-junction persistent-current flux qubit.

    The kinetic part of the full Hamiltonian has effective masses
    ``m_+ = (Phi0/2pi)^2 CJ (1 + gamma)/2`` and
    ``m_- = (Phi0/2pi)^2 CJ (1 + 2 alpha + gamma)/2``; only the potential and
    the phenomenological two-level reduction are implemented here, with the
    tunnel splitting ``tunnel_delta`` supplied as an input.
    """

    alpha: float
    k: float
    EJ: float = 1.0
    gamma_cap: float = 0.0
    Ip: float = 0.0
    tunnel_delta: float = 0.0

    def __post_init__(self):
        if not self.EJ > 0:
            raise DomainError(f"EJ must be positive, got {self.EJ}")
        if not 0.5 <= self.alpha <= 1.0:
            warnings.warn(f"alpha={self.alpha} outside the usual [0.5, 1] range", RegimeWarning,
                          stacklevel=3)


def flux_potential(p: FluxQubitParams, phi_plus, phi_minus):
    """U/EJ in the rotated coordinates ``phi_+-= (phi_1 +- phi_2)/2``."""
    pp = np.asarray(phi_plus, dtype=float)
    pm = np.asarray(phi_minus, dtype=float)
    return (2 + p.alpha - 2 * np.cos(pp) * np.cos(pm)
            - p.alpha * np.cos(2 * np.pi * p.k + 2 * pm))


def flux_potential_junctions(p: FluxQubitParams, phi1, phi2):
    """U/EJ written in the two large-junction phases."""
    phi1 = np.asarray(phi1, dtype=float)
    phi2 = np.asarray(phi2, dtype=float)
    return (2 - np.cos(phi1) - np.cos(phi2)
            + p.alpha * (1 - np.cos(2 * np.pi * p.k + phi1 - phi2)))


def flux_tls(p: FluxQubitParams, constants: PhysicalConstants = CONSTANTS) -> Operator:
    """``-(1/2)[2 Ip Phi0 (k - 1/2) sigma_x + hbar Delta sigma_z]`` in joules.

    The flux bias sits on sigma_x and the tunnelling on sigma_z, the transpose
    of the more common assignment; the spectrum is the same either way.
    """
    eps = 2 * p.Ip * constants.flux_quantum * (p.k - 0.5)
    return -0.5 * (eps * sigmax() + constants.hbar * p.tunnel_delta * sigmaz())


# --------------------------------------------------------------------------
# Phase qubit


@dataclass(frozen=True)
class PhaseQubitParams:
    beta_L: float
    flux_bias: float = 0.0
    EJ: float = 1.0
    omega01: float = 0.0
    barrier_dU: float = 0.0
    cap: float = 0.0
    dI_circ: float = 0.0

    def __post_init__(self):
        if not self.beta_L > 0:
            raise DomainError(f"beta_L must be positive, got {self.beta_L}")

    @property
    def in_operating_range(self) -> bool:
        return 1 < self.beta_L < 4.6

    def chi(self, hbar: float = sc.hbar) -> float:
        """Longitudinal admixture ``sqrt(hbar omega01 / 3 dU)``."""
        if not (self.omega01 > 0 and self.barrier_dU > 0):
            raise DomainError("omega01 and barrier_dU must be positive")
        return math.sqrt(hbar * self.omega01 / (3 * self.barrier_dU))


def phase_potential(p: PhaseQubitParams, phi):
    phi = np.asarray(phi, dtype=float)
    return 1 - np.cos(phi) + (phi - 2 * np.pi * p.flux_bias) ** 2 / (2 * p.beta_L)


def phase_tls(p: PhaseQubitParams, constants: PhysicalConstants = CONSTANTS) -> Operator:
    if not (p.omega01 > 0 and p.barrier_dU > 0 and p.cap > 0):
        raise DomainError("omega01, barrier_dU and cap must be positive")
    hbar = constants.hbar
    chi = p.chi(hbar)
    coupling = math.sqrt(hbar / (2 * p.omega01 * p.cap)) * p.dI_circ
    return -0.5 * (hbar * p.omega01 * sigmaz() + coupling * (sigmax() + chi * sigmaz()))


def phase_well_minima(p: PhaseQubitParams, phi_grid):
    """Local minima of the RF-SQUID potential on a grid.

    Returns a list of ``(phi, U/EJ, curvature)`` tuples ordered by ``phi``;
    curvature is ``d^2(U/EJ)/dphi^2 = cos(phi) + 1/beta_L`` at the minimum.
    """
    phi = np.asarray(phi_grid, dtype=float)
    u = phase_potential(p, phi)
    out = []
    for i in range(1, phi.size - 1):
        if u[i] < u[i - 1] and u[i] <= u[i + 1]:
            # refine with the parabola through the three points
            x0, x1, x2 = phi[i - 1:i + 2]
            y0, y1, y2 = u[i - 1:i + 2]
            denom = (y0 - 2 * y1 + y2)
            x = x1 if denom == 0 else x1 + 0.5 * (x1 - x0) * (y0 - y2) / denom
            out.append((float(x), float(phase_potential(p, x)), float(np.cos(x) + 1 / p.beta_L)))
    return out
