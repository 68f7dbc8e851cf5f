"""
Jaynes-Cummings model, dressed doublets, dispersive energies and the
doubly-dressed polariton basis.

Basis ordering is qubit (slow index) x cavity (fast index): the bare state
``|q, n>`` sits at index ``q * n_cav + n`` with ``q = 0`` for ``|g>`` and
``q = 1`` for ``|e>``. All energies are angular frequencies with hbar = 1.

Dispersive sign convention
--------------------------
The dispersive energies and the polariton formulas below reproduce the
exact spectrum when the shift is taken as ``chi = g^2 / (omega_r - omega_q)``,
i.e. positive for a qubit below the cavity. That is the configuration in
which ``|n-1,+>`` is mostly ``|g,n>`` and the nesting window
``omega_q - 3 chi < omega_d < omega_q - chi`` is non-empty. With a qubit
above the cavity ``chi`` turns negative and ``nested`` is always False.
The Rabi-splitting detuning used by the doublets stays
``delta = omega_q - omega_r``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RegimeError, RegimeWarning
from .opalg import Operator, destroy, eig_hermitian, identity, kron, sigmam, sigmap

__all__ = [
    "JcmParams", "DriveSpec", "PolaritonBasis",
    "jc_operators", "jc_hamiltonian", "excitation_number", "jc_doublet", "jc_doublet_states",
    "dispersive_shift", "dispersive_energies", "exact_dressed_energies",
    "driven_rotating_hamiltonian", "polariton_basis", "polariton_numeric",
]


@dataclass(frozen=True)
class JcmParams:
    omega_r: float
    omega_q: float
    g: float
    n_cav: int = 10

    def __post_init__(self):
        if self.n_cav < 3:
            raise DomainError(f"n_cav must be >= 3, got {self.n_cav}")
        if self.g < 0:
            raise DomainError(f"g must be non-negative, got {self.g}")

    @property
    def delta(self) -> float:
        return self.omega_q - self.omega_r


@dataclass(frozen=True)
class DriveSpec:
    omega_d: float
    Omega_d: float

    def __post_init__(self):
        if self.Omega_d < 0:
            raise DomainError(f"Omega_d must be non-negative, got {self.Omega_d}")


def jc_operators(n_cav: int):
    """``(a, sigma_minus, sigma_z)`` on the qubit x cavity space.

    ``sigma_z`` is ``|e><e| - |g><g|``.
    """
    a = kron(identity(2), destroy(n_cav))
    sm = kron(sigmam(), identity(n_cav))
    sp = sm.dag()
    sz = sp @ sm - sm @ sp
    return a, sm, sz


def _jc_matrix(omega_r, omega_q, g, n_cav):
    a, sm, sz = jc_operators(n_cav)
    sp = sm.dag()
    return omega_r * (a.dag() @ a) + (omega_q / 2) * sz + g * (sp @ a + sm @ a.dag())


def jc_hamiltonian(p: JcmParams) -> Operator:
    return _jc_matrix(p.omega_r, p.omega_q, p.g, p.n_cav)


def excitation_number(n_cav: int) -> Operator:
    a, sm, _ = jc_operators(n_cav)
    return a.dag() @ a + sm.dag() @ sm


def jc_doublet(n: int, delta: float, g: float, omega_r: float = 0.0):
    """Analytic doublet ``(E_plus, E_minus, theta_n)`` of the n-th manifold.

    The manifold is spanned by ``|e,n>`` and ``|g,n+1>``; ``delta`` is
    ``omega_q - omega_r`` and ``theta_n`` lies in ``[0, pi]``.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    split = math.sqrt(delta ** 2 + 4 * g ** 2 * (n + 1))
    centre = (n + 0.5) * omega_r
    theta = math.atan2(2 * g * math.sqrt(n + 1), delta)
    return centre + split / 2, centre - split / 2, theta


def jc_doublet_states(n: int, delta: float, g: float) -> np.ndarray:
    """Columns ``|n,+>``, ``|n,->`` in the ``(|e,n>, |g,n+1>)`` basis."""
    _, _, theta = jc_doublet(n, delta, g)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def dispersive_shift(p: JcmParams) -> float:
    detuning = p.omega_r - p.omega_q
    if detuning == 0:
        raise RegimeError("dispersive regime needs omega_q != omega_r")
    ratio = abs(p.g / detuning)
    if ratio > 0.1:
        raise RegimeError(f"|g/Delta| = {ratio:.3g} exceeds 0.1; dispersive expansion invalid")
    if ratio > 0.05:
        warnings.warn(f"|g/Delta| = {ratio:.3g} > 0.05: dispersive expansion is marginal",
                      RegimeWarning, stacklevel=3)
    return p.g ** 2 / detuning


def dispersive_energies(p: JcmParams, n: int, omega_d: float = 0.0):
    """Second-order dressed energies ``(omega_g_n, omega_e_n, chi)``.

    Energies are in the frame rotating at ``omega_d`` and share a constant
    offset with the exact spectrum; only differences are physical.
    """
    chi = dispersive_shift(p)
    wr, wq = p.omega_r - omega_d, p.omega_q - omega_d
    offset = p.delta / 2
    w_g = n * (wr + chi) + offset
    w_e = n * (wr - chi) + (wq - chi) + offset
    return w_g, w_e, chi


def exact_dressed_energies(p: JcmParams, n: int, omega_d: float = 0.0):
    """Exact JC energies adiabatically connected to ``|g,n>`` and ``|e,n>``.

    Uses the analytic doublets; rotating-frame shift ``-omega_d`` per
    excitation. The state mostly ``|g,n>`` is picked by the sign of the
    detuning, so this is valid for any ``g`` with ``omega_q != omega_r``.
    """
    qubit_below = p.omega_q < p.omega_r
    if n == 0:
        e_g = -p.omega_q / 2
    else:
        ep, em, _ = jc_doublet(n - 1, p.delta, p.g, p.omega_r)
        e_g = ep if qubit_below else em
    ep, em, _ = jc_doublet(n, p.delta, p.g, p.omega_r)
    e_e = em if qubit_below else ep
    shift = omega_d
    return e_g - n * shift + shift / 2, e_e - (n + 1) * shift + shift / 2


def driven_rotating_hamiltonian(p: JcmParams, d: DriveSpec) -> Operator:
    """Qubit-driven JC Hamiltonian in the frame rotating at ``omega_d``."""
    a, sm, sz = jc_operators(p.n_cav)
    sp = sm.dag()
    wr, wq = p.omega_r - d.omega_d, p.omega_q - d.omega_d
    return (wr * (a.dag() @ a) + (wq / 2) * sz + p.g * (sp @ a + sm @ a.dag())
            + d.Omega_d * (sm + sp))


@dataclass(frozen=True)
class PolaritonBasis:
    """Four doubly-dressed states in the ``(|g,0>, |e,0>, |g,1>, |e,1>)`` basis.

    ``states`` holds ``|1>..|4>`` as columns.
    """

    chi: float
    theta_l: float
    theta_u: float
    omega_21: float
    omega_43: float
    states: np.ndarray
    nested: bool

    def embed(self, n_cav: int) -> np.ndarray:
        """States as columns of the full ``2 * n_cav`` qubit x cavity space."""
        idx = [0, n_cav, 1, n_cav + 1]
        out = np.zeros((2 * n_cav, 4))
        out[idx, :] = self.states
        return out


def polariton_basis(p: JcmParams, d: DriveSpec) -> PolaritonBasis:
    chi = dispersive_shift(p)
    wq = p.omega_q - d.omega_d
    lower = wq - chi
    upper = -wq + 3 * chi
    theta_l = math.atan2(2 * d.Omega_d, lower)
    theta_u = math.atan2(2 * d.Omega_d, upper)
    cl, sl = math.cos(theta_l / 2), math.sin(theta_l / 2)
    cu, su = math.cos(theta_u / 2), math.sin(theta_u / 2)
    states = np.array([
        # |1>   |2>   |3>   |4>
        [cl,   sl,   0.0,  0.0],   # |g,0>
        [-sl,  cl,   0.0,  0.0],   # |e,0>
        [0.0,  0.0,  -su,  cu],    # |g,1>
        [0.0,  0.0,  cu,   su],    # |e,1>
    ])
    return PolaritonBasis(
        chi=chi, theta_l=theta_l, theta_u=theta_u,
        omega_21=math.sqrt(lower ** 2 + 4 * d.Omega_d ** 2),
        omega_43=math.sqrt((wq - 3 * chi) ** 2 + 4 * d.Omega_d ** 2),
        states=states,
        nested=bool(p.omega_q - 3 * chi < d.omega_d < p.omega_q - chi),
    )


def polariton_numeric(p: JcmParams, d: DriveSpec):
    """Numeric polariton splittings ``(omega_21, omega_43, energies)``.

    Diagonalizes the undriven JC Hamiltonian, keeps the four dressed states
    connected to ``|g,0>, |e,0>, |g,1>, |e,1>``, projects the rotating-frame
    driven Hamiltonian onto them and diagonalizes the resulting 4x4 block.
    Differences from :func:`polariton_basis` measure the dispersive-limit
    approximation.
    """
    n_cav = p.n_cav
    es = eig_hermitian(jc_hamiltonian(p))
    bare = [0, n_cav, 1, n_cav + 1]
    overlap = np.abs(es.vectors[bare, :]) ** 2
    picks = [int(np.argmax(overlap[i])) for i in range(4)]
    if len(set(picks)) != 4:
        raise RegimeError("could not identify dressed states; coupling too strong")
    vecs = es.vectors[:, picks]
    h = driven_rotating_hamiltonian(p, d).data
    block = vecs.conj().T @ h @ vecs
    energies = eig_hermitian(Operator(block)).values
    return energies[1] - energies[0], energies[3] - energies[2], energies
