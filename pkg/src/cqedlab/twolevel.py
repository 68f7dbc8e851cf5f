"""
Driven two-level system: Rabi oscillation, steady state and the linear
susceptibility, plus the equivalent Lindblad model for numeric cross-checks.

Rate convention: ``gamma`` is the coherence decay rate, so the excited-state
population decays at ``2 gamma``. In :func:`tls_lindblad_model` this becomes
a single ``sigma^-`` channel with rate ``2 gamma``.

Linewidth note: the absorption profile ``Im chi`` has half width at half
maximum ``sqrt(gamma^2 + 2 G^2)`` and full width twice that.
:func:`tls_linewidths` reports both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import CONSTANTS, PhysicalConstants
from .dynamics import LindbladModel
from .errors import DomainError, SteadyStateError
from .opalg import Operator, sigmam

__all__ = [
    "TlsDriveParams", "rabi_population_gg", "rabi_coherence_eg", "tls_steady",
    "tls_susceptibility", "tls_linewidths", "measured_fwhm",
    "dipole_from_decay", "tls_lindblad_model",
]


@dataclass(frozen=True)
class TlsDriveParams:
    gamma: float
    delta: float
    rabi_g: float
    density: float = 0.0
    dipole: float = 0.0

    def __post_init__(self):
        if self.gamma < 0 or self.density < 0 or self.dipole < 0:
            raise DomainError("gamma, density and dipole must be non-negative")

    @property
    def generalized_rabi(self) -> float:
        return math.sqrt(self.delta ** 2 + 4 * self.rabi_g ** 2)


def rabi_population_gg(p: TlsDriveParams, t):
    """Lossless ground-state population starting from ``|g>``."""
    t = np.asarray(t, dtype=float)
    om = p.generalized_rabi
    if om == 0:
        out = np.ones_like(t)
    else:
        s2 = np.sin(om * t / 2) ** 2
        out = np.cos(om * t / 2) ** 2 + (p.delta ** 2 / om ** 2) * s2
    return float(out) if out.ndim == 0 else out


def rabi_coherence_eg(p: TlsDriveParams, t):
    """Lossless ``rho_eg`` starting from ``|g>``.

    Solves ``d rho_eg/dt = i Delta rho_eg + i G (rho_gg - rho_ee)``, the
    same equations whose steady state :func:`tls_steady` returns; early on
    ``rho_eg ~ i G t - G Delta t^2 / 2``.
    """
    t = np.asarray(t, dtype=float)
    om = p.generalized_rabi
    if om == 0:
        out = np.zeros_like(t, dtype=complex)
    else:
        s, c = np.sin(om * t / 2), np.cos(om * t / 2)
        out = (2 * p.rabi_g / om ** 2) * s * (-p.delta * s + 1j * om * c)
    return complex(out) if out.ndim == 0 else out


def _denominator(p, delta):
    return p.gamma ** 2 + delta ** 2 + 2 * p.rabi_g ** 2


def tls_steady(p: TlsDriveParams):
    """``(rho_ee, rho_eg)`` after relaxation."""
    if not p.gamma > 0:
        raise SteadyStateError("no steady state without damping (gamma = 0)")
    den = _denominator(p, p.delta)
    return p.rabi_g ** 2 / den, 1j * p.rabi_g * (p.gamma + 1j * p.delta) / den


def tls_susceptibility(p: TlsDriveParams, delta_grid, constants: PhysicalConstants = CONSTANTS):
    """Complex linear susceptibility on a detuning grid (``p.delta`` unused)."""
    if not p.gamma > 0:
        raise SteadyStateError("susceptibility needs gamma > 0")
    delta = np.asarray(delta_grid, dtype=float)
    pref = p.density * p.dipole ** 2 / (constants.hbar * constants.eps0)
    return pref * (-delta + 1j * p.gamma) / _denominator(p, delta)


def tls_linewidths(p: TlsDriveParams):
    """``(hwhm, fwhm)`` of the power-broadened absorption line."""
    hw = math.sqrt(p.gamma ** 2 + 2 * p.rabi_g ** 2)
    return hw, 2 * hw


def measured_fwhm(x, y) -> float:
    """Full width at half maximum of a single-peaked sampled curve.

    Half-maximum crossings are located by linear interpolation between the
    bracketing samples on each side of the peak.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    i = int(np.argmax(y))
    half = y[i] / 2
    left = np.nonzero(y[:i] < half)[0]
    right = np.nonzero(y[i:] < half)[0]
    if left.size == 0 or right.size == 0:
        raise ValueError("curve does not fall below half maximum on both sides")
    a = left[-1]
    xl = x[a] + (half - y[a]) * (x[a + 1] - x[a]) / (y[a + 1] - y[a])
    b = i + right[0]
    xr = x[b - 1] + (half - y[b - 1]) * (x[b] - x[b - 1]) / (y[b] - y[b - 1])
    return float(xr - xl)


def dipole_from_decay(gamma: float, wavelength: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Dipole magnitude from the spontaneous rate ``2 gamma``.

    Uses ``|d|^2 = 3 pi eps0 hbar c^3 (2 gamma) / omega^3`` with
    ``omega = 2 pi c / wavelength``. This is one common convention; pass an
    explicit dipole to :class:`TlsDriveParams` when another is wanted.
    """
    omega = 2 * math.pi * constants.c_light / wavelength
    d2 = 3 * math.pi * constants.eps0 * constants.hbar * constants.c_light ** 3 * (2 * gamma) / omega ** 3
    return math.sqrt(d2)


def tls_lindblad_model(p: TlsDriveParams) -> LindbladModel:
    """Rotating-frame model ``H = -delta |e><e| - G (|e><g| + |g><e|)``."""
    h = Operator([[0, -p.rabi_g], [-p.rabi_g, -p.delta]])
    return LindbladModel(h_static=h, channels=((sigmam(), 2 * p.gamma),))
