"""
The engineered Lambda system: probe susceptibility (closed form and weak-probe
master equation), pole classification into EIT / Autler-Townes regimes, and
STIRAP / counterdiabatic (saSTIRAP) population transfer.

State labels follow the polariton construction: ``|1>`` and ``|2>`` are the
lower states, ``|3>`` the shared upper state. Probe couples ``|1>-|3>``,
control (Stokes) ``|2>-|3>``, the counterdiabatic field ``|1>-|2>``.

Two matrix orderings are in use:

* EIT models use ``(|1>, |2>, |3>)`` at indices 0, 1, 2.
* STIRAP Hamiltonians use ``(|1>, |3>, |2>)``, matching the usual pump /
  Stokes tridiagonal layout. Population columns are relabelled P1, P2, P3.

Sign and normalization notes for the probe response:

* :func:`eit_chi1` returns the dimensionless expression
  ``(d - i g21/2) / [(d - i G31/2)(d + D2 - i g21/2) - Oc^2/4]``.
* For ``Delta2 = 0`` the weak-probe steady state of the master equation
  obeys ``chi = -(2 / Omega_p) * rho_13``; :func:`eit_numeric_chi` applies
  that map. For ``Delta2 != 0`` the master equation pairs ``Gamma31`` with
  the one-photon detuning instead, see :func:`eit_chi1_master`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dynamics import LindbladModel, PulseEnvelope, Trajectory, evolve, steady_state
from .errors import DomainError, PreconditionError, UndefinedAngleError
from .opalg import Operator, projector

__all__ = [
    "LambdaDecays", "ProbeControlSpec", "StirapConfig",
    "eit_chi1", "eit_chi1_master", "eit_poles", "eit_residues", "eit_residue_sum",
    "eit_model", "eit_numeric_spectrum", "eit_numeric_chi", "shape_normalize",
    "stirap_hamiltonian", "cd_amplitude", "cd_amplitude_exact", "mixing_angle",
    "dark_state", "stirap_model", "run_protocol", "ProtocolResult",
]


@dataclass(frozen=True)
class LambdaDecays:
    gamma31: float
    gamma32: float
    gamma21: float = 0.0

    def __post_init__(self):
        if min(self.gamma31, self.gamma32, self.gamma21) < 0:
            raise DomainError("decay rates must be non-negative")

    @property
    def Gamma31(self) -> float:
        return self.gamma31 + self.gamma32


@dataclass(frozen=True)
class ProbeControlSpec:
    Omega_p: float
    Omega_c: float
    Delta1: float = 0.0
    Delta2: float = 0.0

    @property
    def delta(self) -> float:
        return self.Delta1 - self.Delta2

    def at_two_photon(self, delta: float) -> "ProbeControlSpec":
        """Same fields and control detuning, probe retuned to two-photon ``delta``."""
        return ProbeControlSpec(self.Omega_p, self.Omega_c, delta + self.Delta2, self.Delta2)


# --------------------------------------------------------------------------
# EIT / ATS


def eit_chi1(s: ProbeControlSpec, d: LambdaDecays, delta=None):
    """Linear probe susceptibility as a function of two-photon detuning.

    ``delta`` (scalar or array) overrides ``s.delta``.
    """
    if s.Omega_c < 0:
        raise DomainError("Omega_c must be non-negative")
    dl = s.delta if delta is None else np.asarray(delta, dtype=float)
    num = dl - 0.5j * d.gamma21
    den = (dl - 0.5j * d.Gamma31) * (dl + s.Delta2 - 0.5j * d.gamma21) - s.Omega_c ** 2 / 4
    return _ratio(num, den, dl, s, d)


def _ratio(num, den, dl, s, d):
    # 0/0 only for Omega_c = gamma21 = Delta2 = 0 at delta = 0: the bare line 1/(delta - i Gamma31/2)
    num, den = np.asarray(num, dtype=complex), np.asarray(den, dtype=complex)
    hole = (num == 0) & (den == 0)
    safe = np.where(hole, 1.0, den)
    out = np.where(hole, 1.0 / (dl + s.Delta2 - 0.5j * d.Gamma31), num / safe)
    return complex(out) if out.ndim == 0 else out


def eit_chi1_master(s: ProbeControlSpec, d: LambdaDecays, delta=None):
    """Weak-probe solution of the master equation, any control detuning.

    Identical to :func:`eit_chi1` when ``Delta2 = 0``; otherwise ``Gamma31``
    is attached to the one-photon detuning ``delta + Delta2``.
    """
    dl = s.delta if delta is None else np.asarray(delta, dtype=float)
    num = dl - 0.5j * d.gamma21
    den = (dl + s.Delta2 - 0.5j * d.Gamma31) * (dl - 0.5j * d.gamma21) - s.Omega_c ** 2 / 4
    return _ratio(num, den, dl, s, d)


def eit_poles(Omega_c: float, d: LambdaDecays, rtol: float = 1e-12):
    """Poles ``(delta_plus, delta_minus, regime)`` for zero control detuning.

    ``regime`` is ``"ATS"`` above the threshold ``(Gamma31 - gamma21)/2``,
    ``"EIT"`` below it and ``"boundary"`` within ``rtol`` of it.
    """
    G, g = d.Gamma31, d.gamma21
    root = 0.5 * np.sqrt(complex(Omega_c ** 2 - 0.25 * (G - g) ** 2))
    centre = 0.25j * (g + G)
    threshold = 0.5 * (G - g)
    if abs(Omega_c - threshold) <= rtol * max(abs(Omega_c), abs(threshold)):
        regime = "boundary"
    elif Omega_c > threshold:
        regime = "ATS"
    else:
        regime = "EIT"
    return complex(centre + root), complex(centre - root), regime


def eit_residues(Omega_c: float, d: LambdaDecays):
    """``(chi_plus, chi_minus, delta_plus, delta_minus)`` with
    ``chi_pm = +-(delta_pm - i gamma21/2) / (delta_plus - delta_minus)``.

    With these weights ``chi = chi_plus/(delta - delta_plus) +
    chi_minus/(delta - delta_minus)``; see :func:`eit_residue_sum`.
    """
    dp, dm, _ = eit_poles(Omega_c, d)
    if dp == dm:
        raise DomainError("poles coincide at the regime boundary; no simple-pole decomposition")
    gap = dp - dm
    return (dp - 0.5j * d.gamma21) / gap, -(dm - 0.5j * d.gamma21) / gap, dp, dm


def eit_residue_sum(Omega_c: float, d: LambdaDecays, delta):
    cp, cm, dp, dm = eit_residues(Omega_c, d)
    delta = np.asarray(delta, dtype=float)
    return cp / (delta - dp) + cm / (delta - dm)


def eit_model(s: ProbeControlSpec, d: LambdaDecays) -> LindbladModel:
    """Time-independent three-level model in the two-field rotating frame.

    Ordering ``(|1>, |2>, |3>)``; ``H = -Delta1 |3><3| - delta |2><2|
    - (1/2)(Omega_p |3><1| + Omega_c |3><2| + h.c.)``.
    """
    p = lambda i, j=None: projector(3, i, j)
    h = (-s.Delta1) * p(2) + (-s.delta) * p(1)
    h = h - 0.5 * s.Omega_p * (p(2, 0) + p(0, 2)) - 0.5 * s.Omega_c * (p(2, 1) + p(1, 2))
    channels = (
        (p(0, 2), d.gamma31),
        (p(1, 2), d.gamma32),
        (p(0, 1), d.gamma21),
    )
    return LindbladModel(h_static=h, channels=channels)


def _steady_rho(s):
    spec, decays = s
    return steady_state(eit_model(spec, decays)).data


def eit_numeric_spectrum(s: ProbeControlSpec, d: LambdaDecays, delta_grid, jobs: int = 1,
                         return_states: bool = False):
    """Steady-state ``rho_31`` on a two-photon detuning grid.

    ``s`` is a template: its control detuning and field strengths are kept,
    the probe detuning follows the grid. Each point is an independent
    steady-state solve; ``jobs > 1`` spreads them over threads with results
    kept in grid order.
    """
    if s.Omega_p > d.Gamma31 / 50:
        raise PreconditionError(
            f"Omega_p = {s.Omega_p:g} exceeds the weak-probe bound Gamma31/50 = {d.Gamma31 / 50:g}")
    grid = np.asarray(delta_grid, dtype=float)
    tasks = [(s.at_two_photon(float(x)), d) for x in grid]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            states = list(pool.map(_steady_rho, tasks))
    else:
        states = [_steady_rho(t) for t in tasks]
    rho31 = np.array([r[2, 0] for r in states])
    if return_states:
        return rho31, np.array(states)
    return rho31


def eit_numeric_chi(s: ProbeControlSpec, d: LambdaDecays, delta_grid, jobs: int = 1):
    """Numeric counterpart of :func:`eit_chi1`: ``-(2/Omega_p) rho_13``."""
    if s.Omega_p == 0:
        raise PreconditionError("numeric susceptibility needs a non-zero probe")
    rho31 = eit_numeric_spectrum(s, d, delta_grid, jobs=jobs)
    return -(2.0 / s.Omega_p) * np.conj(rho31)


def shape_normalize(values):
    """Divide a complex curve by its largest-magnitude sample."""
    values = np.asarray(values)
    return values / values[int(np.argmax(np.abs(values)))]


# --------------------------------------------------------------------------
# STIRAP / saSTIRAP


@dataclass(frozen=True)
class StirapConfig:
    """Gaussian pump (centred at 0) and Stokes (centred at ``t_s``) pulses.

    ``t_s < 0`` is the counterintuitive order: Stokes first.
    """

    Omega_p_peak: float
    Omega_s_peak: float
    sigma: float
    t_s: float
    t_span: tuple | None = None
    cd_enabled: bool = False

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")
        lo = -4 * self.sigma + min(0.0, self.t_s)
        hi = 4 * self.sigma + max(0.0, self.t_s)
        if self.t_span is None:
            object.__setattr__(self, "t_span", (lo, hi))
        else:
            start, end = (float(x) for x in self.t_span)
            if start > lo or end < hi:
                raise DomainError(f"t_span {self.t_span} must cover [{lo:g}, {hi:g}]")
            object.__setattr__(self, "t_span", (start, end))

    @property
    def equal_peaks(self) -> bool:
        return self.Omega_p_peak == self.Omega_s_peak

    def pump(self) -> PulseEnvelope:
        return PulseEnvelope("gaussian", self.Omega_p_peak, 0.0, self.sigma)

    def stokes(self) -> PulseEnvelope:
        return PulseEnvelope("gaussian", self.Omega_s_peak, self.t_s, self.sigma)


def _envelopes(t, cfg):
    t = np.asarray(t, dtype=float)
    om_p = cfg.Omega_p_peak * np.exp(-t ** 2 / (2 * cfg.sigma ** 2))
    om_s = cfg.Omega_s_peak * np.exp(-(t - cfg.t_s) ** 2 / (2 * cfg.sigma ** 2))
    return om_p, om_s


def cd_amplitude(t, cfg: StirapConfig):
    """Closed-form counterdiabatic Rabi frequency for equal peak amplitudes."""
    if not cfg.equal_peaks:
        raise PreconditionError(
            "closed-form CD pulse assumes equal pump and Stokes peaks; use cd_amplitude_exact")
    rate = -cfg.t_s / cfg.sigma ** 2
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        out = rate / np.cosh(rate * (t - cfg.t_s / 2))
    return float(out) if out.ndim == 0 else out


def _log_ratio(t, cfg):
    # ln(Omega_p / Omega_s), finite even where both Gaussians underflow
    t = np.asarray(t, dtype=float)
    return (math.log(cfg.Omega_p_peak / cfg.Omega_s_peak)
            - (t ** 2 - (t - cfg.t_s) ** 2) / (2 * cfg.sigma ** 2))


def cd_amplitude_exact(t, cfg: StirapConfig):
    """``2 dtheta/dt`` for arbitrary positive peaks (extension of the closed form)."""
    if not (cfg.Omega_p_peak > 0 and cfg.Omega_s_peak > 0):
        raise PreconditionError("exact CD amplitude needs positive pump and Stokes peaks")
    x = _log_ratio(t, cfg)
    # Omega_p Omega_s / Omega_0^2 = 1 / (2 cosh(ln r))
    with np.errstate(over="ignore"):
        out = -cfg.t_s / cfg.sigma ** 2 / np.cosh(x)
    return float(out) if np.ndim(out) == 0 else out


def mixing_angle(t, cfg: StirapConfig):
    """``(theta, |dtheta/dt| / Omega_0)`` with ``tan(theta) = Omega_p / Omega_s``."""
    om_p, om_s = _envelopes(t, cfg)
    if np.any((np.abs(om_p) < 1e-300) & (np.abs(om_s) < 1e-300)):
        raise UndefinedAngleError("both pulses vanish; the mixing angle is undefined")
    theta = np.arctan2(om_p, om_s)
    om0 = np.hypot(om_p, om_s)
    theta_dot = -cfg.t_s * om_p * om_s / (cfg.sigma ** 2 * om0 ** 2)
    adiab = np.abs(theta_dot) / om0
    if np.ndim(theta) == 0:
        return float(theta), float(adiab)
    return theta, adiab


def dark_state(t, cfg: StirapConfig) -> np.ndarray:
    """``(cos theta, 0, -sin theta)`` in the ``(|1>, |3>, |2>)`` ordering."""
    theta, _ = mixing_angle(float(t), cfg)
    return np.array([math.cos(theta), 0.0, -math.sin(theta)])


def _cd_value(t, cfg):
    return cd_amplitude(t, cfg) if cfg.equal_peaks else cd_amplitude_exact(t, cfg)


def stirap_hamiltonian(t: float, cfg: StirapConfig) -> Operator:
    """3x3 Hamiltonian in the ``(|1>, |3>, |2>)`` basis, hbar = 1."""
    om_p, om_s = _envelopes(float(t), cfg)
    h = np.zeros((3, 3), dtype=complex)
    h[0, 1] = h[1, 0] = om_p / 2
    h[1, 2] = h[2, 1] = om_s / 2
    if cfg.cd_enabled:
        om_a = _cd_value(float(t), cfg)
        h[0, 2] = 0.5j * om_a
        h[2, 0] = -0.5j * om_a
    return Operator(h)


def stirap_model(cfg: StirapConfig, decays: LambdaDecays | None = None) -> LindbladModel:
    p = lambda i, j=None: projector(3, i, j)
    drives = [(0.5 * p(0, 1), cfg.pump()), (0.5 * p(1, 2), cfg.stokes())]
    if cfg.cd_enabled:
        if cfg.equal_peaks:
            rate = -cfg.t_s / cfg.sigma ** 2
            if rate != 0:
                drives.append((0.5j * p(0, 2),
                               PulseEnvelope("sech", rate, cfg.t_s / 2, 1.0 / abs(rate))))
        else:
            drives.append((0.5j * p(0, 2), lambda t: cd_amplitude_exact(t, cfg)))
    channels = ()
    if decays is not None:
        # (|1>, |3>, |2>) ordering: |1> -> 0, |3> -> 1, |2> -> 2
        channels = (
            (p(0, 1), decays.gamma31),
            (p(2, 1), decays.gamma32),
            (p(0, 2), decays.gamma21),
        )
    return LindbladModel(h_static=Operator(np.zeros((3, 3))), h_drive=tuple(drives), channels=channels)


@dataclass(frozen=True)
class ProtocolResult:
    trajectory: Trajectory
    P1: float
    P2: float
    P3: float

    @property
    def fidelity(self) -> float:
        return self.P2

    def populations(self) -> dict:
        tr = self.trajectory
        return {"P1": tr.population(0), "P2": tr.population(2), "P3": tr.population(1)}


def run_protocol(cfg: StirapConfig, decays: LambdaDecays | None = None, n_times: int = 401,
                 max_step: float | None = None) -> ProtocolResult:
    """Integrate STIRAP (or saSTIRAP with ``cd_enabled``) from ``|1>``."""
    times = np.linspace(cfg.t_span[0], cfg.t_span[1], n_times)
    rho0 = projector(3, 0)
    traj = evolve(stirap_model(cfg, decays), rho0, times, max_step=max_step)
    final = traj.states[-1]
    return ProtocolResult(traj, P1=float(final[0, 0].real), P2=float(final[2, 2].real),
                          P3=float(final[1, 1].real))
