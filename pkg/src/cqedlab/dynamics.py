"""
Open-system dynamics: pulse envelopes, Lindblad models, Liouvillians,
fixed-step RK4 time evolution and steady states.

Conventions
-----------
* Units are dimensionless with hbar = 1; the caller picks the frequency unit.
* Density matrices are vectorized by stacking columns, ``vec(rho) =
  rho.reshape(-1, order="F")``, so ``vec(A X B) = (B^T kron A) vec(X)``.
* A channel ``(L, rate)`` contributes
  ``rate/2 * (2 L rho L^dag - L^dag L rho - rho L^dag L)``.
  This is the usual ``rate * D[L]`` form, so a two-level decay channel at
  ``rate`` relaxes the excited population as ``exp(-rate t)`` and the
  coherence as ``exp(-rate t / 2)``.
* A drive term ``(op, f)`` adds ``f(t) op + conj(f(t)) op^dag`` to the
  Hamiltonian. Drive operators therefore carry only one half of a Hermitian
  coupling, e.g. ``0.5 |1><3|`` for a ``(Omega/2)(|1><3| + |3><1|)`` link.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Number
from typing import Callable

import numpy as np

from .errors import DimensionError, IntegrationError, MultiplicityError, PreconditionError, SteadyStateError
from .opalg import Operator

__all__ = [
    "PulseEnvelope", "pulse_eval", "LindbladModel", "Trajectory",
    "liouvillian", "evolve", "steady_state", "vec", "unvec",
]

_KINDS = ("gaussian", "sech", "constant")


@dataclass(frozen=True)
class PulseEnvelope:
    kind: str
    amplitude: float
    center: float = 0.0
    width: float = 1.0
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown envelope kind {self.kind!r}; expected one of {_KINDS}")
        if self.kind != "constant" and not self.width > 0:
            raise ValueError(f"envelope width must be positive, got {self.width}")

    def __call__(self, t):
        return pulse_eval(self, t)

    @property
    def peak(self) -> float:
        return abs(self.amplitude)


def pulse_eval(env: PulseEnvelope, t):
    """Complex envelope value ``A * shape(t) * exp(i phase)``."""
    t = np.asarray(t, dtype=float)
    if env.kind == "gaussian":
        shape = np.exp(-((t - env.center) ** 2) / (2 * env.width ** 2))
    elif env.kind == "sech":
        # 1/cosh overflows quietly to 0 in the far tails
        with np.errstate(over="ignore"):
            shape = 1.0 / np.cosh((t - env.center) / env.width)
    else:
        shape = np.ones_like(t)
    value = env.amplitude * shape * np.exp(1j * env.phase)
    return complex(value) if value.ndim == 0 else value


def _drive_value(f, t) -> complex:
    if isinstance(f, Number):
        return complex(f)
    return complex(f(t))


def _is_constant(f) -> bool:
    return isinstance(f, Number) or (isinstance(f, PulseEnvelope) and f.kind == "constant")


@dataclass(frozen=True)
class LindbladModel:
    """Static Hamiltonian, drive terms and dissipative channels.

    ``h_drive`` entries are ``(operator, f)`` with ``f`` a
    :class:`PulseEnvelope`, a number, or any callable ``t -> complex``.
    """

    h_static: Operator
    h_drive: tuple = ()
    channels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "h_drive", tuple(tuple(term) for term in self.h_drive))
        object.__setattr__(self, "channels", tuple(tuple(ch) for ch in self.channels))
        d = self.h_static.dim
        if not self.h_static.is_hermitian(1e-9):
            raise ValueError(f"static Hamiltonian is not Hermitian (asymmetry {self.h_static.asymmetry():.2e})")
        for op, _ in self.h_drive:
            if op.dim != d:
                raise DimensionError(f"drive operator has dim {op.dim}, Hamiltonian has {d}")
        for jump, rate in self.channels:
            if jump.dim != d:
                raise DimensionError(f"jump operator has dim {jump.dim}, Hamiltonian has {d}")
            if rate < 0:
                raise ValueError(f"decay rates must be non-negative, got {rate}")

    @property
    def dim(self) -> int:
        return self.h_static.dim

    @property
    def is_time_dependent(self) -> bool:
        return not all(_is_constant(f) for _, f in self.h_drive)

    def hamiltonian(self, t: float = 0.0) -> Operator:
        h = self.h_static.data.copy()
        for op, f in self.h_drive:
            c = _drive_value(f, t)
            h = h + c * op.data + np.conj(c) * op.data.conj().T
        return Operator(h, self.h_static.dims)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray                       # (n_times, d, d)
    observables: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.times)

    def state(self, i: int) -> Operator:
        return Operator(self.states[i])

    def population(self, k: int) -> np.ndarray:
        return self.states[:, k, k].real.copy()


def vec(rho) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v, d: int) -> np.ndarray:
    return np.asarray(v).reshape(d, d, order="F")


def _ham_super(h: np.ndarray) -> np.ndarray:
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def _dissipator_super(channels, d) -> np.ndarray:
    eye = np.eye(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for jump, rate in channels:
        if rate == 0:
            continue
        L = jump.data
        LdL = L.conj().T @ L
        out += rate * (np.kron(L.conj(), L) - 0.5 * np.kron(eye, LdL) - 0.5 * np.kron(LdL.T, eye))
    return out


def liouvillian(model: LindbladModel, t: float = 0.0) -> Operator:
    """Column-stacked superoperator of the master equation at time ``t``."""
    d = model.dim
    sup = _ham_super(model.hamiltonian(t).data) + _dissipator_super(model.channels, d)
    return Operator(sup)


class _Rhs:
    """Splits L(t) into a static part plus envelope-weighted pieces."""

    def __init__(self, model: LindbladModel):
        d = model.dim
        self.static = _ham_super(model.h_static.data) + _dissipator_super(model.channels, d)
        self.terms = []
        for op, f in model.h_drive:
            if _is_constant(f):
                c = _drive_value(f, 0.0)
                self.static = self.static + _ham_super(c * op.data + np.conj(c) * op.data.conj().T)
            else:
                self.terms.append((f, _ham_super(op.data), _ham_super(op.data.conj().T)))

    def matrix(self, t):
        m = self.static
        for f, a, b in self.terms:
            c = _drive_value(f, t)
            m = m + c * a + np.conj(c) * b
        return m

    def __call__(self, t, v):
        return self.matrix(t) @ v


def _rate_scale(model: LindbladModel, times) -> float:
    scale = float(np.max(np.abs(model.h_static.data)))
    for op, f in model.h_drive:
        opmax = float(np.max(np.abs(op.data)))
        if isinstance(f, Number):
            peak = abs(f)
        elif isinstance(f, PulseEnvelope):
            peak = f.peak
        else:
            mids = 0.5 * (times[1:] + times[:-1])
            pts = np.concatenate([times, mids])
            peak = max(abs(complex(f(t))) for t in pts)
        scale = max(scale, 2 * peak * opmax)
    for _, rate in model.channels:
        scale = max(scale, rate)
    return scale


def _check_state(rho, t, trace_tol=1e-6, herm_tol=1e-8, pos_tol=1e-6):
    tr = np.trace(rho)
    if abs(tr - 1) > trace_tol:
        raise IntegrationError(f"trace drifted to {tr:.8g} at t={t}", t)
    asym = float(np.max(np.abs(rho - rho.conj().T)))
    if asym > herm_tol:
        raise IntegrationError(f"state lost Hermiticity ({asym:.2e}) at t={t}", t)
    lam = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lam < -pos_tol:
        raise IntegrationError(f"state has negative eigenvalue {lam:.2e} at t={t}", t)


def evolve(model: LindbladModel, rho0: Operator, times, observables: dict | None = None,
           max_step: float | None = None, check: bool = True) -> Trajectory:
    """Integrate the master equation with fixed-step classical RK4.

    Each output interval is split into equal substeps no longer than
    ``1 / (50 w)`` where ``w`` is the largest magnitude among Hamiltonian
    entries, drive amplitudes (times operator entries) and decay rates.
    ``max_step`` can only tighten this bound.

    Parameters
    ----------
    observables : dict, optional
        ``name -> Operator``; real expectation values are recorded per time.
    check : bool
        Verify trace, Hermiticity and positivity at every output time and
        raise :class:`IntegrationError` at the first violation.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("times must be a non-empty 1-D array")
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    rho0_m = rho0.data if isinstance(rho0, Operator) else np.asarray(rho0, dtype=complex)
    d = model.dim
    if rho0_m.shape != (d, d):
        raise DimensionError(f"initial state has shape {rho0_m.shape}, model has dim {d}")
    if check:
        _check_state(rho0_m, times[0])

    scale = _rate_scale(model, times) if times.size > 1 else 0.0
    h_max = math.inf if scale == 0 else 1.0 / (50.0 * scale)
    if max_step is not None:
        h_max = min(h_max, max_step)

    rhs = _Rhs(model)
    states = np.empty((times.size, d, d), dtype=complex)
    states[0] = rho0_m
    y = vec(rho0_m)
    for i in range(1, times.size):
        t0, t1 = times[i - 1], times[i]
        nsub = max(1, math.ceil((t1 - t0) / h_max - 1e-12))
        h = (t1 - t0) / nsub
        for j in range(nsub):
            t = t0 + j * h
            k1 = rhs(t, y)
            k2 = rhs(t + h / 2, y + (h / 2) * k1)
            k3 = rhs(t + h / 2, y + (h / 2) * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        states[i] = unvec(y, d)
        if check:
            _check_state(states[i], t1)

    obs = {}
    for name, op in (observables or {}).items():
        obs[name] = np.einsum("ij,tji->t", op.data, states).real
    return Trajectory(times=times, states=states, observables=obs)


def steady_state(model: LindbladModel, null_rtol: float = 1e-10) -> Operator:
    """Unique stationary density matrix of a time-independent model.

    Solves ``L vec(rho) = 0`` together with ``Tr rho = 1`` by least squares.
    The null-space dimension is estimated from the singular values of ``L``;
    more than one (relative) zero singular value raises
    :class:`MultiplicityError`.
    """
    if model.is_time_dependent:
        raise PreconditionError("steady_state needs a time-independent model (constant drives only)")
    d = model.dim
    L = liouvillian(model).data
    sv = np.linalg.svd(L, compute_uv=False)
    smax = sv[0] if sv.size and sv[0] > 0 else 1.0
    null_dim = int(np.sum(sv <= null_rtol * smax))
    if null_dim > 1:
        raise MultiplicityError(f"steady state is not unique: null space has dimension {null_dim}",
                                null_dim)
    a = np.vstack([L, vec(np.eye(d))[np.newaxis, :]])
    b = np.zeros(d * d + 1, dtype=complex)
    b[-1] = 1.0
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    rho = unvec(x, d)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho)
    resid = float(np.linalg.norm(L @ vec(rho)))
    if resid > 1e-10 * max(float(np.linalg.norm(L)), 1e-300):
        raise SteadyStateError(f"steady-state residual {resid:.2e} too large")
    return Operator(rho, model.h_static.dims)
