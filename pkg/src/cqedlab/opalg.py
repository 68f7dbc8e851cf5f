"""
Dense complex operator algebra.

Everything downstream (circuit Hamiltonians, jump operators, density
matrices, superoperators) is carried as an :class:`Operator`: an immutable
square complex matrix plus the list of subsystem dimensions it acts on.

Two-level conventions: index 0 is the ground state ``|g>`` and index 1 the
excited state ``|e>``, so ``destroy(2)`` coincides with ``sigmam()``.
``sigmax/sigmay/sigmaz`` are the Pauli matrices as matrices, i.e.
``sigmaz() == diag(1, -1)``.  The physical inversion ``|e><e| - |g><g|`` is
therefore ``-sigmaz()`` in this ordering; builders that need it compute it
from ``sigmap`` and ``sigmam`` explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from numbers import Number

import numpy as np

from .errors import CapacityError, DimensionError, SymmetryError

__all__ = [
    "MAX_DIM", "Operator", "EigenSystem",
    "destroy", "create", "num", "identity", "qeye",
    "sigmax", "sigmay", "sigmaz", "sigmap", "sigmam",
    "basis", "projector", "ket2dm", "kron", "tensor",
    "commutator", "eig_hermitian", "expect",
]

#: Default ceiling on the dimension produced by :func:`kron`.
MAX_DIM = 4096


@dataclass(frozen=True, eq=False)
class Operator:
    """Immutable square complex matrix with subsystem dimensions.

    Parameters
    ----------
    data : array_like
        Square matrix. Copied and stored read-only as complex128.
    dims : tuple of int, optional
        Subsystem dimensions whose product is the matrix size. Defaults to
        a single subsystem.
    """

    data: np.ndarray
    dims: tuple = None

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex, copy=True)
        if arr.ndim == 0:
            arr = arr.reshape(1, 1)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"operator must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise DimensionError("operator dimension must be >= 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("operator entries must be finite")
        arr.setflags(write=False)
        dims = (arr.shape[0],) if self.dims is None else tuple(int(d) for d in self.dims)
        if int(np.prod(dims)) != arr.shape[0]:
            raise DimensionError(f"dims {dims} do not multiply to {arr.shape[0]}")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self):
        return self.data.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data
        return self.data.astype(dtype)

    def __repr__(self):
        return f"Operator(dim={self.dim}, dims={self.dims})\n{self.data!r}"

    def dag(self) -> "Operator":
        return Operator(self.data.conj().T, self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def asymmetry(self) -> float:
        """Largest entry of ``|A - A^dagger|``."""
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def is_hermitian(self, tol: float = 1e-9) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.data))))
        return self.asymmetry() <= tol * scale

    def _other(self, other):
        if isinstance(other, Operator):
            if other.dim != self.dim:
                raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other.data
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Operator(self.data + o, self.dims)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Operator(self.data - o, self.dims)

    def __neg__(self):
        return Operator(-self.data, self.dims)

    def __mul__(self, other):
        if isinstance(other, Number):
            return Operator(self.data * other, self.dims)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return Operator(self.data / other, self.dims)
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Operator):
            o = self._other(other)
            return Operator(self.data @ o, self.dims)
        vec = np.asarray(other)
        if vec.shape[0] != self.dim:
            raise DimensionError(f"cannot apply dim-{self.dim} operator to shape {vec.shape}")
        return self.data @ vec


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        yield self.values
        yield self.vectors


def destroy(n_levels: int) -> Operator:
    """Truncated annihilation operator with ``a[k, k+1] = sqrt(k+1)``.

    The truncation drops the column that would map out of the space, so
    ``[a, a^dagger]`` is the identity except for ``-(n_levels-1)`` in the
    last diagonal entry.
    """
    if int(n_levels) != n_levels or n_levels < 2:
        raise DimensionError(f"n_levels must be an integer >= 2, got {n_levels}")
    n = int(n_levels)
    return Operator(np.diag(np.sqrt(np.arange(1, n, dtype=float)), k=1))


def create(n_levels: int) -> Operator:
    return destroy(n_levels).dag()


def num(n_levels: int) -> Operator:
    return Operator(np.diag(np.arange(n_levels, dtype=float)))


def identity(n: int) -> Operator:
    if int(n) != n or n < 1:
        raise DimensionError(f"identity dimension must be >= 1, got {n}")
    return Operator(np.eye(int(n)))


qeye = identity


def sigmax() -> Operator:
    return Operator([[0, 1], [1, 0]])


def sigmay() -> Operator:
    return Operator([[0, -1j], [1j, 0]])


def sigmaz() -> Operator:
    return Operator([[1, 0], [0, -1]])


def sigmam() -> Operator:
    """Lowering operator ``|g><e|`` (ground is index 0)."""
    return Operator([[0, 1], [0, 0]])


def sigmap() -> Operator:
    """Raising operator ``|e><g|``."""
    return Operator([[0, 0], [1, 0]])


def basis(n: int, k: int) -> np.ndarray:
    """Column ket ``|k>`` in an ``n``-dimensional space."""
    if not 0 <= k < n:
        raise DimensionError(f"basis index {k} out of range for dimension {n}")
    v = np.zeros(n, dtype=complex)
    v[k] = 1.0
    return v


def projector(n: int, i: int, j: int | None = None) -> Operator:
    """``|i><j|`` (``|i><i|`` when ``j`` is omitted)."""
    j = i if j is None else j
    return Operator(np.outer(basis(n, i), basis(n, j)))


def ket2dm(psi) -> Operator:
    psi = np.asarray(psi, dtype=complex).ravel()
    return Operator(np.outer(psi, psi.conj()))


def kron(a: Operator, b: Operator, max_dim: int = MAX_DIM) -> Operator:
    """Kronecker product with ``a`` as the slow (left) index."""
    d = a.dim * b.dim
    if d > max_dim:
        raise CapacityError(f"kron dimension {a.dim}x{b.dim}={d} exceeds maximum {max_dim}")
    return Operator(np.kron(a.data, b.data), a.dims + b.dims)


def tensor(*ops: Operator, max_dim: int = MAX_DIM) -> Operator:
    if not ops:
        raise DimensionError("tensor needs at least one operator")
    return reduce(lambda x, y: kron(x, y, max_dim=max_dim), ops)


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    # largest-magnitude component of each column made real positive
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    return vectors * (np.abs(lead) / lead)[np.newaxis, :]


def eig_hermitian(h: Operator, rtol: float = 1e-9) -> EigenSystem:
    """Eigendecomposition of a Hermitian operator.

    Eigenvalues come back ascending; each eigenvector is rephased so its
    largest-magnitude component is real and positive, which keeps outputs
    reproducible across runs.

    Raises
    ------
    SymmetryError
        If ``max|h - h^dagger| > rtol * max|h|``.
    """
    data = h.data if isinstance(h, Operator) else np.asarray(h, dtype=complex)
    asym = float(np.max(np.abs(data - data.conj().T)))
    scale = float(np.max(np.abs(data)))
    if asym > rtol * scale:
        raise SymmetryError(f"matrix is not Hermitian: max asymmetry {asym:.3e}", asym)
    herm = 0.5 * (data + data.conj().T)
    values, vectors = np.linalg.eigh(herm)
    return EigenSystem(values, _fix_phases(vectors))


def expect(op: Operator, rho: Operator) -> complex:
    """``Tr(op @ rho)``."""
    if op.dim != rho.dim:
        raise DimensionError(f"dimension mismatch: {op.dim} vs {rho.dim}")
    return complex(np.einsum("ij,ji->", op.data, rho.data))
