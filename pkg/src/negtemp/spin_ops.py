"""Spin-1/2 operators on the 2^N dimensional product space.

Basis convention: site 1 is the most significant bit of the state index and
spin up maps to bit value 0, so ``|up, down>`` of two spins is index 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_SPINS = 12
HERMITIAN_TOL = 1e-12

_SINGLE = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex) / 2,
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex) / 2,
    "z": np.array([[1, 0], [0, -1]], dtype=complex) / 2,
    "plus": np.array([[0, 1], [0, 0]], dtype=complex),
    "minus": np.array([[0, 0], [1, 0]], dtype=complex),
}


class NumericalError(RuntimeError):
    """A numerical routine produced a result that violates its contract."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ManyBodyOperator:
    """Dense operator acting on ``n_spins`` spin-1/2 sites."""

    n_spins: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.n_spins < 1:
            raise ValueError(f"n_spins must be positive, got {self.n_spins}")
        m = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.n_spins
        if m.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {m.shape} does not match 2^{self.n_spins} = {dim}"
            )
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return 2**self.n_spins

    def hermiticity_error(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m - m.conj().T)))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_error() <= tol

    def __add__(self, other: ManyBodyOperator) -> ManyBodyOperator:
        _check_same_size(self, other)
        return ManyBodyOperator(self.n_spins, self.matrix + other.matrix)

    def __sub__(self, other: ManyBodyOperator) -> ManyBodyOperator:
        _check_same_size(self, other)
        return ManyBodyOperator(self.n_spins, self.matrix - other.matrix)

    def __matmul__(self, other: ManyBodyOperator) -> ManyBodyOperator:
        _check_same_size(self, other)
        return ManyBodyOperator(self.n_spins, self.matrix @ other.matrix)

    def __mul__(self, scalar) -> ManyBodyOperator:
        return ManyBodyOperator(self.n_spins, scalar * self.matrix)

    __rmul__ = __mul__

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


def _check_same_size(a: ManyBodyOperator, b: ManyBodyOperator) -> None:
    if a.n_spins != b.n_spins:
        raise ValueError(f"operator sizes differ: {a.n_spins} vs {b.n_spins} spins")


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    n_spins: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _frozen(np.asarray(self.eigenvalues, float)))
        object.__setattr__(self, "eigenvectors", _frozen(np.asarray(self.eigenvectors, complex)))

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def single_spin_operator(axis: str) -> np.ndarray:
    """Return the 2x2 spin-1/2 operator for ``axis`` in x, y, z, plus, minus.

    ``x``, ``y``, ``z`` are half the Pauli matrices; ``plus`` and ``minus`` are
    the raising and lowering operators ``I_x +/- i I_y``.
    """
    try:
        return _SINGLE[axis].copy()
    except KeyError:
        raise ValueError(
            f"unknown spin axis {axis!r}; expected one of {sorted(_SINGLE)}"
        ) from None


def embed(op: np.ndarray, site: int, n_spins: int, max_spins: int = MAX_SPINS) -> ManyBodyOperator:
    """Place a single-site operator on ``site`` (1-based) of an ``n_spins`` system."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (2, 2):
        raise ValueError(f"single-site operator must be 2x2, got {op.shape}")
    if n_spins > max_spins:
        raise ValueError(f"{n_spins} spins exceeds the cap of {max_spins}")
    if not 1 <= site <= n_spins:
        raise ValueError(f"site {site} out of range 1..{n_spins}")
    left = np.eye(2 ** (site - 1))
    right = np.eye(2 ** (n_spins - site))
    return ManyBodyOperator(n_spins, np.kron(np.kron(left, op), right))


def site_operators(n_spins: int) -> dict[str, list[np.ndarray]]:
    """Embedded x, y, z operators for every site, as plain arrays."""
    return {
        axis: [embed(_SINGLE[axis], k, n_spins).matrix for k in range(1, n_spins + 1)]
        for axis in "xyz"
    }


def total_spin_z(n_spins: int) -> ManyBodyOperator:
    # diagonal: (number of up spins - number of down spins) / 2
    idx = np.arange(2**n_spins)
    downs = np.array([bin(i).count("1") for i in idx])
    return ManyBodyOperator(n_spins, np.diag((n_spins - 2 * downs) / 2.0))


def hermitian_eigendecomposition(op: ManyBodyOperator, tol: float = HERMITIAN_TOL) -> Spectrum:
    """Diagonalize a Hermitian operator.

    Raises
    ------
    ValueError
        If ``op`` deviates from Hermiticity by more than ``tol``.
    NumericalError
        If LAPACK fails to converge or returns non-finite values.
    """
    err = op.hermiticity_error()
    if not err <= tol:
        raise ValueError(f"operator is not Hermitian (max |M - M^H| = {err:.3e})")
    m = op.matrix
    # symmetrize so the solver sees an exactly Hermitian matrix
    m = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
        raise NumericalError("eigensolver returned non-finite values")
    return Spectrum(op.n_spins, w, v)
