"""Two-spin reduced states and the Wootters concurrence."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import SpinSystem, build_hamiltonian
from .spin_ops import ManyBodyOperator, NumericalError, Spectrum, hermitian_eigendecomposition
from .thermo import density_matrix, thermal_state

STATE_TOL = 1e-10
IMAG_TOL = 1e-8

_SIGMA_Y = np.array([[0, -1j], [1j, 0]])
SIGMA_YY = np.kron(_SIGMA_Y, _SIGMA_Y)


@dataclass(frozen=True)
class TwoSpinState:
    """4x4 density matrix of sites ``pair``; the lower site is the more significant bit."""

    matrix: np.ndarray
    pair: tuple[int, int] = (1, 2)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"two-spin state must be 4x4, got {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > STATE_TOL:
            raise ValueError(f"two-spin state not Hermitian (deviation {herm:.2e})")
        tr = np.trace(m).real
        if abs(tr - 1) > STATE_TOL:
            raise ValueError(f"two-spin state trace {tr!r} != 1")
        low = np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min()
        if low < -STATE_TOL:
            raise ValueError(f"two-spin state has negative eigenvalue {low:.2e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "pair", tuple(self.pair))


@dataclass(frozen=True)
class ConcurrencePoint:
    beta: float
    alpha: float
    concurrence: float
    q_value: float


def _check_pair(pair, n_spins: int) -> tuple[int, int]:
    j, k = pair
    if j == k:
        raise ValueError(f"pair sites must differ, got ({j}, {k})")
    for s in (j, k):
        if not 1 <= s <= n_spins:
            raise ValueError(f"site {s} out of range 1..{n_spins}")
    return int(j), int(k)


def _axis_order(pair, n_spins: int) -> list[int]:
    # kept sites first, lower site most significant, then the traced-out sites
    j, k = sorted(pair)
    return [j - 1, k - 1] + [s for s in range(n_spins) if s not in (j - 1, k - 1)]


def partial_trace(rho: ManyBodyOperator, keep=(1, 2)) -> TwoSpinState:
    """Trace out every spin except the two in ``keep``."""
    n = rho.n_spins
    j, k = _check_pair(keep, n)
    order = _axis_order((j, k), n)
    t = rho.matrix.reshape([2] * (2 * n)).transpose(order + [n + a for a in order])
    rest = 2 ** (n - 2)
    t = t.reshape(4, rest, 4, rest)
    return TwoSpinState(np.einsum("arbr->ab", t), (min(j, k), max(j, k)))


def reduced_eigenprojectors(spectrum: Spectrum, pair=(1, 2)) -> np.ndarray:
    """Two-spin reductions of every eigenprojector, shape (dim, 4, 4).

    The reduced thermal state is then ``einsum('i,iab->ab', p, result)``,
    which avoids forming the full density matrix at every temperature.
    """
    n = spectrum.n_spins
    j, k = _check_pair(pair, n)
    v = spectrum.eigenvectors.T.reshape([spectrum.dim] + [2] * n)
    v = v.transpose([0] + [1 + a for a in _axis_order((j, k), n)])
    v = v.reshape(spectrum.dim, 4, -1)
    return np.einsum("iar,ibr->iab", v, v.conj())


def spin_flip(rho12) -> np.ndarray:
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    m = rho12.matrix if isinstance(rho12, TwoSpinState) else np.asarray(rho12)
    return SIGMA_YY @ m.conj() @ SIGMA_YY


def _lambdas(rho12) -> np.ndarray:
    m = rho12.matrix if isinstance(rho12, TwoSpinState) else np.asarray(rho12)
    mu = np.linalg.eigvals(m @ spin_flip(m))
    if np.max(np.abs(mu.imag)) > IMAG_TOL:
        raise NumericalError(
            f"spin-flipped product has complex eigenvalues (max imag {np.max(np.abs(mu.imag)):.2e})"
        )
    mu = mu.real
    if mu.min() < -STATE_TOL:
        raise NumericalError(f"spin-flipped product has negative eigenvalue {mu.min():.2e}")
    return np.sort(np.sqrt(np.clip(mu, 0.0, None)))[::-1]


def concurrence_q(rho12) -> float:
    """lambda1 - lambda2 - lambda3 - lambda4 before clamping; negative when separable."""
    lam = _lambdas(rho12)
    return float(lam[0] - lam[1:].sum())


def concurrence(rho12) -> float:
    return max(concurrence_q(rho12), 0.0)


def thermal_concurrence(system: SpinSystem, alpha: float, beta: float, pair=(1, 2),
                        model: str = "dipolar") -> ConcurrencePoint:
    """Concurrence of ``pair`` in the canonical state of ``system`` at (alpha, beta)."""
    spectrum = hermitian_eigendecomposition(build_hamiltonian(system, alpha, model))
    rho = density_matrix(thermal_state(spectrum, beta))
    q = concurrence_q(partial_trace(rho, pair))
    return ConcurrencePoint(float(beta), float(alpha), max(q, 0.0), q)
