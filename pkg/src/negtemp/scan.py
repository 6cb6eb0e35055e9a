"""Temperature sweeps, entanglement-boundary search and physical units."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .entanglement import ConcurrencePoint, concurrence_q, reduced_eigenprojectors
from .hamiltonian import SpinSystem, build_hamiltonian
from .spin_ops import NumericalError, hermitian_eigendecomposition
from .thermo import ThermoPoint, thermal_state, thermo_point

# CODATA 2018 exact / recommended values
HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
HBAR_CGS = HBAR * 1e7  # erg s

DEFAULT_ALPHAS = (0.5, 1.0, 1.5)
THRESHOLD_RANGE = (0.1, 50.0)
THRESHOLD_POINTS = 200


@dataclass(frozen=True)
class SweepGrid:
    beta_min: float
    beta_max: float
    n_points: int

    def __post_init__(self):
        if not (np.isfinite(self.beta_min) and np.isfinite(self.beta_max)):
            raise ValueError("grid bounds must be finite")
        if not self.beta_min < self.beta_max:
            raise ValueError(f"beta_min {self.beta_min} must be below beta_max {self.beta_max}")
        if self.n_points < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.n_points}")

    @property
    def betas(self) -> np.ndarray:
        b = np.linspace(self.beta_min, self.beta_max, self.n_points)
        if self.beta_min == -self.beta_max:
            # exact mirror pairs (and an exact 0 for odd counts)
            b = 0.5 * (b - b[::-1])
        return b

    @property
    def step(self) -> float:
        return (self.beta_max - self.beta_min) / (self.n_points - 1)


DEFAULT_GRID = SweepGrid(-4.0, 4.0, 801)


class EntropyEnergyPoint(NamedTuple):
    energy: float
    entropy: float
    beta: float


class ThermalModel:
    """One diagonalized Hamiltonian, reused for any number of temperatures.

    Holds the spectrum and, lazily, the two-spin reductions of every
    eigenprojector for ``pair``; both are read-only, so one instance can be
    shared between worker threads.
    """

    def __init__(self, system: SpinSystem, alpha: float, model: str = "dipolar", pair=(1, 2)):
        self.system = system
        self.alpha = float(alpha)
        self.model = model
        self.pair = tuple(pair)
        self.spectrum = hermitian_eigendecomposition(build_hamiltonian(system, alpha, model))

    @cached_property
    def _projectors(self) -> np.ndarray:
        return reduced_eigenprojectors(self.spectrum, self.pair)

    def thermo(self, beta: float) -> ThermoPoint:
        return thermo_point(self.spectrum, beta)

    def reduced_state(self, beta: float) -> np.ndarray:
        p = thermal_state(self.spectrum, beta).populations
        rho = np.einsum("i,iab->ab", p, self._projectors)
        return 0.5 * (rho + rho.conj().T)

    def q(self, beta: float) -> float:
        return concurrence_q(self.reduced_state(beta))

    def concurrence(self, beta: float) -> ConcurrencePoint:
        q = self.q(beta)
        return ConcurrencePoint(float(beta), self.alpha, max(q, 0.0), q)


def _map(fn, betas, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, betas))
    return [fn(b) for b in betas]


def sweep_thermo(system: SpinSystem, alpha: float, grid: SweepGrid = DEFAULT_GRID,
                 model: str = "dipolar", workers: int | None = None) -> list[ThermoPoint]:
    tm = ThermalModel(system, alpha, model)
    return _map(tm.thermo, grid.betas, workers)


def sweep_concurrence(system: SpinSystem, alpha: float, grid: SweepGrid = DEFAULT_GRID,
                      pair=(1, 2), model: str = "dipolar",
                      workers: int | None = None) -> list[ConcurrencePoint]:
    tm = ThermalModel(system, alpha, model, pair)
    return _map(tm.concurrence, grid.betas, workers)


def s_vs_e_curve(system: SpinSystem, alpha: float, grid: SweepGrid = DEFAULT_GRID,
                 model: str = "dipolar") -> list[EntropyEnergyPoint]:
    """Entropy against energy, parametrized by beta (ascending)."""
    return [EntropyEnergyPoint(p.energy, p.entropy, p.beta)
            for p in sweep_thermo(system, alpha, grid, model)]


@dataclass(frozen=True)
class Boundary:
    """Where q(beta) first turns positive on one side of beta = 0.

    ``beta_star`` is None when no sign change was found in the search range,
    i.e. the pair stays separable on that side.
    """

    sign: int
    beta_star: float | None
    bracket_width: float
    q_at_root: float

    @property
    def entangled(self) -> bool:
        return self.beta_star is not None


@dataclass(frozen=True)
class ThresholdResult:
    alpha: float
    beta_star_positive: float | None
    beta_star_negative: float | None
    bracket_width: float
    system: str = ""


def _bisect(f, lo: float, hi: float, f_lo: float, tol: float, max_iter: int = 200):
    # invariant: sign(f(lo)) == sign(f_lo) != sign(f(hi))
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid, 0.0
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi - lo


def find_threshold(system: SpinSystem, alpha: float, sign: int, pair=(1, 2),
                   model: str = "dipolar", beta_range=THRESHOLD_RANGE,
                   n_coarse: int = THRESHOLD_POINTS, tol: float = 1e-10,
                   q_tol: float = 1e-12, thermal: ThermalModel | None = None) -> Boundary:
    """Locate the entanglement boundary for beta of the given ``sign``.

    |beta| is scanned outward on a geometric grid for the first point where
    q(beta) = lambda1 - lambda2 - lambda3 - lambda4 becomes non-negative; the
    bracketing cell is then bisected in |beta| down to ``tol``.  Grid values
    of q within ``q_tol`` of zero from above count as separable, so that
    roundoff near a product ground state is not mistaken for a crossing.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    tm = thermal or ThermalModel(system, alpha, model, pair)
    f = lambda mag: tm.q(sign * mag)  # noqa: E731
    mags = np.geomspace(beta_range[0], beta_range[1], n_coarse)
    qs = np.array([f(m) for m in mags])
    if not np.all(np.isfinite(qs)):
        raise NumericalError("non-finite q during threshold scan")
    if qs[0] > q_tol:
        raise NumericalError(
            f"q = {qs[0]:.3g} already non-negative at |beta| = {mags[0]}; lower the search start"
        )
    hits = np.nonzero(qs > q_tol)[0]
    if len(hits) == 0:
        return Boundary(sign, None, float("nan"), float(qs[-1]))
    i = hits[0]
    root, width = _bisect(f, mags[i - 1], mags[i], qs[i - 1], tol)
    return Boundary(sign, sign * float(root), float(width), f(root))


def entanglement_thresholds(system: SpinSystem, alpha: float, pair=(1, 2),
                            model: str = "dipolar", **kwargs) -> ThresholdResult:
    tm = ThermalModel(system, alpha, model, pair)
    pos = find_threshold(system, alpha, +1, thermal=tm, **kwargs)
    neg = find_threshold(system, alpha, -1, thermal=tm, **kwargs)
    widths = [b.bracket_width for b in (pos, neg) if b.entangled]
    return ThresholdResult(float(alpha), pos.beta_star, neg.beta_star,
                           max(widths) if widths else float("nan"), system.name)


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory parameters of a homonuclear spin system.

    ``gamma`` in kHz/G (cycles, not radians), ``r12_angstrom`` the
    nearest-neighbour distance, ``field_gauss`` the applied field and
    ``temperature_kelvin`` the signed spin temperature.
    """

    gamma: float
    r12_angstrom: float
    field_gauss: float = 0.0
    temperature_kelvin: float = float("inf")

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.r12_angstrom > 0:
            raise ValueError(f"r12 must be positive, got {self.r12_angstrom}")

    @property
    def gamma_rad(self) -> float:
        """Gyromagnetic ratio in rad / (s G)."""
        return 2 * np.pi * self.gamma * 1e3

    @property
    def dipolar_frequency(self) -> float:
        """D = gamma^2 hbar / r12^3 in rad/s (Gaussian units)."""
        r_cm = self.r12_angstrom * 1e-8
        return self.gamma_rad**2 * HBAR_CGS / r_cm**3

    @property
    def local_field_gauss(self) -> float:
        """Dipolar field of one neighbour, D / gamma."""
        return self.dipolar_frequency / self.gamma_rad


def dimensionless_from_physical(p: PhysicalParams) -> tuple[float, float]:
    """Return (alpha, beta) = (gamma H0 / D, hbar D / k T)."""
    if p.temperature_kelvin == 0:
        raise ValueError("temperature must be nonzero")
    d = p.dipolar_frequency
    alpha = p.gamma_rad * p.field_gauss / d
    beta = HBAR * d / (K_B * p.temperature_kelvin)
    return float(alpha), float(beta)


def temperature_from_beta(beta: float, p: PhysicalParams) -> float:
    """Signed spin temperature in kelvin for dimensionless ``beta``; inf at beta = 0."""
    if beta == 0:
        return float("inf")
    return HBAR * p.dipolar_frequency / (K_B * beta)


def r12_for_local_field(gamma: float, local_field_gauss: float) -> float:
    """Nearest-neighbour distance in angstrom whose dipolar field gamma hbar / r^3 is given."""
    gamma_rad = 2 * np.pi * gamma * 1e3
    return float((gamma_rad * HBAR_CGS / local_field_gauss) ** (1 / 3) * 1e8)


def estimate_entanglement_temperature(omega_d_hz: float) -> float:
    """Order-of-magnitude temperature hbar * 2 pi * omega_d / k, in kelvin."""
    if not omega_d_hz > 0:
        raise ValueError(f"omega_d must be positive, got {omega_d_hz}")
    return HBAR * 2 * np.pi * omega_d_hz / K_B
