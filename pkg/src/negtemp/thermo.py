"""Canonical ensemble at any real inverse temperature, positive or negative."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spin_ops import ManyBodyOperator, Spectrum

POPULATION_FLOOR = 1e-300


@dataclass(frozen=True)
class ThermalState:
    """Boltzmann populations of the eigenstates of ``spectrum`` at ``beta``.

    ``log_norm`` is log Z, kept in log form so that |beta| in the hundreds
    never overflows.
    """

    beta: float
    populations: np.ndarray
    log_populations: np.ndarray
    spectrum: Spectrum
    log_norm: float

    @property
    def n_spins(self) -> int:
        return self.spectrum.n_spins


@dataclass(frozen=True)
class ThermoPoint:
    beta: float
    energy: float
    entropy: float
    heat_capacity: float


def thermal_state(spectrum: Spectrum, beta: float) -> ThermalState:
    """Populations p_i = exp(-beta e_i) / Z, computed with a log-sum-exp shift."""
    beta = float(beta)
    if not np.isfinite(beta):
        raise ValueError(f"beta must be finite, got {beta}")
    eps = spectrum.eigenvalues
    if np.any(np.isnan(eps)):
        raise ValueError("spectrum contains NaN")
    x = -beta * eps
    shift = x.max()  # = -min(beta * eps)
    log_norm = shift + np.log(np.exp(x - shift).sum())
    logp = x - log_norm
    p = np.exp(logp)
    for a in (p, logp):
        a.setflags(write=False)
    return ThermalState(beta, p, logp, spectrum, float(log_norm))


def energy(state: ThermalState) -> float:
    return float(state.populations @ state.spectrum.eigenvalues)


def entropy(state: ThermalState) -> float:
    """-sum p ln p, with populations under ``POPULATION_FLOOR`` counted as zero."""
    p = state.populations
    keep = p >= POPULATION_FLOOR
    return float(-(p[keep] @ state.log_populations[keep]))


def heat_capacity(state: ThermalState) -> float:
    """beta^2 times the energy variance (units of k)."""
    if state.beta == 0.0:
        return 0.0
    eps = state.spectrum.eigenvalues
    p = state.populations
    dev = eps - p @ eps
    return float(state.beta**2 * (p @ dev**2))


def density_matrix(state: ThermalState) -> ManyBodyOperator:
    v = state.spectrum.eigenvectors
    rho = (v * state.populations) @ v.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return ManyBodyOperator(state.n_spins, rho)


def thermo_point(spectrum: Spectrum, beta: float) -> ThermoPoint:
    s = thermal_state(spectrum, beta)
    return ThermoPoint(s.beta, energy(s), entropy(s), heat_capacity(s))
