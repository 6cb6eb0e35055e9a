"""Dimensionless Zeeman + dipolar Hamiltonians for small spin clusters.

Energies are in units of the nearest-neighbour dipolar constant
D = gamma^2 hbar / r12^3, and ``alpha`` is the Zeeman splitting in the same
units.  Three dipolar forms are available:

``secular``
    b_jk (2 Iz Iz - Ix Ix - Iy Iy), the truncated form that commutes with
    total Iz.
``dipolar``
    the complete pair tensor -b_jk [3 (I_j.n)(I_k.n) - I_j.I_k] with every
    pair vector ``n`` at the same angle to the field (perpendicular by
    default).  Used for figure-style sweeps.
``full``
    the complete pair tensor built from explicit 3D coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .spin_ops import MAX_SPINS, ManyBodyOperator, single_spin_operator

MODELS = ("dipolar", "secular", "full")

_AXES = [single_spin_operator(a) for a in "xyz"]


@dataclass(frozen=True, eq=False)
class SpinSystem:
    """A cluster of spins and its normalized coupling matrix.

    Use the :meth:`ring`, :meth:`chain`, :meth:`custom` and :meth:`preset`
    constructors rather than building one directly.
    """

    n_spins: int
    geometry: str
    couplings: np.ndarray
    coords: np.ndarray | None = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        b = np.array(self.couplings, dtype=float)
        if b.shape != (self.n_spins, self.n_spins):
            raise ValueError(f"coupling matrix shape {b.shape} != ({self.n_spins}, {self.n_spins})")
        if not np.allclose(b, b.T, rtol=0, atol=1e-14):
            raise ValueError("coupling matrix must be symmetric")
        if np.any(np.diag(b) != 0):
            raise ValueError("coupling matrix must have zero diagonal")
        if self.n_spins > MAX_SPINS:
            raise ValueError(f"{self.n_spins} spins exceeds the cap of {MAX_SPINS}")
        b.setflags(write=False)
        object.__setattr__(self, "couplings", b)
        if not self.name:
            object.__setattr__(self, "name", f"{self.geometry}{self.n_spins}")

    @classmethod
    def ring(cls, n_spins: int) -> SpinSystem:
        return cls(n_spins, "ring", _coupling_matrix("ring", n_spins), coords=_ring_coords(n_spins))

    @classmethod
    def chain(cls, n_spins: int) -> SpinSystem:
        coords = np.zeros((n_spins, 3))
        coords[:, 0] = np.arange(n_spins)
        return cls(n_spins, "chain", _coupling_matrix("chain", n_spins), coords=coords)

    @classmethod
    def custom(cls, coords, name: str = "") -> SpinSystem:
        """Spins at arbitrary 3D points; distances are rescaled so the closest pair is 1."""
        xyz = _check_coords(coords)
        rho = _scaled_distances(xyz)
        with np.errstate(divide="ignore"):
            b = np.where(rho > 0, rho**-3.0, 0.0)
        return cls(len(xyz), "custom", b, coords=xyz, name=name)

    @classmethod
    def preset(cls, name: str) -> SpinSystem:
        try:
            kind, n = PRESETS[name]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
        return getattr(cls, kind)(n)

    @classmethod
    def from_file(cls, path) -> SpinSystem:
        """Read whitespace-separated ``x y z`` rows (units of the nearest-neighbour distance)."""
        path = Path(path)
        xyz = np.loadtxt(path, ndmin=2)
        if xyz.shape[1] != 3:
            raise ValueError(f"{path}: expected 3 columns (x y z), got {xyz.shape[1]}")
        return cls.custom(xyz, name=f"custom:{path}")

    def without_couplings(self) -> SpinSystem:
        """Same spins with every b_jk set to zero (positions are dropped)."""
        return SpinSystem(self.n_spins, self.geometry, np.zeros_like(self.couplings),
                          name=f"{self.name}-free")


# Named after the structures they model: XeF4 (ring4), benzene (ring6),
# apatite proton/fluorine chains (chain6, chain8).
PRESETS = {
    "chain6": ("chain", 6),
    "chain8": ("chain", 8),
    "ring4": ("ring", 4),
    "ring6": ("ring", 6),
}


def coupling_constant(geometry: str, n_spins: int, m: int, n: int) -> float:
    """Normalized dipolar coupling between sites ``m`` and ``n`` (1-based).

    Ring: [sin(pi/N) / sin(pi |m-n| / N)]^3.  Chain: 1 / |m-n|^3.
    """
    if m == n:
        raise ValueError("coupling constant undefined for m == n")
    if not (1 <= m <= n_spins and 1 <= n <= n_spins):
        raise ValueError(f"sites ({m}, {n}) out of range 1..{n_spins}")
    d = abs(m - n)
    if geometry == "ring":
        return float((np.sin(np.pi / n_spins) / np.sin(np.pi * d / n_spins)) ** 3)
    if geometry == "chain":
        return 1.0 / d**3
    raise ValueError(f"unknown geometry {geometry!r}; expected 'ring' or 'chain'")


def _coupling_matrix(geometry: str, n_spins: int) -> np.ndarray:
    b = np.zeros((n_spins, n_spins))
    for m in range(1, n_spins + 1):
        for n in range(m + 1, n_spins + 1):
            b[m - 1, n - 1] = b[n - 1, m - 1] = coupling_constant(geometry, n_spins, m, n)
    return b


def _ring_coords(n_spins: int) -> np.ndarray:
    # unit nearest-neighbour spacing, ring in the xy plane
    t = 2 * np.pi * np.arange(n_spins) / n_spins
    radius = 0.5 / np.sin(np.pi / n_spins) if n_spins > 1 else 0.0
    return np.column_stack([radius * np.cos(t), radius * np.sin(t), np.zeros(n_spins)])


def _check_coords(coords) -> np.ndarray:
    xyz = np.asarray(coords, dtype=float)
    if xyz.ndim != 2 or xyz.shape[1] != 3:
        raise ValueError(f"coordinates must have shape (N, 3), got {xyz.shape}")
    if len(xyz) < 2:
        raise ValueError("need at least two spins")
    if len(xyz) > MAX_SPINS:
        raise ValueError(f"{len(xyz)} spins exceeds the cap of {MAX_SPINS}")
    if not np.all(np.isfinite(xyz)):
        raise ValueError("coordinates must be finite")
    return xyz


def _scaled_distances(xyz: np.ndarray) -> np.ndarray:
    r = np.linalg.norm(xyz[:, None, :] - xyz[None, :, :], axis=-1)
    off = r[~np.eye(len(xyz), dtype=bool)]
    if np.any(off <= 0):
        raise ValueError("coincident spin positions")
    return r / off.min()


def _two_site(op_j: np.ndarray, j: int, op_k: np.ndarray, k: int, n_spins: int) -> np.ndarray:
    factors = [np.eye(2)] * n_spins
    factors[j], factors[k] = op_j, op_k
    out = factors[0]
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def _pair_term(tensor: np.ndarray, j: int, k: int, n_spins: int) -> np.ndarray:
    """sum_ab tensor[a, b] I_j^a I_k^b for 0-based sites j, k."""
    out = np.zeros((2**n_spins, 2**n_spins), dtype=complex)
    for a in range(3):
        for b in range(3):
            if tensor[a, b] != 0:
                out += tensor[a, b] * _two_site(_AXES[a], j, _AXES[b], k, n_spins)
    return out


def zeeman(n_spins: int, alpha: float) -> ManyBodyOperator:
    # alpha * sum_k I_k^z is diagonal: alpha * (ups - downs) / 2
    downs = np.array([bin(i).count("1") for i in range(2**n_spins)])
    return ManyBodyOperator(n_spins, np.diag(alpha * (n_spins - 2 * downs) / 2.0))


def _assemble(n_spins: int, alpha: float, tensors) -> ManyBodyOperator:
    if not np.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    h = zeeman(n_spins, alpha).matrix.copy()
    for (j, k), t in tensors:
        h += _pair_term(t, j, k, n_spins)
    return ManyBodyOperator(n_spins, h)


_SECULAR_TENSOR = np.diag([-1.0, -1.0, 2.0])


def build_secular(system: SpinSystem, alpha: float) -> ManyBodyOperator:
    """alpha sum_k Iz_k + sum_{j<k} b_jk (2 Iz_j Iz_k - Ix_j Ix_k - Iy_j Iy_k)."""
    b = system.couplings
    n = system.n_spins
    pairs = (((j, k), b[j, k] * _SECULAR_TENSOR)
             for j in range(n) for k in range(j + 1, n) if b[j, k] != 0)
    return _assemble(n, alpha, pairs)


def dipolar_tensor(direction) -> np.ndarray:
    """Pair tensor of -[3 (I_j.u)(I_k.u) - I_j.I_k] for unit vector ``u``."""
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    return -(3.0 * np.outer(u, u) - np.eye(3))


def build_uniform_dipolar(system: SpinSystem, alpha: float, theta: float = np.pi / 2) -> ManyBodyOperator:
    """Complete dipolar tensor for every pair, all pairs at angle ``theta`` to the field.

    Each pair contributes -b_jk [3 (I_j.n)(I_k.n) - I_j.I_k] with
    n = (sin theta, 0, cos theta).  At ``theta = 0`` this is minus the secular
    form; at the default ``pi/2`` it keeps the non-secular terms that matter
    when the Zeeman and dipolar energies are comparable.
    """
    t = dipolar_tensor([np.sin(theta), 0.0, np.cos(theta)])
    b = system.couplings
    n = system.n_spins
    pairs = (((j, k), b[j, k] * t) for j in range(n) for k in range(j + 1, n) if b[j, k] != 0)
    return _assemble(n, alpha, pairs)


def _field_frame(field_axis) -> np.ndarray:
    f = np.asarray(field_axis, dtype=float)
    norm = np.linalg.norm(f)
    if not norm > 0:
        raise ValueError("field axis must be a nonzero vector")
    f = f / norm
    helper = np.array([1.0, 0.0, 0.0]) if abs(f[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - f * (helper @ f)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(f, e1)
    return np.vstack([e1, e2, f])


def build_full_dipolar(coords, alpha: float, field_axis=(0.0, 0.0, 1.0)) -> ManyBodyOperator:
    """Zeeman term plus the complete dipole-dipole interaction for explicit positions.

    Distances are divided by the nearest-neighbour distance, and each pair
    j < k contributes -(1/rho^3) [3 (I_j.r)(I_k.r) - I_j.I_k] with ``r`` the
    unit vector between them, expressed in a frame whose z axis is
    ``field_axis``.
    """
    xyz = _check_coords(coords)
    xyz = xyz @ _field_frame(field_axis).T
    rho = _scaled_distances(xyz)
    n = len(xyz)
    pairs = []
    for j in range(n):
        for k in range(j + 1, n):
            pairs.append(((j, k), dipolar_tensor(xyz[k] - xyz[j]) / rho[j, k] ** 3))
    return _assemble(n, alpha, pairs)


def build_hamiltonian(system: SpinSystem, alpha: float, model: str = "dipolar") -> ManyBodyOperator:
    if model == "dipolar":
        return build_uniform_dipolar(system, alpha)
    if model == "secular":
        return build_secular(system, alpha)
    if model == "full":
        if system.coords is None:
            raise ValueError(f"system {system.name!r} has no coordinates for the full model")
        return build_full_dipolar(system.coords, alpha)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def secular_projection(op: ManyBodyOperator) -> tuple[np.ndarray, np.ndarray]:
    """Hilbert-Schmidt coefficients of ``op`` on Iz_j Iz_k and the flip-flop terms.

    Returns ``(zz, ff)``, upper-triangular N x N arrays with
    zz[j, k] the coefficient of Iz_j Iz_k and ff[j, k] that of
    I+_j I-_k + I-_j I+_k.
    """
    n = op.n_spins
    m = op.matrix
    zz = np.zeros((n, n))
    ff = np.zeros((n, n))
    plus, minus, z = (single_spin_operator(a) for a in ("plus", "minus", "z"))
    for j in range(n):
        for k in range(j + 1, n):
            o_zz = _two_site(z, j, z, k, n)
            o_ff = _two_site(plus, j, minus, k, n) + _two_site(minus, j, plus, k, n)
            zz[j, k] = np.real(np.vdot(o_zz, m)) / np.real(np.vdot(o_zz, o_zz))
            ff[j, k] = np.real(np.vdot(o_ff, m)) / np.real(np.vdot(o_ff, o_ff))
    return zz, ff


def secular_part(op: ManyBodyOperator) -> ManyBodyOperator:
    """Rebuild the operator from its :func:`secular_projection` coefficients."""
    n = op.n_spins
    zz, ff = secular_projection(op)
    plus, minus, z = (single_spin_operator(a) for a in ("plus", "minus", "z"))
    out = np.zeros_like(op.matrix)
    for j in range(n):
        for k in range(j + 1, n):
            out += zz[j, k] * _two_site(z, j, z, k, n)
            out += ff[j, k] * (_two_site(plus, j, minus, k, n) + _two_site(minus, j, plus, k, n))
    return ManyBodyOperator(n, out)
