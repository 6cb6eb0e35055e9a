"""
Spin operators and dipolar Hamiltonians
=======================================

Builds the two-spin Hamiltonian by hand, then the preset clusters, and
compares the truncated (secular) and complete dipolar forms.
"""
import numpy as np

from negtemp import (
    SpinSystem,
    build_full_dipolar,
    build_secular,
    build_uniform_dipolar,
    embed,
    hermitian_eigendecomposition,
    single_spin_operator,
)
from negtemp.hamiltonian import secular_part

# Single-site operators; spin up is basis index 0
iz = single_spin_operator("z")
print("I_z =\n", iz.real)

# I_z on the second of two spins
print("I_z(site 2, N=2) diagonal:", np.diag(embed(iz, 2, 2).matrix).real)

# Two spins, alpha = 1: levels -1, -0.5, 0, 1.5
pair = SpinSystem.chain(2)
spectrum = hermitian_eigendecomposition(build_secular(pair, 1.0))
print("two-spin secular levels:", spectrum.eigenvalues.round(12))
print("ground state amplitudes:", spectrum.eigenvectors[:, 0].round(6))

# Normalized couplings of the presets
for name in ("chain6", "ring4"):
    s = SpinSystem.preset(name)
    print(f"{name} couplings b_1k:", s.couplings[0].round(6))

# The complete tensor for pairs perpendicular to the field keeps terms that
# change total I_z; its secular part is half the secular form.
ring = SpinSystem.ring(4)
full = build_uniform_dipolar(ring, 0.0)
sec = build_secular(ring, 0.0)
print("max |secular part - sec/2|:", np.abs(secular_part(full).matrix - 0.5 * sec.matrix).max())

# Explicit coordinates: spins at the magic angle have no secular coupling
theta = np.arccos(1 / np.sqrt(3))
h = build_full_dipolar([[0, 0, 0], [np.sin(theta), 0, np.cos(theta)]], 0.0)
print("magic-angle secular part norm:", np.abs(secular_part(h).matrix).max())
