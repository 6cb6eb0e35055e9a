"""
Where entanglement appears, in dimensionless and laboratory units
=================================================================
"""
from negtemp import PRESETS, PhysicalParams, SpinSystem, entanglement_thresholds
from negtemp.scan import estimate_entanglement_temperature, r12_for_local_field, temperature_from_beta

results = {}
for alpha in (0.5, 1.0, 1.5):
    for name in sorted(PRESETS):
        r = entanglement_thresholds(SpinSystem.preset(name), alpha)
        results[name, alpha] = r
        print(f"alpha={alpha:3}  {name:7s} beta*+ = {r.beta_star_positive:.5f}  "
              f"beta*- = {r.beta_star_negative:.5f}")

# alpha moves the positive boundary far more than the negative one
for name in sorted(PRESETS):
    lo, hi = results[name, 0.5], results[name, 1.5]
    print(f"{name}: beta*+ ratio {lo.beta_star_positive / hi.beta_star_positive:.3f}, "
          f"beta*- ratio {lo.beta_star_negative / hi.beta_star_negative:.3f}")

# rough scale: hbar * omega_d / k
for f in (1e4, 1e5):
    print(f"omega_d = {f:.0e} Hz -> T ~ {estimate_entanglement_temperature(f) * 1e6:.2f} uK")

# fluorine in an ~8 G local field
gamma = 4.0025  # kHz/G
params = PhysicalParams(gamma, r12_for_local_field(gamma, 8.0))
r = results["chain6", 1.0]
print(f"fluorine, r12 = {params.r12_angstrom:.3f} A, D = {params.dipolar_frequency:.4g} rad/s")
print(f"  T+ = {temperature_from_beta(r.beta_star_positive, params) * 1e6:.3f} uK")
print(f"  T- = {temperature_from_beta(r.beta_star_negative, params) * 1e6:.3f} uK")
