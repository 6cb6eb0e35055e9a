"""Thermodynamics and pair entanglement of small dipolar spin-1/2 clusters
at positive and negative spin temperature."""
from .entanglement import (
    ConcurrencePoint,
    TwoSpinState,
    concurrence,
    concurrence_q,
    partial_trace,
    spin_flip,
    thermal_concurrence,
)
from .hamiltonian import (
    PRESETS,
    SpinSystem,
    build_full_dipolar,
    build_hamiltonian,
    build_secular,
    build_uniform_dipolar,
    coupling_constant,
)
from .scan import (
    PhysicalParams,
    SweepGrid,
    ThermalModel,
    ThresholdResult,
    dimensionless_from_physical,
    entanglement_thresholds,
    estimate_entanglement_temperature,
    find_threshold,
    s_vs_e_curve,
    sweep_concurrence,
    sweep_thermo,
)
from .spin_ops import (
    ManyBodyOperator,
    NumericalError,
    Spectrum,
    embed,
    hermitian_eigendecomposition,
    single_spin_operator,
)
from .thermo import (
    ThermalState,
    ThermoPoint,
    density_matrix,
    energy,
    entropy,
    heat_capacity,
    thermal_state,
)

__version__ = "0.1.0"
