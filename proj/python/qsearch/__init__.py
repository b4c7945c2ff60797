"""Continuous-time quantum search on the two-level invariant subspace."""

from ._core import (
    Couplings,
    DegenerateDynamics,
    QSearchError,
    SearchParams,
    build_farhi_gutmann,
    build_generalized,
    classify,
    decompose_interaction,
    energy_spread,
    evolve,
    find_first_maximum,
    integrate_reference,
    mean_energy,
    pauli_decompose,
    recompose_from_interaction,
    running_time,
    running_time_equal_coupling,
    running_time_type31,
    running_time_type4,
    speed_limit_bound,
    success_probability,
    success_probability_at_T,
    sweep_scaling,
)

__all__ = [
    "Couplings",
    "DegenerateDynamics",
    "QSearchError",
    "SearchParams",
    "build_farhi_gutmann",
    "build_generalized",
    "classify",
    "decompose_interaction",
    "energy_spread",
    "evolve",
    "find_first_maximum",
    "integrate_reference",
    "mean_energy",
    "pauli_decompose",
    "recompose_from_interaction",
    "running_time",
    "running_time_equal_coupling",
    "running_time_type31",
    "running_time_type4",
    "speed_limit_bound",
    "success_probability",
    "success_probability_at_T",
    "sweep_scaling",
]
