"""Python face of the sixth-order dispersive wave laboratory."""

from ._core import (
    canonical_theta,
    constant_sweep,
    default_b0,
    dispersion_symbol,
    duhamel_integral,
    evolve,
    grid_points,
    l_value,
    linear_evolve,
    linear_state,
    multilinear_functional,
    nonlinear_term,
    picard_gaps,
    poly_level_bound,
    reduction_residual_zero,
    resonance_closed_form,
    resonance_from_l,
    two_center_bound,
    v2_multiplier,
)

__all__ = [
    "canonical_theta",
    "constant_sweep",
    "default_b0",
    "dispersion_symbol",
    "duhamel_integral",
    "evolve",
    "grid_points",
    "l_value",
    "linear_evolve",
    "linear_state",
    "multilinear_functional",
    "nonlinear_term",
    "picard_gaps",
    "poly_level_bound",
    "reduction_residual_zero",
    "resonance_closed_form",
    "resonance_from_l",
    "two_center_bound",
    "v2_multiplier",
]
