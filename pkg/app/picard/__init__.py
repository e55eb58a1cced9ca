"""
Mild-solution machinery for the mollified system.
"""

from .mollifier import mollify, mollifier_regularity, HALF_DERIVATIVE_BOUND, FULL_DERIVATIVE_BOUND
from .duhamel import (
    DuhamelState,
    make_duhamel_state,
    duhamel_map,
    initial_path,
    pde_residual,
    single_mode_decay,
    sup_l2_distance,
    sup_l2_norm,
    path_field,
)
from .horizon import admissible_horizon, horizon_terms, measured_constants
from .fixed_point import FixedPointConfig, solve_fixed_point, solve_with_node_refinement

__all__ = [
    "mollify",
    "mollifier_regularity",
    "HALF_DERIVATIVE_BOUND",
    "FULL_DERIVATIVE_BOUND",
    "DuhamelState",
    "make_duhamel_state",
    "duhamel_map",
    "initial_path",
    "pde_residual",
    "single_mode_decay",
    "sup_l2_distance",
    "sup_l2_norm",
    "path_field",
    "admissible_horizon",
    "horizon_terms",
    "measured_constants",
    "FixedPointConfig",
    "solve_fixed_point",
    "solve_with_node_refinement",
]
