"""
Time evolution: evolution laws, exponential steppers, runs and run families.
"""

from .equation import EvolutionLaw, linear_symbol, nonlinear_residual
from .steppers import Stepper, IntegratingFactorRK4, ETDRK2, make_stepper
from .snapshots import (
    Snapshot,
    Checkpoint,
    write_snapshot,
    read_snapshot,
    write_checkpoint,
    restore_checkpoint,
)
from .solver import Integrator, step, run, make_sample, final_state, grid_for, step_schedule
from .family import cauchy_table, epsilon_family_study, compare_variants, sup_state_distance, validate_epsilon_list

__all__ = [
    "EvolutionLaw",
    "linear_symbol",
    "nonlinear_residual",
    "Stepper",
    "IntegratingFactorRK4",
    "ETDRK2",
    "make_stepper",
    "Snapshot",
    "Checkpoint",
    "write_snapshot",
    "read_snapshot",
    "write_checkpoint",
    "restore_checkpoint",
    "Integrator",
    "step",
    "run",
    "make_sample",
    "final_state",
    "grid_for",
    "step_schedule",
    "cauchy_table",
    "epsilon_family_study",
    "compare_variants",
    "sup_state_distance",
    "validate_epsilon_list",
]
