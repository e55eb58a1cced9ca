"""
Run Record Models

Time series produced by evolve.run and consumed by the diagnostics monitors.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .config_models import SolverConfig


class NormReport(BaseModel):
    """Norms of one field at one time"""
    t: float = 0.0
    l2: float
    hs: Dict[float, float] = Field(default_factory=dict)
    n_norm: float
    linf: float

    def csv_columns(self) -> List[str]:
        return ["t", "l2", "n", "linf"] + [f"hs_{s:g}" for s in sorted(self.hs)]

    def csv_row(self) -> List[float]:
        return [self.t, self.l2, self.n_norm, self.linf] + [self.hs[s] for s in sorted(self.hs)]


class RunSample(NormReport):
    """NormReport plus the extra series recorded during a run"""
    dx_linf: float = 0.0
    hyper_norm: float = 0.0
    tail_fraction: float = 0.0
    boundary_mass: float = 0.0
    nonlinear_residual: float = 0.0

    def csv_columns(self) -> List[str]:
        return super().csv_columns() + [
            "dx_linf", "hyper_norm", "tail_fraction", "boundary_mass", "nonlinear_residual"
        ]

    def csv_row(self) -> List[float]:
        return super().csv_row() + [
            self.dx_linf, self.hyper_norm, self.tail_fraction,
            self.boundary_mass, self.nonlinear_residual,
        ]


class EnergyBudget(BaseModel):
    """Energy identity terms at one time"""
    t: float
    kinetic: float
    dissipation_n: float
    dissipation_eps: float
    residual: float


class RunStatus(str, Enum):
    """Termination status of a run"""
    COMPLETED = "completed"
    BLOWUP_DETECTED = "blowup_detected"
    RESOLUTION_LOST = "resolution_lost"
    CFL_VIOLATION = "cfl_violation"


class RunRecord(BaseModel):
    """
    Everything one run produced

    `states` holds the Fourier coefficients at every sample time; it is kept
    in memory for the monitors and excluded from serialization.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: SolverConfig
    samples: List[RunSample] = Field(default_factory=list)
    energy: List[EnergyBudget] = Field(default_factory=list)
    snapshot_paths: List[str] = Field(default_factory=list)
    status: RunStatus = RunStatus.COMPLETED
    error: Optional[str] = None
    failure_time: Optional[float] = None
    steps_taken: int = 0
    states: List[Any] = Field(default_factory=list, exclude=True)

    @property
    def completed(self) -> bool:
        return self.status == RunStatus.COMPLETED

    @property
    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples], dtype=np.float64)

    def series(self, name: str) -> np.ndarray:
        """Column of the sample table by attribute name"""
        return np.array([getattr(s, name) for s in self.samples], dtype=np.float64)

    def hs_series(self, exponent: float) -> Optional[np.ndarray]:
        if not self.samples or exponent not in self.samples[0].hs:
            return None
        return np.array([s.hs[exponent] for s in self.samples], dtype=np.float64)

    def state_matrix(self) -> np.ndarray:
        """States stacked as (n_samples, n_points)"""
        if not self.states:
            return np.zeros((0, self.config.grid.n_points), dtype=np.complex128)
        return np.vstack(self.states)
