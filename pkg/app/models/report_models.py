"""
Report Models

Study tables, monitor reports, verification verdicts and run manifests.
Everything here serializes to JSON through model_dump_json.
"""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


# Operator studies

class StudyRow(BaseModel):
    """One (parameter, measured norm) pair"""
    parameter: float
    value: float


class KernelStudy(BaseModel):
    """Norms of a semigroup kernel against time"""
    generator: str
    derivative_order: float
    norm: str = Field(..., description="l2 or l1")
    epsilon: float = 1.0
    rows: List[StudyRow]
    slope: Optional[float] = None
    constant: float = Field(..., description="max of value * t^(-slope) over the rows")


class DualityStudy(BaseModel):
    """Space-time norm of the dissipation-weighted semigroup against epsilon"""
    extra_order: float = 0.0
    psi_l2: float
    rows: List[StudyRow]
    slope: float
    constant: float = Field(..., description="max of norm * sqrt(eps) / ||psi||")


class ProductLawRatios(BaseModel):
    """LHS/RHS of the product law and of Kato-Ponce"""
    sigma: float
    delta: float
    product_law: Optional[float] = None
    kato_ponce: float


class RegularityRow(BaseModel):
    """Mollified data norms at one epsilon"""
    epsilon: float
    h_half: float
    h_one: float
    c_half: float = Field(..., description="h_half * eps^(1/2) / ||u0||")
    c_one: float = Field(..., description="h_one * eps / ||u0||")


# Fixed point

class IterationTraceRow(BaseModel):
    """One Picard iteration"""
    iteration: int
    distance: float
    bound: float


class FixedPointReport(BaseModel):
    """Summary of a fixed point solve"""
    converged: bool
    iterations: int
    trace: List[IterationTraceRow]
    sup_norm: float
    delta: float
    within_bound: bool
    contraction_ratio: Optional[float] = None
    fixed_point_residual: Optional[float] = None
    n_nodes: int
    horizon: float


# Evolution studies

class EpsilonFamilyRow(BaseModel):
    """Distances for one member of an epsilon family"""
    epsilon: float
    distance_to_next: Optional[float] = None
    distance_to_zero: float
    status: str = "completed"


class EpsilonFamilyTable(BaseModel):
    """Numerical Cauchy study as epsilon decreases to zero"""
    rows: List[EpsilonFamilyRow]
    monotone: bool
    observed_rates: List[float] = Field(default_factory=list)


class VariantComparison(BaseModel):
    """Modified and classic runs from shared data"""
    times: List[float]
    l2_modified: List[float]
    l2_classic: List[float]
    dx_linf_modified: List[float]
    dx_linf_classic: List[float]
    distance: List[float]
    status_modified: str
    status_classic: str


# Diagnostics

class EnergyAuditReport(BaseModel):
    """Energy inequality and identity checks over one run"""
    inequality_holds: bool
    max_inequality_excess: float
    max_abs_residual: float
    relative_residual: float
    tolerance: float
    checked_inequality: bool
    budget_length: int


class LadderRung(BaseModel):
    """One exponent of the regularity ladder"""
    sigma: float
    sup_norm: float
    initial_norm: float
    bounded: bool


class LadderReport(BaseModel):
    """Regularity bootstrap exponents and their sup-in-time norms"""
    s_start: float
    rho_target: float
    cap: float
    exponents: List[float]
    rungs: List[LadderRung]
    linf_sup: float
    all_bounded: bool


class TwinRunReport(BaseModel):
    """Difference of two runs against the Gronwall envelope"""
    times: List[float]
    difference_sq: List[float]
    envelope: List[float]
    gronwall_k: float
    bookkeeping_constant: float
    below_envelope: bool
    max_difference: float
    identity_residual: float


class LinearResponseRow(BaseModel):
    """Twin-run difference at one perturbation scale"""
    scale: float
    max_difference: float
    below_envelope: bool
    ratio_to_previous: Optional[float] = None
    expected_ratio: Optional[float] = None


class LinearResponseTable(BaseModel):
    """Twin runs over decreasing perturbation scales"""
    rows: List[LinearResponseRow]
    linear: bool = Field(..., description="every ratio within rel_tol of the scale ratio")
    rel_tol: float


class LinfCriterionReport(BaseModel):
    """L-infinity bound from the L4_t H^(3/4+eps') norm"""
    eps_prime: float
    a_norm: float
    lhs: float
    u0_linf: float
    measured_constant: float
    kernel_factor_low: float
    kernel_factor_high: float
    majorant_low: float
    majorant_high: float
    finite: bool


# Verification

class CheckResult(BaseModel):
    """Single property check"""
    suite: str
    name: str
    passed: bool
    message: str = ""
    measured: Dict[str, Any] = Field(default_factory=dict)


class SuiteReport(BaseModel):
    """Outcome of one verification suite"""
    suite: str
    passed: bool
    total_checks: int
    passed_checks: int
    failed_checks: int
    results: List[CheckResult]
    errors: List[str] = Field(default_factory=list)
    duration_s: float = 0.0


# Persistence

class ManifestStatus(str, Enum):
    """Manifest lifecycle"""
    RUNNING = "running"
    COMPLETED = "completed"
    BLOWUP_DETECTED = "blowup_detected"
    RESOLUTION_LOST = "resolution_lost"
    CFL_VIOLATION = "cfl_violation"
    FAILED = "failed"


class RunManifest(BaseModel):
    """Index of one run directory"""
    run_id: str
    kind: str = "run"
    config: Dict[str, Any]
    created_at: datetime = Field(default_factory=datetime.utcnow)
    finalized_at: Optional[datetime] = None
    status: ManifestStatus = ManifestStatus.RUNNING
    series_path: Optional[str] = None
    snapshot_paths: List[str] = Field(default_factory=list)
    report_paths: List[str] = Field(default_factory=list)
    error: Optional[str] = None

    @property
    def finalized(self) -> bool:
        return self.finalized_at is not None
