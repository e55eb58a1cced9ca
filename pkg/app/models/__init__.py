"""Models package for the spectral lab"""

from .config_models import (
    EquationVariant,
    StepperKind,
    ProfileKind,
    InitialData,
    GridSection,
    EquationSection,
    StepperSection,
    OutputSection,
    SolverConfig,
    SweepKind,
    SweepSection,
    SweepConfig,
)
from .run_models import NormReport, RunSample, EnergyBudget, RunStatus, RunRecord
from .report_models import (
    StudyRow,
    KernelStudy,
    DualityStudy,
    ProductLawRatios,
    RegularityRow,
    IterationTraceRow,
    FixedPointReport,
    EpsilonFamilyRow,
    EpsilonFamilyTable,
    VariantComparison,
    EnergyAuditReport,
    LadderRung,
    LadderReport,
    TwinRunReport,
    LinearResponseRow,
    LinearResponseTable,
    LinfCriterionReport,
    CheckResult,
    SuiteReport,
    ManifestStatus,
    RunManifest,
)

__all__ = [
    "EquationVariant",
    "StepperKind",
    "ProfileKind",
    "InitialData",
    "GridSection",
    "EquationSection",
    "StepperSection",
    "OutputSection",
    "SolverConfig",
    "SweepKind",
    "SweepSection",
    "SweepConfig",
    "NormReport",
    "RunSample",
    "EnergyBudget",
    "RunStatus",
    "RunRecord",
    "StudyRow",
    "KernelStudy",
    "DualityStudy",
    "ProductLawRatios",
    "RegularityRow",
    "IterationTraceRow",
    "FixedPointReport",
    "EpsilonFamilyRow",
    "EpsilonFamilyTable",
    "VariantComparison",
    "EnergyAuditReport",
    "LadderRung",
    "LadderReport",
    "TwinRunReport",
    "LinearResponseRow",
    "LinearResponseTable",
    "LinfCriterionReport",
    "CheckResult",
    "SuiteReport",
    "ManifestStatus",
    "RunManifest",
]
