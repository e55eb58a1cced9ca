"""
Runtime monitors on run records: energy budget, regularity ladder,
twin-run stability and the L-infinity criterion.
"""

from .base_monitor import BaseMonitor, MonitorContext, MonitorMetrics, MonitorResult, MonitorStatus
from .energy import EnergyMonitor, energy_audit, energy_budget
from .ladder import LadderMonitor, ladder_exponents, ladder_monitor
from .linf import LinfMonitor, kernel_factors, kernel_majorants, linf_criterion_check
from .stability import gradient_monitor, linear_response, response_table, twin_run_stability
from .orchestrator import DiagnosticsState, MonitorPipeline, PipelineStage, default_pipeline, run_diagnostics

__all__ = [
    "BaseMonitor",
    "MonitorContext",
    "MonitorMetrics",
    "MonitorResult",
    "MonitorStatus",
    "EnergyMonitor",
    "energy_audit",
    "energy_budget",
    "LadderMonitor",
    "ladder_exponents",
    "ladder_monitor",
    "LinfMonitor",
    "kernel_factors",
    "kernel_majorants",
    "linf_criterion_check",
    "gradient_monitor",
    "linear_response",
    "response_table",
    "twin_run_stability",
    "DiagnosticsState",
    "MonitorPipeline",
    "PipelineStage",
    "default_pipeline",
    "run_diagnostics",
]
