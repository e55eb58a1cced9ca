"""
Monitor Pipeline

Runs the record-level monitors (energy, ladder, L-infinity criterion) of one
run concurrently and collects their per-monitor results.
"""

from typing import Any, Dict, List, Optional
from enum import Enum
import asyncio
import logging
from datetime import datetime

from pydantic import BaseModel, Field

from ..models.run_models import RunRecord
from .base_monitor import BaseMonitor, MonitorContext, MonitorResult, MonitorStatus
from .energy import EnergyMonitor
from .ladder import LadderMonitor
from .linf import DEFAULT_EPS_PRIME, LinfMonitor


class PipelineStage(str, Enum):
    """Diagnostics pipeline stages"""
    RECEIVED = "received"
    MONITORING = "monitoring"
    COMPLETED = "completed"
    FAILED = "failed"


class DiagnosticsState(BaseModel):
    """Diagnostics execution state of one run"""
    stage: PipelineStage
    run_id: str
    started_at: datetime
    completed_at: Optional[datetime] = None
    results: Dict[str, MonitorResult] = Field(default_factory=dict)
    failed_monitors: List[str] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.stage == PipelineStage.COMPLETED and not self.failed_monitors

    def summary(self) -> Dict[str, Any]:
        """JSON-ready per-monitor status, error and report"""
        return {
            name: {
                "status": result.status.value,
                "error": result.error,
                "duration_ms": result.metrics.duration_ms,
                "report": result.data.model_dump(mode="json") if result.data is not None else None,
            }
            for name, result in self.results.items()
        }


class MonitorPipeline:
    """
    Orchestrates monitor execution on a run record
    """

    def __init__(self):
        self.logger = logging.getLogger("orchestrator")
        self.monitors: Dict[str, BaseMonitor] = {}

    def register_monitor(self, monitor: BaseMonitor):
        """
        Register a monitor under its name

        Args:
            monitor: Monitor instance
        """
        self.monitors[monitor.name] = monitor
        self.logger.info(f"Registered monitor {monitor.name}")

    async def execute(self, record: RunRecord, context: Optional[MonitorContext] = None) -> DiagnosticsState:
        """
        Execute every registered monitor in parallel

        Args:
            record: Run to inspect
            context: Shared monitor context

        Returns:
            DiagnosticsState with one result per monitor
        """
        context = context or MonitorContext()
        state = DiagnosticsState(
            stage=PipelineStage.RECEIVED,
            run_id=context.run_id,
            started_at=datetime.utcnow(),
            metadata=context.metadata,
        )

        names = list(self.monitors)
        state.stage = PipelineStage.MONITORING
        results = await asyncio.gather(
            *(self.monitors[name].execute(record, context) for name in names),
            return_exceptions=True,
        )

        for name, result in zip(names, results):
            if isinstance(result, BaseException):
                self.logger.error(f"Monitor {name} raised outside its error boundary: {result}")
                state.failed_monitors.append(name)
                continue
            state.results[name] = result
            if result.status != MonitorStatus.COMPLETED:
                state.failed_monitors.append(name)

        state.stage = PipelineStage.FAILED if len(state.failed_monitors) == len(names) and names else PipelineStage.COMPLETED
        state.completed_at = datetime.utcnow()
        self.logger.info(
            f"Diagnostics for run {context.run_id}: {len(names) - len(state.failed_monitors)}/{len(names)} monitors completed"
        )
        return state


def default_pipeline(
    rho_target: float = 2.0,
    eps_prime: float = DEFAULT_EPS_PRIME,
    energy_tolerance: Optional[float] = None,
) -> MonitorPipeline:
    pipeline = MonitorPipeline()
    pipeline.register_monitor(EnergyMonitor(energy_tolerance))
    pipeline.register_monitor(LadderMonitor(rho_target))
    pipeline.register_monitor(LinfMonitor(eps_prime))
    return pipeline


def run_diagnostics(
    record: RunRecord,
    rho_target: float = 2.0,
    eps_prime: float = DEFAULT_EPS_PRIME,
    run_id: Optional[str] = None,
) -> DiagnosticsState:
    """Blocking entry point: the default monitors on one record"""
    context = MonitorContext(run_id=run_id) if run_id else MonitorContext()
    return asyncio.run(default_pipeline(rho_target, eps_prime).execute(record, context))
