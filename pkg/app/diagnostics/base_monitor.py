"""
Base Monitor Abstract Class

Provides the foundation for all run monitors with:
- Async execution of the numerical check in a worker thread
- Standardized logging
- Metrics collection
- Error boundaries (a failing monitor reports, it never raises)

A timeout abandons the await, not the worker thread: compute keeps running
until it next calls raise_if_cancelled, which the timeout arms.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Generic, Optional, TypeVar
import asyncio
import threading
import logging
import uuid
from datetime import datetime
from enum import Enum

from pydantic import BaseModel, Field

from ..config import settings
from ..exceptions import MonitorCancelledError
from ..models.run_models import RunRecord

R = TypeVar('R', bound=BaseModel)


class MonitorStatus(str, Enum):
    """Monitor execution status"""
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"


class MonitorMetrics(BaseModel):
    """Metrics collected during monitor execution"""
    start_time: datetime
    end_time: Optional[datetime] = None
    duration_ms: Optional[int] = None
    error_count: int = 0


class MonitorContext(BaseModel):
    """Shared context passed to every monitor of one run"""
    run_id: str = Field(default_factory=lambda: str(uuid.uuid4()))
    metadata: Dict[str, Any] = Field(default_factory=dict)


class MonitorResult(BaseModel, Generic[R]):
    """Standard result wrapper for all monitors"""
    monitor_name: str
    status: MonitorStatus
    data: Optional[R] = None
    error: Optional[str] = None
    metrics: MonitorMetrics
    context: MonitorContext


class BaseMonitor(ABC, Generic[R]):
    """
    Abstract base class for run monitors

    Type Parameters:
        R: Report type (Pydantic model)
    """

    def __init__(self, name: str, timeout: Optional[float] = None):
        self.name = name
        self.timeout = timeout if timeout is not None else settings.monitor_timeout
        self.logger = logging.getLogger(f"monitor.{name}")
        self.cancelled = threading.Event()

    @abstractmethod
    def compute(self, record: RunRecord) -> R:
        """
        Numerical check on one run record

        Args:
            record: Completed or annotated run

        Returns:
            Monitor-specific report
        """
        pass

    def raise_if_cancelled(self):
        """Checked between units of work so a timed-out compute stops early"""
        if self.cancelled.is_set():
            raise MonitorCancelledError(f"{self.name} cancelled after {self.timeout}s")

    def validate_input(self, record: RunRecord) -> bool:
        """A record is usable when it holds at least one sample"""
        return bool(record.samples)

    async def execute(self, record: RunRecord, context: MonitorContext) -> MonitorResult[R]:
        """
        Execute the monitor with timeout and error capture

        Args:
            record: Run to inspect
            context: Shared monitor context

        Returns:
            MonitorResult containing the report or the error
        """
        metrics = MonitorMetrics(start_time=datetime.utcnow())
        status = MonitorStatus.PENDING
        report = None
        error = None

        try:
            if not self.validate_input(record):
                raise ValueError(f"Run record has no samples for {self.name}")

            self.cancelled.clear()
            status = MonitorStatus.RUNNING
            self.logger.info(f"Executing {self.name} for run {context.run_id}")
            report = await asyncio.wait_for(asyncio.to_thread(self.compute, record), timeout=self.timeout)
            status = MonitorStatus.COMPLETED

        except asyncio.TimeoutError:
            metrics.error_count += 1
            status = MonitorStatus.FAILED
            error = f"Timeout after {self.timeout}s"
            self.cancelled.set()
            self.logger.warning(f"{self.name} timed out")

        except Exception as e:
            metrics.error_count += 1
            status = MonitorStatus.FAILED
            error = str(e)
            self.logger.error(f"{self.name} failed: {e}")

        finally:
            metrics.end_time = datetime.utcnow()
            metrics.duration_ms = int(
                (metrics.end_time - metrics.start_time).total_seconds() * 1000
            )

        return MonitorResult(
            monitor_name=self.name,
            status=status,
            data=report,
            error=error,
            metrics=metrics,
            context=context,
        )
