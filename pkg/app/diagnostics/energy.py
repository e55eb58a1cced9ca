"""
Energy Audit

Budget of the energy identity

    1/2 d/dt ||u||^2 + eps ||L^{1/2} u||^2 + ||u||_N^2 = 0

over the sampled series of a run, and the inequality form
||u(t)||^2 + 2 int_0^t ||u||_N^2 <= ||u0||^2 (1 + tol) for the modified law.
The classic law has a skew-adjoint dispersive part, so only the
hyperviscous dissipation enters its budget.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid

from ..exceptions import MissingSeriesError
from ..models.config_models import EquationVariant
from ..models.report_models import EnergyAuditReport
from ..models.run_models import EnergyBudget, RunRecord
from .base_monitor import BaseMonitor

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1.0e-6


def cumulative_integral(values: np.ndarray, times: np.ndarray) -> np.ndarray:
    """Running time integral starting at 0; Simpson from three samples on"""
    if len(times) < 2:
        return np.zeros_like(values)
    if len(times) < 3:
        return cumulative_trapezoid(values, x=times, initial=0.0)
    return cumulative_simpson(values, x=times, initial=0.0)


def energy_budget(record: RunRecord) -> List[EnergyBudget]:
    """
    Energy identity terms at every sample of a run

    Raises:
        MissingSeriesError: If the record has no samples
    """
    if not record.samples:
        raise MissingSeriesError("energy audit needs the sampled L2 and N series")

    times = record.times
    l2 = record.series("l2")
    kinetic = 0.5 * l2 ** 2
    if record.config.variant == EquationVariant.MODIFIED:
        dissipation_n = cumulative_integral(record.series("n_norm") ** 2, times)
    else:
        dissipation_n = np.zeros_like(times)
    dissipation_eps = record.config.epsilon * cumulative_integral(record.series("hyper_norm") ** 2, times)
    residual = kinetic - kinetic[0] + dissipation_n + dissipation_eps

    return [
        EnergyBudget(
            t=float(times[i]),
            kinetic=float(kinetic[i]),
            dissipation_n=float(dissipation_n[i]),
            dissipation_eps=float(dissipation_eps[i]),
            residual=float(residual[i]),
        )
        for i in range(len(times))
    ]


def energy_audit(record: RunRecord, tolerance: Optional[float] = None) -> Tuple[List[EnergyBudget], EnergyAuditReport]:
    """
    Budget series plus verdicts on the inequality and identity forms

    Args:
        record: Run with sampled L2, N and hyperviscous series
        tolerance: Relative slack of the inequality form

    Returns:
        (budget, report)

    Raises:
        MissingSeriesError: If the record has no samples
    """
    tol = DEFAULT_TOLERANCE if tolerance is None else tolerance
    budget = energy_budget(record)

    kinetic0 = budget[0].kinetic
    residuals = np.array([b.residual for b in budget])
    max_abs_residual = float(np.max(np.abs(residuals)))
    relative = max_abs_residual / kinetic0 if kinetic0 > 0 else 0.0

    checked = record.config.variant == EquationVariant.MODIFIED
    if checked:
        # ||u||^2 + 2 D_n against ||u0||^2 (1 + tol)
        excess = np.array([2.0 * b.kinetic + 2.0 * b.dissipation_n for b in budget]) - 2.0 * kinetic0 * (1.0 + tol)
        max_excess = float(np.max(excess))
        holds = bool(max_excess <= 0.0)
    else:
        max_excess = 0.0
        holds = True

    report = EnergyAuditReport(
        inequality_holds=holds,
        max_inequality_excess=max_excess,
        max_abs_residual=max_abs_residual,
        relative_residual=relative,
        tolerance=tol,
        checked_inequality=checked,
        budget_length=len(budget),
    )
    if not holds:
        logger.warning(f"energy inequality violated by {max_excess:.3g} (tol={tol:g})")
    logger.info(f"energy audit: relative identity residual {relative:.3g} over {len(budget)} samples")
    return budget, report


class EnergyMonitor(BaseMonitor[EnergyAuditReport]):
    """Energy audit as a pipeline stage"""

    def __init__(self, tolerance: Optional[float] = None, timeout: Optional[float] = None):
        super().__init__("energy", timeout)
        self.tolerance = tolerance

    def compute(self, record: RunRecord) -> EnergyAuditReport:
        _, report = energy_audit(record, self.tolerance)
        return report
