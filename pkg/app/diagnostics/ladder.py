"""
Regularity Ladder

Starting from s just below 3/4, the first gain is sigma = s - 1/4 and each
further step adds the same increment (alpha = s + sigma - 1/4), so the
ladder is sigma_i = i (s - 1/4) up to a target exponent rho.
"""

import logging
import math
from typing import Callable, List, Optional

import numpy as np

from ..config import settings
from ..evolve.solver import grid_for
from ..exceptions import LadderResolutionError, MissingSeriesError
from ..models.report_models import LadderReport, LadderRung
from ..models.run_models import RunRecord
from ..norms.functionals import hs_norm, sobolev_tail_fraction
from ..spectral.field import SpectralField
from .base_monitor import BaseMonitor

logger = logging.getLogger(__name__)

DEFAULT_S_START = 0.74
DEFAULT_RESOLUTION_TOL = 1.0e-4


def ladder_exponents(rho_target: float, s_start: float = DEFAULT_S_START) -> List[float]:
    """
    Strictly increasing exponents i (s - 1/4) below rho_target, then rho_target

    Raises:
        ValueError: If s_start is outside (1/4, 3/4) or rho_target <= 0
    """
    if not 0.25 < s_start < 0.75:
        raise ValueError(f"s_start must lie in (1/4, 3/4), got {s_start}")
    if not (math.isfinite(rho_target) and rho_target > 0):
        raise ValueError(f"rho_target must be positive, got {rho_target}")
    gain = s_start - 0.25
    exponents = []
    i = 1
    while i * gain < rho_target:
        exponents.append(i * gain)
        i += 1
    exponents.append(float(rho_target))
    return exponents


def ladder_monitor(
    record: RunRecord,
    rho_target: float,
    s_start: float = DEFAULT_S_START,
    cap: Optional[float] = None,
    resolution_tol: float = DEFAULT_RESOLUTION_TOL,
    check_cancelled: Optional[Callable[[], None]] = None,
) -> LadderReport:
    """
    Sup-in-time Hdot^sigma norms along the ladder

    Args:
        record: Run with stored states and an L-infinity series
        rho_target: Last exponent of the ladder
        s_start: Starting regularity, just below 3/4
        cap: Boundedness cap (settings.ladder_cap by default)
        resolution_tol: Largest admissible sigma-weighted tail fraction
        check_cancelled: Called before each rung; raises to stop early

    Returns:
        LadderReport

    Raises:
        MissingSeriesError: If states or the L-infinity series are missing
        LadderResolutionError: If some ladder norm lives in the unresolved tail
    """
    if not record.samples or not record.states:
        raise MissingSeriesError("ladder monitor needs stored states and the L-infinity series")
    cap = settings.ladder_cap if cap is None else cap
    exponents = ladder_exponents(rho_target, s_start)

    grid = grid_for(record.config)
    fields = [SpectralField.from_coeffs(grid, c) for c in record.states]
    dealias = record.config.stepper.dealias

    rungs = []
    for sigma in exponents:
        if check_cancelled is not None:
            check_cancelled()
        worst_tail = max(sobolev_tail_fraction(f, sigma, dealias=dealias) for f in fields)
        if worst_tail > resolution_tol:
            raise LadderResolutionError(
                f"Hdot^{sigma:g} carries a tail fraction {worst_tail:.3g} > {resolution_tol:g}; "
                f"refine the grid or lower rho_target"
            )
        norms = np.array([hs_norm(f, sigma) for f in fields])
        sup = float(np.max(norms))
        rungs.append(LadderRung(
            sigma=sigma,
            sup_norm=sup,
            initial_norm=float(norms[0]),
            bounded=bool(math.isfinite(sup) and sup <= cap),
        ))

    linf_sup = float(np.max(record.series("linf")))
    all_bounded = all(r.bounded for r in rungs)
    logger.info(f"ladder to rho={rho_target:g}: {len(rungs)} rungs, sup linf {linf_sup:.4g}, bounded={all_bounded}")
    return LadderReport(
        s_start=s_start,
        rho_target=rho_target,
        cap=cap,
        exponents=exponents,
        rungs=rungs,
        linf_sup=linf_sup,
        all_bounded=all_bounded,
    )


class LadderMonitor(BaseMonitor[LadderReport]):

    def __init__(self, rho_target: float, s_start: float = DEFAULT_S_START, timeout: Optional[float] = None):
        super().__init__("ladder", timeout)
        self.rho_target = rho_target
        self.s_start = s_start

    def compute(self, record: RunRecord) -> LadderReport:
        return ladder_monitor(record, self.rho_target, self.s_start, check_cancelled=self.raise_if_cancelled)
