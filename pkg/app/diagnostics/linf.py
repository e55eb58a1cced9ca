"""
L-infinity Criterion

Checks the bound sup_t ||u||_inf <= C (||u0||_inf + ||u||^2_{L^4_t H^{3/4+e}})
on a run with a measured constant C, and the finiteness of the kernel factor
int |xi|^{-1/2-2e} / m(xi) dxi split at |xi| = 1.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import simpson, trapezoid

from ..evolve.solver import grid_for
from ..exceptions import MissingSeriesError
from ..models.report_models import LinfCriterionReport
from ..models.run_models import RunRecord
from ..norms.functionals import inhomogeneous_hs_norm
from ..operators.symbols import eval_whitham_m
from ..spectral.field import SpectralField
from ..spectral.grid import Grid
from ..utils.logging_config import log_measurement
from .base_monitor import BaseMonitor

logger = logging.getLogger(__name__)

DEFAULT_EPS_PRIME = 0.05


def _check_eps_prime(eps_prime: float):
    if not 0.0 < eps_prime < 0.25:
        raise ValueError(f"eps_prime must lie in (0, 1/4), got {eps_prime}")


def kernel_factors(grid: Grid, eps_prime: float) -> Tuple[float, float]:
    """
    Riemann sums of |xi|^{-1/2-2e}/m(xi) over 0 < |xi| <= 1 and |xi| > 1

    Both sums sit below their majorants 2/(1/2 - 2e) and 2/(2e).
    """
    _check_eps_prime(eps_prime)
    xi = np.abs(grid.frequencies)
    xi = xi[xi > 0]
    integrand = xi ** (-0.5 - 2.0 * eps_prime) / eval_whitham_m(xi)
    low = grid.dxi * float(np.sum(integrand[xi <= 1.0]))
    high = grid.dxi * float(np.sum(integrand[xi > 1.0]))
    return low, high


def kernel_majorants(eps_prime: float) -> Tuple[float, float]:
    _check_eps_prime(eps_prime)
    return 2.0 / (0.5 - 2.0 * eps_prime), 2.0 / (2.0 * eps_prime)


def _time_integral(values: np.ndarray, times: np.ndarray) -> float:
    if len(times) < 2:
        return 0.0
    if len(times) < 3:
        return float(trapezoid(values, x=times))
    return float(simpson(values, x=times))


def linf_criterion_check(record: RunRecord, eps_prime: float = DEFAULT_EPS_PRIME) -> LinfCriterionReport:
    """
    Measured constant of the L-infinity criterion

    Args:
        record: Run with stored states (or a recorded H^{3/4+eps'} series)
        eps_prime: Small regularity excess above 3/4

    Returns:
        LinfCriterionReport

    Raises:
        MissingSeriesError: If neither states nor the needed series are present
        ValueError: If eps_prime is outside (0, 1/4)
    """
    _check_eps_prime(eps_prime)
    if not record.samples:
        raise MissingSeriesError("L-infinity criterion needs a sampled run")

    s = 0.75 + eps_prime
    grid = grid_for(record.config)
    if record.states:
        hs_values = np.array([
            inhomogeneous_hs_norm(SpectralField.from_coeffs(grid, c), s) for c in record.states
        ])
    else:
        homogeneous = record.hs_series(s)
        if homogeneous is None:
            raise MissingSeriesError(f"run record has no states and no H^{s:g} series")
        # comparable to the inhomogeneous norm
        hs_values = np.sqrt(record.series("l2") ** 2 + homogeneous ** 2)

    times = record.times
    a_norm = _time_integral(hs_values ** 4, times) ** 0.25
    linf = record.series("linf")
    lhs = float(np.max(linf))
    u0_linf = float(linf[0])
    denominator = u0_linf + a_norm ** 2
    measured = lhs / denominator if denominator > 0 else 0.0

    low, high = kernel_factors(grid, eps_prime)
    majorant_low, majorant_high = kernel_majorants(eps_prime)
    finite = bool(
        math.isfinite(low) and math.isfinite(high)
        and low <= majorant_low and high <= majorant_high
    )
    logger.info(
        f"L-infinity criterion (eps'={eps_prime:g}): A={a_norm:.4g} sup linf={lhs:.4g} "
        f"C*={measured:.4g} kernel factors {low:.4g} + {high:.4g}"
    )
    log_measurement(logger, "linf_constant", measured, {"eps_prime": eps_prime, "a_norm": a_norm})
    return LinfCriterionReport(
        eps_prime=eps_prime,
        a_norm=a_norm,
        lhs=lhs,
        u0_linf=u0_linf,
        measured_constant=measured,
        kernel_factor_low=low,
        kernel_factor_high=high,
        majorant_low=majorant_low,
        majorant_high=majorant_high,
        finite=finite,
    )


class LinfMonitor(BaseMonitor[LinfCriterionReport]):

    def __init__(self, eps_prime: float = DEFAULT_EPS_PRIME, timeout: Optional[float] = None):
        super().__init__("linf", timeout)
        self.eps_prime = eps_prime

    def compute(self, record: RunRecord) -> LinfCriterionReport:
        return linf_criterion_check(record, self.eps_prime)
