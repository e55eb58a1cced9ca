"""
Admissible Picard horizon from measured constants.

The linear Duhamel term is bounded by A(T) = c_lin sqrt(T / eps) and the
bilinear term by B(T) = c_bil eps^{-3/8} T^{5/8} ||u0||. The default
conditions are A < 1, B < 1 and A + B < 1; the strict ones are the
contraction conditions A < 1/3, B < 1/9 and A + 6 B < 1.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from ..operators.studies import kernel_norm_study, measure_bilinear_constant, measure_linear_constant
from ..operators.symbols import MultiplierSymbol, SymbolName
from ..spectral.grid import Grid, make_grid

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 0.9
BILINEAR_EXPONENT = 3.0 / 8.0

# Quartic kernel study grid: resolves exp(-t xi^4) down to t = 1e-4
KERNEL_GRID_POINTS = 1024
KERNEL_GRID_HALF_LENGTH = 8.0 * math.pi


def horizon_terms(eps: float, horizon: float, data_norm: float, c_lin_hat: float,
                  c_bil_hat: float) -> Tuple[float, float]:
    """(A(T), B(T))"""
    a = c_lin_hat * math.sqrt(horizon / eps)
    b = c_bil_hat * eps ** -BILINEAR_EXPONENT * horizon ** (1.0 - BILINEAR_EXPONENT) * data_norm
    return a, b


def _linear_root(eps: float, c_lin_hat: float, level: float) -> float:
    return eps * (level / c_lin_hat) ** 2


def _bilinear_root(eps: float, data_norm: float, c_bil_hat: float, level: float) -> float:
    if data_norm == 0.0:
        return math.inf
    return (level * eps ** BILINEAR_EXPONENT / (c_bil_hat * data_norm)) ** (1.0 / (1.0 - BILINEAR_EXPONENT))


def admissible_horizon(
    eps: float,
    data_norm: float,
    c_lin_hat: float,
    c_bil_hat: float,
    strict: bool = False,
    safety: float = SAFETY_FACTOR,
) -> float:
    """
    Largest T satisfying the three conditions, times the safety factor

    Args:
        eps: Hyperviscosity strength
        data_norm: ||phi_eps * u0||, may be zero
        c_lin_hat: Measured linear constant
        c_bil_hat: Measured bilinear constant
        strict: Use the contraction conditions instead of the existence ones
        safety: Factor applied to the largest admissible T

    Returns:
        Horizon T > 0

    Raises:
        ValueError: If eps or a constant is not positive, or data_norm < 0
    """
    if eps <= 0 or c_lin_hat <= 0 or c_bil_hat <= 0:
        raise ValueError("eps and the measured constants must be positive")
    if data_norm < 0:
        raise ValueError(f"data_norm must be >= 0, got {data_norm}")

    a_level, b_level, b_weight = (1.0 / 3.0, 1.0 / 9.0, 6.0) if strict else (1.0, 1.0, 1.0)
    t_lin = _linear_root(eps, c_lin_hat, a_level)
    t_bil = _bilinear_root(eps, data_norm, c_bil_hat, b_level)

    def combined(t: float) -> float:
        a, b = horizon_terms(eps, t, data_norm, c_lin_hat, c_bil_hat)
        return a + b_weight * b - 1.0

    upper = min(t_lin, t_bil)
    t_sum = upper if combined(upper) <= 0.0 else brentq(combined, 0.0, upper, xtol=1e-14 * upper, rtol=1e-14)
    horizon = safety * min(t_lin, t_bil, t_sum)
    logger.debug(
        f"horizon roots (strict={strict}): linear={t_lin:.6g} bilinear={t_bil:.6g} "
        f"combined={t_sum:.6g} -> T={horizon:.6g}"
    )
    return horizon


def measured_constants(grid: Grid, kernel_grid: Optional[Grid] = None) -> Tuple[float, float]:
    """
    (c_lin_hat, c_bil_hat) for Picard solves on grid

    The linear constant is the symbol supremum on the active grid; the
    bilinear constant comes from a quartic kernel study over t in [1e-4, 1e-1].
    """
    kernel_grid = kernel_grid or make_grid(KERNEL_GRID_POINTS, KERNEL_GRID_HALF_LENGTH)
    study = kernel_norm_study(
        MultiplierSymbol(SymbolName.QUARTIC, kernel_grid),
        1.0,
        np.logspace(-4, -1, 13),
        norm="l2",
    )
    c_lin_hat = measure_linear_constant(grid)
    c_bil_hat = measure_bilinear_constant(study, BILINEAR_EXPONENT)
    logger.info(f"measured Picard constants: c_lin={c_lin_hat:.6g} c_bil={c_bil_hat:.6g}")
    return c_lin_hat, c_bil_hat
