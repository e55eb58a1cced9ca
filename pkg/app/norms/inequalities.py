"""
Executable forms of the interpolation and product inequalities.
"""

import logging
import math
from typing import Dict

import numpy as np
from scipy.integrate import trapezoid

from ..exceptions import DegenerateBoundError, ZeroFieldError
from ..models.report_models import ProductLawRatios
from ..spectral.field import SpectralField
from ..spectral.grid import Grid
from ..spectral.profiles import random_smooth_field
from .functionals import hs_norm, l2_norm, linf_norm, n_norm

logger = logging.getLogger(__name__)

INTERPOLATION_MAX_S = 0.75
# product-law right-hand side below this fraction of the Kato-Ponce one counts as zero
VANISHING_RHS_RTOL = 1.0e-12


def check_interpolation_s(f: SpectralField, s: float) -> float:
    """
    ||f||_{Hdot^s} / (||f||^{1-2s} ||f||_N^{2s})

    At most 1 for 0 < s <= 1/2 because m >= 1 and Hoelder; for 1/2 < s < 3/4
    the ratio is only known to be finite.

    Raises:
        ZeroFieldError: If f vanishes
        ValueError: If s is outside (0, 3/4)
    """
    if not 0.0 < s < INTERPOLATION_MAX_S:
        raise ValueError(f"s must lie in (0, 3/4), got {s}")
    l2 = l2_norm(f)
    if l2 == 0.0:
        raise ZeroFieldError("interpolation ratio of the zero field")
    top = hs_norm(f, s)
    if top == 0.0:
        return 0.0
    ratio = top / (l2 ** (1.0 - 2.0 * s) * n_norm(f) ** (2.0 * s))
    if s > 0.5:
        logger.debug(f"interpolation ratio above s=1/2 recorded: s={s:g} ratio={ratio:.6g}")
    return ratio


def check_endpoint_34(f: SpectralField) -> float:
    """||f||^2 + ||f||_N^2 - ||f||_{Hdot^{3/4}}^2, nonnegative for every field"""
    return l2_norm(f) ** 2 + n_norm(f) ** 2 - hs_norm(f, 0.75) ** 2


def endpoint_scale(f: SpectralField) -> float:
    """||f||^2 + ||f||_N^2, the scale the endpoint residual is compared against"""
    return l2_norm(f) ** 2 + n_norm(f) ** 2


def check_product_laws(f: SpectralField, g: SpectralField, sigma: float, delta: float) -> ProductLawRatios:
    """
    LHS/RHS of the product law and of Kato-Ponce for one pair

    Both factors are 2/3-projected and the product is formed alias free.
    The product-law ratio is None when its right-hand side vanishes, which
    happens whenever one factor is constant and delta > 0.

    Raises:
        ValueError: If sigma <= 0 or delta is outside [0, 1/2]
        DegenerateBoundError: If the Kato-Ponce right-hand side vanishes
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"delta must lie in [0, 1/2], got {delta}")

    fd = f.dealiased()
    gd = g.dealiased()
    product = fd.product(gd, dealias=True)

    rhs_product = hs_norm(fd, sigma) * hs_norm(gd, delta) + hs_norm(gd, sigma) * hs_norm(fd, delta)
    rhs_kato = hs_norm(fd, sigma) * linf_norm(gd) + hs_norm(gd, sigma) * linf_norm(fd)
    if rhs_kato == 0.0:
        raise DegenerateBoundError(f"vanishing Kato-Ponce right-hand side (product law {rhs_product:g})")

    return ProductLawRatios(
        sigma=sigma,
        delta=delta,
        product_law=(
            hs_norm(product, sigma + delta - 0.5) / rhs_product
            if rhs_product > VANISHING_RHS_RTOL * rhs_kato else None
        ),
        kato_ponce=hs_norm(product, sigma) / rhs_kato,
    )


def product_law_corpus(
    grid: Grid,
    rng: np.random.Generator,
    n_pairs: int,
    sigma: float = 0.75,
    delta: float = 0.25,
) -> Dict[str, float]:
    """
    Worst measured ratios over random smooth pairs

    Returns:
        {"product_law": max ratio, "kato_ponce": max ratio, "pairs": n}
    """
    worst = {"product_law": 0.0, "kato_ponce": 0.0}
    for _ in range(n_pairs):
        f = random_smooth_field(grid, rng, amplitude=1.0, bandwidth=rng.uniform(1.0, 4.0))
        g = random_smooth_field(grid, rng, amplitude=1.0, bandwidth=rng.uniform(1.0, 4.0))
        ratios = check_product_laws(f, g, sigma, delta)
        if ratios.product_law is not None:
            worst["product_law"] = max(worst["product_law"], ratios.product_law)
        worst["kato_ponce"] = max(worst["kato_ponce"], ratios.kato_ponce)
    logger.info(
        f"product law corpus ({n_pairs} pairs, sigma={sigma:g}, delta={delta:g}): "
        f"max product law {worst['product_law']:.6g}, max Kato-Ponce {worst['kato_ponce']:.6g}"
    )
    return {**worst, "pairs": float(n_pairs)}


def check_time_integrated_endpoint(
    times: np.ndarray,
    l2_series: np.ndarray,
    n_series: np.ndarray,
    h34_series: np.ndarray,
) -> float:
    """
    T^{1/2} ||f||_{Linf_t L2} + ||f||_{L2_t N} - ||f||_{L2_t Hdot^{3/4}}

    Nonnegative whenever the pointwise endpoint inequality holds at every
    sample; time integrals use the trapezoid rule on the sample times.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.size < 2:
        raise ValueError("need at least two samples in time")
    horizon = float(times[-1] - times[0])
    lhs = math.sqrt(float(trapezoid(np.asarray(h34_series) ** 2, x=times)))
    rhs = math.sqrt(horizon) * float(np.max(l2_series)) + math.sqrt(
        float(trapezoid(np.asarray(n_series) ** 2, x=times))
    )
    return rhs - lhs
