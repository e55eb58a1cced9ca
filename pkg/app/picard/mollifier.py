"""
Gaussian mollifier phi_eps with Fourier transform exp(-(eps xi)^2 / 2).
"""

import math
from typing import Iterable, List

import numpy as np

from ..exceptions import ZeroFieldError
from ..models.report_models import RegularityRow
from ..norms.functionals import hs_norm, l2_norm
from ..spectral.field import SpectralField

# sup_x x^{1/2} e^{-x^2/2} and sup_x x e^{-x^2/2}
HALF_DERIVATIVE_BOUND = 2.0 ** -0.25 * math.exp(-0.25)
FULL_DERIVATIVE_BOUND = math.exp(-0.5)


def mollifier_multiplier(xi: np.ndarray, eps: float) -> np.ndarray:
    return np.exp(-0.5 * (eps * xi) ** 2)


def mollify(u0: SpectralField, eps: float) -> SpectralField:
    """
    phi_eps * u0 as a Fourier-side product

    Raises:
        ValueError: If eps <= 0
    """
    if eps <= 0:
        raise ValueError(f"mollifier scale must be positive, got {eps}")
    return u0.with_multiplier(mollifier_multiplier(u0.grid.frequencies, eps))


def mollifier_regularity(u0: SpectralField, eps_list: Iterable[float]) -> List[RegularityRow]:
    """
    Hdot^{1/2} and Hdot^1 norms of mollified data with their eps-scaled constants

    c_half = ||phi_eps * u0||_{Hdot^{1/2}} eps^{1/2} / ||u0|| never exceeds
    HALF_DERIVATIVE_BOUND, c_one never exceeds FULL_DERIVATIVE_BOUND.

    Raises:
        ZeroFieldError: If u0 vanishes
    """
    norm = l2_norm(u0)
    if norm == 0.0:
        raise ZeroFieldError("mollifier regularity of the zero field")
    rows = []
    for eps in sorted(float(e) for e in eps_list):
        smooth = mollify(u0, eps)
        h_half = hs_norm(smooth, 0.5)
        h_one = hs_norm(smooth, 1.0)
        rows.append(RegularityRow(
            epsilon=eps,
            h_half=h_half,
            h_one=h_one,
            c_half=h_half * math.sqrt(eps) / norm,
            c_one=h_one * eps / norm,
        ))
    return rows
