"""
Norm Functionals

L2, homogeneous and inhomogeneous Sobolev norms, the dissipation norm
||f||_N^2 = sum |xi| m(xi) |f_k|^2 dx and the grid L-infinity norm.
Everything except L-infinity is computed on the Fourier side.
"""

import math
from typing import Iterable

import numpy as np

from ..models.run_models import NormReport
from ..operators.symbols import SymbolName, symbol_values
from ..spectral.field import SpectralField
from ..spectral.grid import Grid


def _weighted_sq(grid: Grid, coeffs: np.ndarray, weight: np.ndarray) -> float:
    return grid.dx * float(np.sum(weight * np.abs(coeffs) ** 2))


def homogeneous_weight(grid: Grid, sigma: float) -> np.ndarray:
    """|xi|^{2 sigma} with the xi = 0 mode excluded"""
    xi = np.abs(grid.frequencies)
    weight = np.zeros_like(xi)
    nonzero = xi > 0
    weight[nonzero] = xi[nonzero] ** (2.0 * sigma)
    if sigma == 0:
        weight[~nonzero] = 1.0
    return weight


def l2_norm(f: SpectralField) -> float:
    return math.sqrt(_weighted_sq(f.grid, f.coeffs, np.ones(f.grid.n_points)))


def l2_norm_samples(f: SpectralField) -> float:
    """Sample-side L2 norm, for Parseval consistency checks"""
    return math.sqrt(f.grid.dx * float(np.sum(f.samples ** 2)))


def hs_norm(f: SpectralField, sigma: float) -> float:
    """||(-Delta)^{sigma/2} f||; sigma = 0 is the L2 norm"""
    return math.sqrt(_weighted_sq(f.grid, f.coeffs, homogeneous_weight(f.grid, sigma)))


def inhomogeneous_hs_norm(f: SpectralField, s: float) -> float:
    """(sum (1 + xi^2)^s |f_k|^2 dx)^{1/2}"""
    weight = (1.0 + f.grid.frequencies ** 2) ** s
    return math.sqrt(_weighted_sq(f.grid, f.coeffs, weight))


def n_norm(f: SpectralField) -> float:
    weight = symbol_values(SymbolName.DISSIPATION_A, f.grid.frequencies)
    return math.sqrt(_weighted_sq(f.grid, f.coeffs, weight))


def hyperviscous_norm(f: SpectralField) -> float:
    """||L^{1/2} f|| with symbol xi^2 (1 + xi^2)"""
    weight = symbol_values(SymbolName.HYPERVISCOUS_ELL, f.grid.frequencies)
    return math.sqrt(_weighted_sq(f.grid, f.coeffs, weight))


def linf_norm(f: SpectralField) -> float:
    return f.max_abs()


def compute_norms(f: SpectralField, exponents: Iterable[float] = (), t: float = 0.0) -> NormReport:
    """
    All norms of one field

    Args:
        f: Field
        exponents: Sobolev exponents sigma >= 0 for the hs map
        t: Timestamp recorded on the report

    Returns:
        NormReport

    Raises:
        ValueError: If an exponent is negative
    """
    exponents = sorted(set(float(s) for s in exponents))
    if any(s < 0 for s in exponents):
        raise ValueError("Sobolev exponents must be >= 0")
    return NormReport(
        t=t,
        l2=l2_norm(f),
        hs={s: hs_norm(f, s) for s in exponents},
        n_norm=n_norm(f),
        linf=linf_norm(f),
    )


def tail_fraction(f: SpectralField, band_fraction: float = 2.0 / 3.0, dealias: bool = True) -> float:
    """
    Share of ||f||^2 in the outer part of the resolved band

    The resolved band is |k| < n/3 with dealiasing, |k| <= n/2 without;
    the tail is everything beyond band_fraction of that cutoff.
    """
    k = np.abs(f.grid.mode_indices)
    cutoff = f.grid.n_points / 3.0 if dealias else f.grid.n_points / 2.0
    energy = np.abs(f.coeffs) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    return float(np.sum(energy[k > band_fraction * cutoff])) / total


def sobolev_tail_fraction(f: SpectralField, sigma: float, band_fraction: float = 2.0 / 3.0,
                          dealias: bool = True) -> float:
    """Like tail_fraction but for the Hdot^sigma weighted energy"""
    k = np.abs(f.grid.mode_indices)
    cutoff = f.grid.n_points / 3.0 if dealias else f.grid.n_points / 2.0
    energy = homogeneous_weight(f.grid, sigma) * np.abs(f.coeffs) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0
    return float(np.sum(energy[k > band_fraction * cutoff])) / total