"""
The quadratic flux d/dx (u^2 / 2) evaluated pseudospectrally.
"""

import numpy as np
import scipy.fft

from ..spectral.grid import Grid


def derivative_symbol(grid: Grid) -> np.ndarray:
    """i xi with the unpaired Nyquist mode zeroed"""
    symbol = 1j * grid.frequencies
    symbol[grid.nyquist_index] = 0.0
    return symbol


def quadratic_term(coeffs: np.ndarray, grid: Grid, dealias: bool = True) -> np.ndarray:
    """
    Coefficients of d/dx (u^2 / 2) for one state or a stack of states

    With dealias both factors and the product are 2/3-projected, so the
    discrete product is alias free and <d/dx (u^2/2), u> vanishes to roundoff.
    """
    mask = grid.dealias_mask() if dealias else np.ones(grid.n_points)
    samples = scipy.fft.ifft(mask * coeffs, norm="ortho", axis=-1).real
    return derivative_symbol(grid) * mask * scipy.fft.fft(0.5 * samples ** 2, norm="ortho", axis=-1)
