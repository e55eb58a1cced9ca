"""
Unitary discrete Fourier transform pair.

Coefficients use norm="ortho" so that sum|f_j|^2 == sum|c_k|^2.
"""

from typing import Optional

import numpy as np
import scipy.fft

from ..exceptions import TransformSizeError
from .grid import Grid


def _check_size(values: np.ndarray, grid: Optional[Grid]):
    if values.ndim != 1:
        raise TransformSizeError(f"Expected a 1-d array, got shape {values.shape}")
    if grid is not None and values.shape[0] != grid.n_points:
        raise TransformSizeError(
            f"Array of length {values.shape[0]} does not match {grid.describe()}"
        )


def forward(samples, grid: Optional[Grid] = None) -> np.ndarray:
    """Samples -> unitary coefficients in FFT order"""
    values = np.asarray(samples, dtype=np.float64)
    _check_size(values, grid)
    return scipy.fft.fft(values, norm="ortho")


def inverse(coeffs, grid: Optional[Grid] = None) -> np.ndarray:
    """Coefficients -> real samples; the imaginary roundoff is dropped"""
    values = np.asarray(coeffs, dtype=np.complex128)
    _check_size(values, grid)
    return scipy.fft.ifft(values, norm="ortho").real


def direct_dft(samples) -> np.ndarray:
    """O(n^2) summation with the same normalization as forward"""
    values = np.asarray(samples, dtype=np.float64)
    _check_size(values, None)
    n = values.shape[0]
    j = np.arange(n)
    phase = np.exp(-2j * np.pi * np.outer(j, j) / n)
    return phase @ values / np.sqrt(n)


def hermitian_defect(coeffs) -> float:
    """max |c(-k) - conj(c(k))|; zero for coefficients of real samples"""
    values = np.asarray(coeffs, dtype=np.complex128)
    mirrored = np.roll(values[::-1], 1)
    return float(np.max(np.abs(mirrored - np.conj(values)))) if values.size else 0.0
