"""
Periodic Grid

Uniform grid on the torus [-L, L) with frequencies in standard FFT order.
"""

from functools import lru_cache
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from ..exceptions import GridError

MIN_POINTS = 8


@lru_cache(maxsize=64)
def _mode_indices(n_points: int) -> np.ndarray:
    indices = np.fft.fftfreq(n_points, d=1.0 / n_points).round().astype(np.int64)
    indices.setflags(write=False)
    return indices


@lru_cache(maxsize=64)
def _wavenumbers(n_points: int, half_length: float) -> np.ndarray:
    xi = (math.pi / half_length) * _mode_indices(n_points).astype(np.float64)
    xi.setflags(write=False)
    return xi


@lru_cache(maxsize=64)
def _positions(n_points: int, half_length: float) -> np.ndarray:
    dx = 2.0 * half_length / n_points
    x = -half_length + dx * np.arange(n_points, dtype=np.float64)
    x.setflags(write=False)
    return x


class Grid(BaseModel):
    """Immutable periodic grid; arrays are cached per (n_points, half_length)"""

    model_config = ConfigDict(frozen=True)

    n_points: int
    half_length: float

    @field_validator('n_points')
    @classmethod
    def check_n_points(cls, v: int) -> int:
        if v < MIN_POINTS:
            raise ValueError(f"n_points must be >= {MIN_POINTS}, got {v}")
        if v % 2:
            raise ValueError(f"n_points must be even, got {v}")
        return v

    @field_validator('half_length')
    @classmethod
    def check_half_length(cls, v: float) -> float:
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"half_length must be positive and finite, got {v}")
        return v

    @property
    def dx(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def dxi(self) -> float:
        """Frequency spacing pi / L"""
        return math.pi / self.half_length

    @property
    def x(self) -> np.ndarray:
        return _positions(self.n_points, self.half_length)

    @property
    def mode_indices(self) -> np.ndarray:
        """Integer k for every stored coefficient"""
        return _mode_indices(self.n_points)

    @property
    def frequencies(self) -> np.ndarray:
        """xi_k = pi k / L in FFT order"""
        return _wavenumbers(self.n_points, self.half_length)

    @property
    def nyquist_index(self) -> int:
        """Storage position of the unpaired -n/2 mode"""
        return self.n_points // 2

    @property
    def max_frequency(self) -> float:
        return math.pi * self.n_points / (2.0 * self.half_length)

    def dealias_mask(self) -> np.ndarray:
        """2/3 rule: keep |k| < n/3"""
        return (3 * np.abs(self.mode_indices) < self.n_points).astype(np.float64)

    def dealias_cutoff(self) -> float:
        """Largest retained |xi| under the 2/3 rule"""
        kept = np.abs(self.frequencies)[self.dealias_mask() > 0]
        return float(kept.max())

    def refined(self, factor: int = 2) -> "Grid":
        """Same torus, factor times more points"""
        return make_grid(self.n_points * factor, self.half_length)

    def enlarged(self, factor: int = 2) -> "Grid":
        """Torus scaled by factor with the same dx"""
        return make_grid(self.n_points * factor, self.half_length * factor)

    def same_as(self, other: "Grid") -> bool:
        return self.n_points == other.n_points and self.half_length == other.half_length

    def describe(self) -> str:
        return f"Grid(n={self.n_points}, L={self.half_length:.6g})"


def make_grid(n_points: int, half_length: float) -> Grid:
    """
    Build a validated periodic grid

    Args:
        n_points: Even number of points, at least 8
        half_length: Half length L of the torus [-L, L)

    Returns:
        Grid

    Raises:
        GridError: If n_points is odd or too small, or half_length is not positive
    """
    try:
        return Grid(n_points=n_points, half_length=half_length)
    except ValidationError as e:
        raise GridError(str(e)) from e
