"""
SpectralField

A real field on a Grid held as samples and/or unitary Fourier coefficients.
Whichever representation the field was built from is authoritative; the
other one is computed on first access and cached.
"""

from enum import Enum
from typing import Callable, Optional

import numpy as np

from ..exceptions import GridMismatchError, TransformSizeError
from .grid import Grid
from .transforms import forward, inverse


class Authority(str, Enum):
    """Which representation the field was built from"""
    SAMPLES = "samples"
    COEFFS = "coeffs"


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.setflags(write=False)
    return values


class SpectralField:
    """
    Immutable field on a periodic grid

    Arithmetic returns new fields; the stored arrays are read-only.
    """

    __slots__ = ("grid", "_samples", "_coeffs", "authority")

    def __init__(
        self,
        grid: Grid,
        samples: Optional[np.ndarray] = None,
        coeffs: Optional[np.ndarray] = None,
    ):
        if (samples is None) == (coeffs is None):
            raise ValueError("Provide exactly one of samples or coeffs")
        self.grid = grid
        self._samples: Optional[np.ndarray] = None
        self._coeffs: Optional[np.ndarray] = None
        if samples is not None:
            samples = np.asarray(samples, dtype=np.float64)
            if samples.shape != (grid.n_points,):
                raise TransformSizeError(
                    f"Samples of shape {samples.shape} do not match {grid.describe()}"
                )
            self._samples = _frozen(samples)
            self.authority = Authority.SAMPLES
        else:
            coeffs = np.asarray(coeffs, dtype=np.complex128)
            if coeffs.shape != (grid.n_points,):
                raise TransformSizeError(
                    f"Coefficients of shape {coeffs.shape} do not match {grid.describe()}"
                )
            self._coeffs = _frozen(coeffs)
            self.authority = Authority.COEFFS

    # Constructors

    @classmethod
    def from_samples(cls, grid: Grid, samples) -> "SpectralField":
        return cls(grid, samples=samples)

    @classmethod
    def from_coeffs(cls, grid: Grid, coeffs) -> "SpectralField":
        return cls(grid, coeffs=coeffs)

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "SpectralField":
        return cls(grid, samples=fn(grid.x))

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, coeffs=np.zeros(grid.n_points, dtype=np.complex128))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "SpectralField":
        return cls(grid, samples=np.full(grid.n_points, float(value)))

    # Representations

    @property
    def samples(self) -> np.ndarray:
        if self._samples is None:
            self._samples = _frozen(inverse(self._coeffs))
        return self._samples

    @property
    def coeffs(self) -> np.ndarray:
        if self._coeffs is None:
            self._coeffs = _frozen(forward(self._samples))
        return self._coeffs

    # Arithmetic

    def _check_grid(self, other: "SpectralField"):
        if not self.grid.same_as(other.grid):
            raise GridMismatchError(
                f"{self.grid.describe()} does not match {other.grid.describe()}"
            )

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_grid(other)
        return SpectralField.from_coeffs(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_grid(other)
        return SpectralField.from_coeffs(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField.from_coeffs(self.grid, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return self * -1.0

    def with_multiplier(self, values: np.ndarray) -> "SpectralField":
        """Coefficient-wise product with a table on this grid"""
        return SpectralField.from_coeffs(self.grid, np.asarray(values) * self.coeffs)

    def derivative(self, order: int = 1) -> "SpectralField":
        """(i xi)^order with the unpaired Nyquist mode dropped for odd orders"""
        symbol = (1j * self.grid.frequencies) ** order
        if order % 2:
            symbol = symbol.copy()
            symbol[self.grid.nyquist_index] = 0.0
        return self.with_multiplier(symbol)

    def dealiased(self) -> "SpectralField":
        return self.with_multiplier(self.grid.dealias_mask())

    def product(self, other: "SpectralField", dealias: bool = True) -> "SpectralField":
        """Pointwise product; with dealias both factors and the result are 2/3-projected"""
        self._check_grid(other)
        if not dealias:
            return SpectralField.from_samples(self.grid, self.samples * other.samples)
        mask = self.grid.dealias_mask()
        a = inverse(mask * self.coeffs)
        b = inverse(mask * other.coeffs)
        return SpectralField.from_coeffs(self.grid, mask * forward(a * b))

    def inner(self, other: "SpectralField") -> float:
        """Discrete L2 inner product dx * sum c conj(d)"""
        self._check_grid(other)
        return float(self.grid.dx * np.real(np.vdot(other.coeffs, self.coeffs)))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples)))

    def is_finite(self) -> bool:
        if self._coeffs is not None:
            return bool(np.all(np.isfinite(self._coeffs)))
        return bool(np.all(np.isfinite(self._samples)))

    def copy(self) -> "SpectralField":
        if self.authority is Authority.SAMPLES:
            return SpectralField.from_samples(self.grid, self.samples)
        return SpectralField.from_coeffs(self.grid, self.coeffs)

    def __repr__(self) -> str:
        return f"SpectralField({self.grid.describe()}, authority={self.authority.value})"


def boundary_mass_fraction(f: SpectralField, margin: float = 0.1) -> float:
    """
    Share of ||f||^2 carried by points within margin*L of the torus edge

    Args:
        f: Field to inspect
        margin: Fraction of the half length counted as boundary layer

    Returns:
        Boundary mass fraction in [0, 1]; 0 for the zero field
    """
    x = f.grid.x
    edge = np.abs(x) >= (1.0 - margin) * f.grid.half_length
    total = float(np.sum(f.samples ** 2))
    if total == 0.0:
        return 0.0
    return float(np.sum(f.samples[edge] ** 2)) / total
