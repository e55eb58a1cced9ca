"""
Fourier Multiplier Symbols

The dispersion symbol m(xi) = sqrt((1 + xi^2) tanh(xi) / xi), the dissipation
|xi| m(xi), the hyperviscous symbol xi^2 (1 + xi^2) and the plain powers used
by the heat, quartic and fractional Laplacian operators.
"""

from enum import Enum
from typing import Optional, Union

import numpy as np

from ..exceptions import GridMismatchError
from ..spectral.field import SpectralField
from ..spectral.grid import Grid

# Below this |xi| the tanh(xi)/xi quotient is replaced by its Taylor series
TANHC_SERIES_CUTOFF = 1.0e-4

ArrayLike = Union[float, np.ndarray]


class SymbolName(str, Enum):
    """Named symbols"""
    WHITHAM_M = "whitham_m"
    DISSIPATION_A = "dissipation_a"
    HYPERVISCOUS_ELL = "hyperviscous_ell"
    HEAT_SQ = "heat_sq"
    QUARTIC = "quartic"
    FRAC_LAPLACIAN = "frac_laplacian"


def _scalar_or_array(values: np.ndarray, like) -> ArrayLike:
    return float(values) if np.ndim(like) == 0 else values


def tanhc(xi: ArrayLike) -> ArrayLike:
    """tanh(xi)/xi with the removable singularity at 0"""
    x = np.asarray(xi, dtype=np.float64)
    out = np.empty_like(x)
    small = np.abs(x) < TANHC_SERIES_CUTOFF
    x2 = x[small] ** 2
    out[small] = 1.0 - x2 / 3.0 + 2.0 * x2 ** 2 / 15.0
    large = ~small
    out[large] = np.tanh(x[large]) / x[large]
    return _scalar_or_array(out, xi)


def eval_whitham_m(xi: ArrayLike) -> ArrayLike:
    """m(xi) = sqrt((1 + xi^2) tanhc(xi)); m(0) == 1 exactly"""
    x = np.asarray(xi, dtype=np.float64)
    values = np.sqrt((1.0 + x ** 2) * np.asarray(tanhc(x)))
    return _scalar_or_array(values, xi)


def symbol_values(name: SymbolName, xi: ArrayLike, s: Optional[float] = None) -> np.ndarray:
    """Evaluate a named symbol at arbitrary frequencies"""
    x = np.asarray(xi, dtype=np.float64)
    name = SymbolName(name)
    if name == SymbolName.WHITHAM_M:
        return np.asarray(eval_whitham_m(x))
    if name == SymbolName.DISSIPATION_A:
        return np.abs(x) * np.asarray(eval_whitham_m(x))
    if name == SymbolName.HYPERVISCOUS_ELL:
        return x ** 2 * (1.0 + x ** 2)
    if name == SymbolName.HEAT_SQ:
        return x ** 2
    if name == SymbolName.QUARTIC:
        return x ** 4
    if s is None or s < 0:
        raise ValueError("frac_laplacian needs an exponent s >= 0")
    return np.abs(x) ** (2.0 * s)


class MultiplierSymbol:
    """
    A named nonnegative even symbol sampled on a grid

    Values are precomputed in FFT order and read-only.
    """

    __slots__ = ("name", "grid", "s", "values")

    def __init__(self, name: Union[SymbolName, str], grid: Grid, s: Optional[float] = None):
        self.name = SymbolName(name)
        self.grid = grid
        self.s = s if self.name == SymbolName.FRAC_LAPLACIAN else None
        values = symbol_values(self.name, grid.frequencies, self.s)
        values.setflags(write=False)
        self.values = values

    @property
    def label(self) -> str:
        if self.name == SymbolName.FRAC_LAPLACIAN:
            return f"frac_laplacian({self.s:g})"
        return self.name.value

    def on_grid(self, grid: Grid) -> "MultiplierSymbol":
        """Same formula sampled on another grid"""
        return MultiplierSymbol(self.name, grid, self.s)

    def is_even(self, tol: float = 0.0) -> bool:
        """value(-xi) == value(xi) for every paired mode"""
        mirrored = np.roll(self.values[::-1], 1)
        paired = np.ones(self.grid.n_points, dtype=bool)
        paired[self.grid.nyquist_index] = False
        return bool(np.all(np.abs(mirrored[paired] - self.values[paired]) <= tol))

    def apply(self, f: SpectralField) -> SpectralField:
        return apply_multiplier(self, f)

    def __repr__(self) -> str:
        return f"MultiplierSymbol({self.label}, {self.grid.describe()})"


def make_symbol(name: Union[SymbolName, str], grid: Grid, s: Optional[float] = None) -> MultiplierSymbol:
    return MultiplierSymbol(name, grid, s)


def apply_multiplier(sym: MultiplierSymbol, f: SpectralField) -> SpectralField:
    """
    Coefficient-wise product with a real even symbol

    Raises:
        GridMismatchError: If the symbol was sampled on another grid
    """
    if not sym.grid.same_as(f.grid):
        raise GridMismatchError(f"{sym!r} cannot act on a field on {f.grid.describe()}")
    return f.with_multiplier(sym.values)


def endpoint_margin(xi: ArrayLike) -> np.ndarray:
    """(1 + xi^2) tanh|xi| - xi^2, nonnegative for every real xi"""
    x = np.abs(np.asarray(xi, dtype=np.float64))
    return (1.0 + x ** 2) * np.tanh(x) - x ** 2
