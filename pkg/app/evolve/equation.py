"""
Evolution Laws

Both variants are written as u_t = -L u + N(u) on the Fourier side:

    modified:        L = eps xi^2 (1 + xi^2) + |xi| m(xi)
    whitham_classic: L = eps xi^2 (1 + xi^2) + i xi m(xi)

and N(u) = d/dx (u^2 / 2) in both.
"""

import numpy as np

from ..models.config_models import EquationVariant, SolverConfig
from ..operators.nonlinear import derivative_symbol, quadratic_term
from ..operators.symbols import SymbolName, symbol_values
from ..spectral.field import SpectralField
from ..spectral.grid import Grid


def linear_symbol(grid: Grid, variant: EquationVariant, epsilon: float) -> np.ndarray:
    """Complex table L with u_t = -L u + N(u)"""
    xi = grid.frequencies
    hyper = epsilon * symbol_values(SymbolName.HYPERVISCOUS_ELL, xi)
    if variant == EquationVariant.MODIFIED:
        return (hyper + symbol_values(SymbolName.DISSIPATION_A, xi)).astype(np.complex128)
    return hyper + derivative_symbol(grid) * symbol_values(SymbolName.WHITHAM_M, xi)


class EvolutionLaw:
    """Linear table and nonlinear term of one configured equation"""

    __slots__ = ("grid", "variant", "epsilon", "nonlinear", "dealias", "linear")

    def __init__(self, cfg: SolverConfig, grid: Grid):
        self.grid = grid
        self.variant = cfg.variant
        self.epsilon = cfg.epsilon
        self.nonlinear = cfg.equation.nonlinear
        self.dealias = cfg.stepper.dealias
        linear = linear_symbol(grid, self.variant, self.epsilon)
        linear.setflags(write=False)
        self.linear = linear

    @property
    def is_dissipative(self) -> bool:
        return self.variant == EquationVariant.MODIFIED

    def nonlinear_term(self, coeffs: np.ndarray) -> np.ndarray:
        if not self.nonlinear:
            return np.zeros_like(coeffs)
        return quadratic_term(coeffs, self.grid, self.dealias)

    def max_retained_frequency(self) -> float:
        return self.grid.dealias_cutoff() if self.dealias else self.grid.max_frequency


def nonlinear_residual(u: SpectralField, dealias: bool = True) -> float:
    """
    |<d/dx (u^2/2), u>| / (||u||^2 max|xi|)

    Zero for the zero field. With dealiasing the inner product is a triple
    product of band-limited modes and vanishes to roundoff.
    """
    grid = u.grid
    coeffs = u.coeffs
    energy = grid.dx * float(np.sum(np.abs(coeffs) ** 2))
    if energy == 0.0:
        return 0.0
    flux = quadratic_term(coeffs, grid, dealias)
    inner = grid.dx * float(np.real(np.vdot(coeffs, flux)))
    return abs(inner) / (energy * grid.max_frequency)
