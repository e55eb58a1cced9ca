"""
Duhamel Map

Integral form of the mollified system

    u(t) = G_{eps t} (phi_eps * u0)
           + int_0^t G_{eps (t-s)} [ -(-Delta)^{1/2} M u(s) + d/dx (u(s)^2 / 2) ] ds

on uniform time nodes. A path is an array of Fourier coefficients with one
row per node; the s-integral is a composite trapezoid over the nodes up to t
with the semigroup factor evaluated exactly at every t - s.
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from ..exceptions import TransformSizeError
from ..operators.nonlinear import quadratic_term
from ..operators.symbols import SymbolName, symbol_values
from ..spectral.field import SpectralField
from ..spectral.grid import Grid
from .mollifier import mollify

logger = logging.getLogger(__name__)

DEFAULT_NODES = 33


class DuhamelState:
    """
    Data of one mollified problem: eps, grid, phi_eps * u0, horizon and nodes

    Args:
        u0_mollified: Mollified initial data
        epsilon: Hyperviscosity strength, > 0
        horizon: Final time T, > 0
        n_nodes: Number of uniform time nodes including t = 0 and t = T
        nonlinear: Include d/dx (u^2 / 2)
    """

    __slots__ = ("grid", "u0_mollified", "epsilon", "horizon", "n_nodes", "nonlinear")

    def __init__(
        self,
        u0_mollified: SpectralField,
        epsilon: float,
        horizon: float,
        n_nodes: int = DEFAULT_NODES,
        nonlinear: bool = True,
    ):
        if epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        if horizon <= 0:
            raise ValueError(f"horizon must be positive, got {horizon}")
        if n_nodes < 2:
            raise ValueError(f"need at least two time nodes, got {n_nodes}")
        self.grid = u0_mollified.grid
        self.u0_mollified = u0_mollified
        self.epsilon = float(epsilon)
        self.horizon = float(horizon)
        self.n_nodes = int(n_nodes)
        self.nonlinear = nonlinear

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.n_nodes)

    @property
    def node_spacing(self) -> float:
        return self.horizon / (self.n_nodes - 1)

    def with_nodes(self, n_nodes: int) -> "DuhamelState":
        return DuhamelState(self.u0_mollified, self.epsilon, self.horizon, n_nodes, self.nonlinear)

    def refined(self) -> "DuhamelState":
        """Twice as many intervals; old nodes are every other new node"""
        return self.with_nodes(2 * (self.n_nodes - 1) + 1)

    def describe(self) -> str:
        return (
            f"DuhamelState(eps={self.epsilon:g}, T={self.horizon:g}, nodes={self.n_nodes}, "
            f"{self.grid.describe()})"
        )


def make_duhamel_state(
    u0: SpectralField,
    epsilon: float,
    horizon: float,
    n_nodes: int = DEFAULT_NODES,
    nonlinear: bool = True,
) -> DuhamelState:
    """Mollify u0 at scale eps and wrap it in a DuhamelState"""
    return DuhamelState(mollify(u0, epsilon), epsilon, horizon, n_nodes, nonlinear)


def _hyper_symbol(grid: Grid) -> np.ndarray:
    return symbol_values(SymbolName.HYPERVISCOUS_ELL, grid.frequencies)


def _dissipation_symbol(grid: Grid) -> np.ndarray:
    return symbol_values(SymbolName.DISSIPATION_A, grid.frequencies)


def right_hand_side(coeffs: np.ndarray, state: DuhamelState) -> np.ndarray:
    """-(-Delta)^{1/2} M u + d/dx (u^2 / 2), without the eps L part"""
    rhs = -_dissipation_symbol(state.grid) * coeffs
    if state.nonlinear:
        rhs = rhs + quadratic_term(coeffs, state.grid)
    return rhs


def _check_path(path: np.ndarray, state: DuhamelState):
    if path.shape != (state.n_nodes, state.grid.n_points):
        raise TransformSizeError(
            f"path of shape {path.shape} does not match {state.n_nodes} nodes on {state.grid.describe()}"
        )


def initial_path(state: DuhamelState) -> np.ndarray:
    """e0(t) = G_{eps t} (phi_eps * u0) at every node"""
    decay = np.exp(-state.epsilon * np.outer(state.nodes, _hyper_symbol(state.grid)))
    return decay * state.u0_mollified.coeffs[np.newaxis, :]


def duhamel_map(path: np.ndarray, state: DuhamelState) -> np.ndarray:
    """
    Right-hand side of the integral equation at every node

    Args:
        path: Coefficients of u, shape (n_nodes, n_points)
        state: Problem data

    Returns:
        New path of the same shape

    Raises:
        TransformSizeError: If the path does not match the nodes and grid
    """
    path = np.asarray(path, dtype=np.complex128)
    _check_path(path, state)
    nodes = state.nodes
    ell = _hyper_symbol(state.grid)
    forcing = right_hand_side(path, state)

    out = initial_path(state)
    for i in range(1, state.n_nodes):
        lags = nodes[i] - nodes[: i + 1]
        integrand = np.exp(-state.epsilon * np.outer(lags, ell)) * forcing[: i + 1]
        out[i] = out[i] + trapezoid(integrand, x=nodes[: i + 1], axis=0)
    return out


def sup_l2_distance(a: np.ndarray, b: np.ndarray, grid: Grid) -> float:
    """sup over nodes of the L2 norm of a - b"""
    return math.sqrt(grid.dx * float(np.max(np.sum(np.abs(a - b) ** 2, axis=1))))


def sup_l2_norm(path: np.ndarray, grid: Grid) -> float:
    return math.sqrt(grid.dx * float(np.max(np.sum(np.abs(path) ** 2, axis=1))))


def path_field(path: np.ndarray, state: DuhamelState, index: int) -> SpectralField:
    """One node of a path as a SpectralField"""
    return SpectralField.from_coeffs(state.grid, path[index])


def pde_residual(path: np.ndarray, state: DuhamelState) -> float:
    """
    sup over interior nodes of || du/dt + eps L u + (-Delta)^{1/2} M u - d/dx (u^2 / 2) ||

    du/dt is the central difference on the nodes, so the residual of an
    accurate mild solution decreases at second order under node refinement.
    """
    path = np.asarray(path, dtype=np.complex128)
    _check_path(path, state)
    if state.n_nodes < 3:
        raise ValueError("pde_residual needs at least three nodes")
    h = state.node_spacing
    dudt = (path[2:] - path[:-2]) / (2.0 * h)
    interior = path[1:-1]
    residual = dudt + state.epsilon * _hyper_symbol(state.grid) * interior - right_hand_side(interior, state)
    return sup_l2_norm(residual, state.grid)


def single_mode_decay(state: DuhamelState, xi: Optional[float] = None) -> np.ndarray:
    """
    exp(-t (eps ell + |xi| m)) at every node, the linear per-mode solution

    With xi omitted, returns the table for every grid frequency.
    """
    freqs = state.grid.frequencies if xi is None else np.array([xi], dtype=np.float64)
    rate = state.epsilon * symbol_values(SymbolName.HYPERVISCOUS_ELL, freqs) + symbol_values(
        SymbolName.DISSIPATION_A, freqs
    )
    table = np.exp(-np.outer(state.nodes, rate))
    return table if xi is None else table[:, 0]

