"""
Picard Fixed Point Solver

Iterates the Duhamel map from e0 = G_{eps t}(phi_eps * u0) until successive
iterates agree in sup-in-time L2, and checks the result against the 3 delta
bound of the contraction argument.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import FixedPointDivergenceError, InadmissibleConfigError, QuadratureError
from ..models.report_models import FixedPointReport, IterationTraceRow
from .duhamel import DuhamelState, duhamel_map, initial_path, sup_l2_distance, sup_l2_norm
from .horizon import horizon_terms

logger = logging.getLogger(__name__)


class FixedPointConfig(BaseModel):
    """Constants and controls of one Picard solve"""
    delta: float = Field(..., ge=0, description="Bound on ||e0||")
    c_lin: float = Field(..., ge=0, description="Norm bound of the linear Duhamel map")
    c_bil: float = Field(..., ge=0, description="Bound of the bilinear Duhamel map")
    max_iters: int = Field(default=200, ge=1)
    tol: float = Field(default=1.0e-10, gt=0)

    def conditions(self) -> List[Tuple[str, float]]:
        """The three contraction quantities; each must be < 1"""
        return [
            ("3 c_lin", 3.0 * self.c_lin),
            ("9 c_bil delta", 9.0 * self.c_bil * self.delta),
            ("c_lin + 6 c_bil delta", self.c_lin + 6.0 * self.c_bil * self.delta),
        ]

    @property
    def is_admissible(self) -> bool:
        return all(value < 1.0 for _, value in self.conditions())

    @classmethod
    def from_measured(
        cls,
        eps: float,
        horizon: float,
        data_norm: float,
        c_lin_hat: float,
        c_bil_hat: float,
        **controls,
    ) -> "FixedPointConfig":
        """Constants at horizon T from the measured operator constants"""
        c_lin, c_bil = horizon_terms(eps, horizon, 1.0, c_lin_hat, c_bil_hat)
        return cls(delta=data_norm, c_lin=c_lin, c_bil=c_bil, **controls)


def _observed_ratio(distances: List[float]) -> Optional[float]:
    """Geometric mean of successive distance ratios over the tail of the trace"""
    positive = [d for d in distances if d > 0.0]
    if len(positive) < 3:
        return None
    tail = np.asarray(positive[-min(len(positive), 6):])
    ratios = tail[1:] / tail[:-1]
    return float(np.exp(np.mean(np.log(ratios))))


def solve_fixed_point(state: DuhamelState, cfg: FixedPointConfig) -> Tuple[np.ndarray, FixedPointReport]:
    """
    Picard iteration for the mild solution on the state's nodes

    Args:
        state: Mollified problem
        cfg: Admissible constants and iteration controls

    Returns:
        (path of converged coefficients, report)

    Raises:
        InadmissibleConfigError: If cfg violates a contraction condition
        FixedPointDivergenceError: If max_iters is reached first
    """
    if not cfg.is_admissible:
        failed = ", ".join(f"{name}={value:.4g}" for name, value in cfg.conditions() if value >= 1.0)
        raise InadmissibleConfigError(f"contraction conditions violated: {failed}")

    grid = state.grid
    bound = 3.0 * cfg.delta
    current = initial_path(state)
    trace: List[IterationTraceRow] = []

    for iteration in range(1, cfg.max_iters + 1):
        updated = duhamel_map(current, state)
        distance = sup_l2_distance(updated, current, grid)
        trace.append(IterationTraceRow(iteration=iteration, distance=distance, bound=bound))
        current = updated
        if not math.isfinite(distance):
            raise FixedPointDivergenceError(f"Picard iterate became non-finite at iteration {iteration}", trace)
        if distance < cfg.tol:
            break
    else:
        raise FixedPointDivergenceError(
            f"no convergence within {cfg.max_iters} iterations on {state.describe()}; shrink the horizon",
            trace,
        )

    sup_norm = sup_l2_norm(current, grid)
    residual = sup_l2_distance(duhamel_map(current, state), current, grid)
    report = FixedPointReport(
        converged=True,
        iterations=len(trace),
        trace=trace,
        sup_norm=sup_norm,
        delta=cfg.delta,
        within_bound=sup_norm <= bound * (1.0 + cfg.tol),
        contraction_ratio=_observed_ratio([row.distance for row in trace]),
        fixed_point_residual=residual,
        n_nodes=state.n_nodes,
        horizon=state.horizon,
    )
    logger.info(
        f"Picard converged in {report.iterations} iterations on {state.describe()}: "
        f"sup norm {sup_norm:.6g} (bound {bound:.6g}), ratio {report.contraction_ratio}"
    )
    return current, report


def solve_with_node_refinement(
    state: DuhamelState,
    cfg: FixedPointConfig,
    quadrature_tol: Optional[float] = None,
    max_nodes: int = 1025,
) -> Tuple[np.ndarray, FixedPointReport, DuhamelState]:
    """
    Double the time nodes until the solution on the shared nodes stops changing

    Args:
        state: Starting problem
        cfg: Picard constants
        quadrature_tol: Accepted sup-in-time change, 0.1 * cfg.tol by default
        max_nodes: Largest node count tried

    Returns:
        (finest path, its report, its state)

    Raises:
        QuadratureError: If the change is still above quadrature_tol at max_nodes
    """
    quadrature_tol = 0.1 * cfg.tol if quadrature_tol is None else quadrature_tol
    path, report = solve_fixed_point(state, cfg)
    while True:
        finer = state.refined()
        if finer.n_nodes > max_nodes:
            raise QuadratureError(
                f"time quadrature not converged below {quadrature_tol:g} with {state.n_nodes} nodes"
            )
        finer_path, finer_report = solve_fixed_point(finer, cfg)
        change = sup_l2_distance(finer_path[::2], path, state.grid)
        logger.debug(f"node doubling {state.n_nodes} -> {finer.n_nodes}: change {change:.3g}")
        state, path, report = finer, finer_path, finer_report
        if change < quadrature_tol:
            return path, report, state
