"""
Twin-Run Stability

Evolves u from u0 and v from u0 + perturbation under the same configuration.
The difference w = u - v obeys

    w_t = -|D| M w + d/dx (w (u + v) / 2)

so ||w(t)||^2 <= ||w(0)||^2 exp(K t) with K = 2 c sup_t (||u_x||_inf + ||v_x||_inf)
and c = 1/4 from the integration by parts of the transport term.
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
import scipy.fft

from ..evolve.solver import grid_for, run
from ..exceptions import MemberRunError
from ..models.config_models import SolverConfig
from ..models.report_models import LinearResponseRow, LinearResponseTable, TwinRunReport
from ..models.run_models import RunRecord
from ..operators.nonlinear import derivative_symbol, quadratic_term
from ..spectral.field import SpectralField
from ..spectral.grid import Grid
from ..utils.logging_config import log_measurement
from ..utils.parallel import map_members

logger = logging.getLogger(__name__)

BOOKKEEPING_CONSTANT = 0.25
ENVELOPE_SLACK = 1.0e-6
LINEAR_RESPONSE_TOL = 0.05


def gradient_monitor(record: RunRecord) -> float:
    """sup_t ||u_x||_inf over the recorded samples"""
    if not record.samples:
        return 0.0
    return float(np.max(record.series("dx_linf")))


def difference_flux(w: np.ndarray, total: np.ndarray, grid: Grid, dealias: bool = True) -> np.ndarray:
    """Coefficients of d/dx (w (u + v) / 2) given w = u - v and total = u + v"""
    mask = grid.dealias_mask() if dealias else np.ones(grid.n_points)
    w_samples = scipy.fft.ifft(mask * w, norm="ortho").real
    total_samples = scipy.fft.ifft(mask * total, norm="ortho").real
    return derivative_symbol(grid) * mask * scipy.fft.fft(0.5 * w_samples * total_samples, norm="ortho")


def _identity_residual(u: np.ndarray, v: np.ndarray, grid: Grid, dealias: bool) -> float:
    """Relative mismatch of N(u) - N(v) against d/dx (w (u + v) / 2)"""
    lhs = quadratic_term(u, grid, dealias) - quadratic_term(v, grid, dealias)
    rhs = difference_flux(u - v, u + v, grid, dealias)
    scale = float(np.linalg.norm(lhs))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(lhs - rhs)) / scale


def run_twins(
    u0: SpectralField,
    perturbation: SpectralField,
    cfg: SolverConfig,
    jobs: int = 1,
) -> Tuple[RunRecord, RunRecord]:
    """
    Raises:
        MemberRunError: If either run raises or does not complete
    """
    outcomes = map_members(lambda data: run(cfg, data), [u0, u0 + perturbation], jobs)
    records = []
    for label, outcome in zip(("u", "v"), outcomes):
        if isinstance(outcome, BaseException):
            raise MemberRunError(f"twin run {label} failed: {outcome}") from outcome
        if not outcome.completed:
            raise MemberRunError(f"twin run {label} ended with {outcome.status.value}: {outcome.error}")
        records.append(outcome)
    return records[0], records[1]


def twin_run_stability(
    u0: SpectralField,
    perturbation: SpectralField,
    cfg: SolverConfig,
    c: float = BOOKKEEPING_CONSTANT,
    jobs: int = 1,
) -> TwinRunReport:
    """
    Difference of two runs against the measured Gronwall envelope

    Args:
        u0: Reference initial data
        perturbation: Added to u0 for the second run
        cfg: Shared configuration
        c: Bookkeeping constant in K
        jobs: Run the twins concurrently when > 1

    Returns:
        TwinRunReport

    Raises:
        MemberRunError: If either run fails
    """
    u, v = run_twins(u0, perturbation, cfg, jobs)
    grid = grid_for(cfg)
    dealias = cfg.stepper.dealias

    w = u.state_matrix() - v.state_matrix()
    difference_sq = grid.dx * np.sum(np.abs(w) ** 2, axis=1)
    times = u.times
    k = 2.0 * c * float(np.max(u.series("dx_linf") + v.series("dx_linf")))
    envelope = difference_sq[0] * np.exp(k * times)
    below = bool(np.all(difference_sq <= envelope * (1.0 + ENVELOPE_SLACK)))

    residual = max(
        _identity_residual(a, b, grid, dealias) for a, b in zip(u.states, v.states)
    )
    max_difference = math.sqrt(float(np.max(difference_sq)))
    logger.info(
        f"twin runs: K={k:.4g} (c={c:g}, sup|u_x|={gradient_monitor(u):.4g}), "
        f"max ||w||={max_difference:.4g}, below envelope={below}"
    )
    log_measurement(logger, "gronwall_k", k, {"bookkeeping_constant": c, "below_envelope": below})
    return TwinRunReport(
        times=times.tolist(),
        difference_sq=difference_sq.tolist(),
        envelope=envelope.tolist(),
        gronwall_k=k,
        bookkeeping_constant=c,
        below_envelope=below,
        max_difference=max_difference,
        identity_residual=residual,
    )


def response_table(
    scales: Sequence[float],
    differences: Sequence[float],
    below_envelope: Sequence[bool],
    rel_tol: float = LINEAR_RESPONSE_TOL,
) -> LinearResponseTable:
    """
    Linear-response table from per-scale twin-run differences

    The response is linear when the ratio of consecutive max ||w|| matches
    the ratio of the scales within rel_tol.
    """
    rows: List[LinearResponseRow] = []
    for i, (scale, difference, below) in enumerate(zip(scales, differences, below_envelope)):
        ratio = expected = None
        if i > 0 and differences[i - 1] > 0:
            ratio = difference / differences[i - 1]
            expected = scale / scales[i - 1]
        rows.append(LinearResponseRow(
            scale=scale,
            max_difference=difference,
            below_envelope=below,
            ratio_to_previous=ratio,
            expected_ratio=expected,
        ))
    linear = all(
        abs(r.ratio_to_previous / r.expected_ratio - 1.0) <= rel_tol
        for r in rows
        if r.ratio_to_previous is not None and r.expected_ratio
    )
    return LinearResponseTable(rows=rows, linear=linear, rel_tol=rel_tol)


def linear_response(
    u0: SpectralField,
    perturbation: SpectralField,
    cfg: SolverConfig,
    scales: Sequence[float],
    jobs: int = 1,
    rel_tol: float = LINEAR_RESPONSE_TOL,
) -> LinearResponseTable:
    """
    Twin runs with the perturbation scaled by each entry of scales

    Raises:
        MemberRunError: If any twin run fails
    """
    reports = [twin_run_stability(u0, perturbation * scale, cfg, jobs=jobs) for scale in scales]
    table = response_table(
        list(scales),
        [r.max_difference for r in reports],
        [r.below_envelope for r in reports],
        rel_tol,
    )
    logger.info(f"linear response over scales {list(scales)}: linear={table.linear}")
    return table
