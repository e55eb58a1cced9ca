"""
Pseudospectral Time Stepping

`Integrator` binds a configuration to its evolution law and stepper and
enforces the per-step guards (CFL, finiteness, blow-up threshold). `run`
integrates to t_end, samples norms every snapshot_stride steps, applies the
resolution monitor and turns stepper errors into a run status instead of
discarding the record.
"""

import logging
import math
from pathlib import Path
from typing import Optional

import numpy as np

from ..config import settings
from ..exceptions import (
    BlowupDetectedError,
    CFLViolationError,
    GridMismatchError,
    ResolutionLostError,
    StepperError,
)
from ..models.config_models import SolverConfig
from ..models.run_models import RunRecord, RunSample, RunStatus
from ..norms.functionals import compute_norms, hyperviscous_norm, tail_fraction
from ..picard.mollifier import mollify
from ..spectral.field import SpectralField, boundary_mass_fraction
from ..spectral.grid import Grid, make_grid
from ..spectral.transforms import inverse
from .equation import EvolutionLaw, nonlinear_residual
from .snapshots import Checkpoint, checkpoint_name, snapshot_name, write_checkpoint, write_snapshot
from .steppers import Stepper, make_stepper

logger = logging.getLogger("stepper")

_STATUS_BY_ERROR = {
    CFLViolationError: RunStatus.CFL_VIOLATION,
    BlowupDetectedError: RunStatus.BLOWUP_DETECTED,
    ResolutionLostError: RunStatus.RESOLUTION_LOST,
}


def grid_for(cfg: SolverConfig) -> Grid:
    return make_grid(cfg.grid.n_points, cfg.grid.half_length)


class Integrator:
    """Configured stepper with guards"""

    def __init__(self, cfg: SolverConfig, grid: Optional[Grid] = None):
        self.cfg = cfg
        self.grid = grid or grid_for(cfg)
        self.law = EvolutionLaw(cfg, self.grid)
        self.stepper: Stepper = make_stepper(cfg.stepper.kind, self.law.linear, self.law.nonlinear_term)
        self._k_max = self.law.max_retained_frequency()

    def check_cfl(self, coeffs: np.ndarray, dt: float, t: float):
        if not self.law.nonlinear:
            return
        amplitude = float(np.max(np.abs(inverse(coeffs))))
        number = amplitude * self._k_max * dt
        if number > self.cfg.stepper.cfl_limit:
            raise CFLViolationError(
                f"CFL number {number:.4g} exceeds {self.cfg.stepper.cfl_limit:g} at t={t:.6g}", t
            )

    def check_state(self, coeffs: np.ndarray, t: float):
        if not np.all(np.isfinite(coeffs)):
            raise BlowupDetectedError(f"non-finite state at t={t:.6g}", t)
        amplitude = float(np.max(np.abs(inverse(coeffs))))
        if amplitude > self.cfg.stepper.blowup_threshold:
            raise BlowupDetectedError(
                f"max|u| = {amplitude:.4g} exceeds {self.cfg.stepper.blowup_threshold:g} at t={t:.6g}", t
            )

    def advance(self, coeffs: np.ndarray, dt: float, t: float = 0.0) -> np.ndarray:
        """
        One guarded step on coefficients

        Raises:
            CFLViolationError: If max|u| * max retained |xi| * dt exceeds cfl_limit
            BlowupDetectedError: If the new state is non-finite or too large
        """
        self.check_cfl(coeffs, dt, t)
        updated = self.stepper.advance(coeffs, dt)
        self.check_state(updated, t + dt)
        return updated


def step(u: SpectralField, dt: float, cfg: SolverConfig, t: float = 0.0) -> SpectralField:
    """
    Advance a field by one step of the configured scheme

    Args:
        u: State at time t
        dt: Step length
        cfg: Solver configuration (variant, eps, stepper, dealias)
        t: Current time, used in error reports

    Returns:
        State at time t + dt

    Raises:
        GridMismatchError: If u is not on the configured grid
        CFLViolationError: If the CFL check fails
        BlowupDetectedError: If NaN/Inf or the blow-up threshold is reached
    """
    integrator = Integrator(cfg)
    if not integrator.grid.same_as(u.grid):
        raise GridMismatchError(f"{u.grid.describe()} does not match {integrator.grid.describe()}")
    return SpectralField.from_coeffs(u.grid, integrator.advance(u.coeffs, dt, t))


def step_schedule(cfg: SolverConfig) -> int:
    """Number of steps to reach t_end; the last one is shortened if needed"""
    t_end, dt = cfg.stepper.t_end, cfg.stepper.dt
    if t_end == 0.0:
        return 0
    return max(1, math.ceil(t_end / dt - 1e-9))


def _time_of(k: int, n_steps: int, cfg: SolverConfig) -> float:
    return cfg.stepper.t_end if k == n_steps else k * cfg.stepper.dt


def make_sample(u: SpectralField, t: float, cfg: SolverConfig) -> RunSample:
    """All recorded norms and monitors of one state"""
    norms = compute_norms(u, cfg.output.norm_exponents, t)
    return RunSample(
        **norms.model_dump(),
        dx_linf=u.derivative(1).max_abs(),
        hyper_norm=hyperviscous_norm(u),
        tail_fraction=tail_fraction(u, dealias=cfg.stepper.dealias),
        boundary_mass=boundary_mass_fraction(u, cfg.output.boundary_margin),
        nonlinear_residual=nonlinear_residual(u, cfg.stepper.dealias),
    )


def prepare_initial_state(cfg: SolverConfig, u0: SpectralField) -> SpectralField:
    """Mollify when configured (eps > 0) and project on the 2/3 band when dealiasing"""
    if cfg.equation.mollify and cfg.epsilon > 0:
        u0 = mollify(u0, cfg.epsilon)
    if cfg.stepper.dealias:
        u0 = u0.dealiased()
    return u0


def run(
    cfg: SolverConfig,
    u0: Optional[SpectralField],
    snapshot_dir: Optional[Path] = None,
    checkpoint_dir: Optional[Path] = None,
    resume: Optional[Checkpoint] = None,
) -> RunRecord:
    """
    Integrate one configuration to t_end

    Args:
        cfg: Solver configuration
        u0: Initial data on the configured grid (ignored when resuming)
        snapshot_dir: Directory for snapshot files when output.write_snapshots is set
        checkpoint_dir: Directory for checkpoints every output.checkpoint_stride steps
        resume: Checkpoint to continue from

    Returns:
        RunRecord; stepper failures are recorded in status, error and failure_time
    """
    integrator = Integrator(cfg)
    grid = integrator.grid
    if u0 is None and resume is None:
        raise ValueError("run needs initial data or a checkpoint")
    if u0 is not None and not grid.same_as(u0.grid):
        raise GridMismatchError(f"initial data on {u0.grid.describe()} does not match {grid.describe()}")

    n_steps = step_schedule(cfg)
    stride = cfg.output.snapshot_stride
    if resume is not None:
        coeffs = resume.coeffs.copy()
        start = resume.step
        logger.info(f"resuming at step {start} (t={resume.t:g})")
    else:
        coeffs = np.array(prepare_initial_state(cfg, u0).coeffs)
        start = 0

    record = RunRecord(config=cfg)
    write_snapshots = cfg.output.write_snapshots and snapshot_dir is not None
    threshold = settings.boundary_mass_threshold
    warned_boundary = False

    def record_state(k: int):
        nonlocal warned_boundary
        t = _time_of(k, n_steps, cfg)
        field = SpectralField.from_coeffs(grid, coeffs)
        sample = make_sample(field, t, cfg)
        record.samples.append(sample)
        record.states.append(np.array(coeffs))
        if sample.boundary_mass > threshold and not warned_boundary:
            warned_boundary = True
            logger.warning(
                f"boundary mass fraction {sample.boundary_mass:.3g} exceeds {threshold:g} at t={t:.6g}; "
                f"enlarge half_length"
            )
        if write_snapshots:
            path = write_snapshot(Path(snapshot_dir) / snapshot_name(k),
                                  field, t, cfg.variant, cfg.epsilon)
            record.snapshot_paths.append(str(path))
        if sample.tail_fraction > cfg.stepper.resolution_tol:
            raise ResolutionLostError(
                f"spectral tail fraction {sample.tail_fraction:.3g} exceeds "
                f"{cfg.stepper.resolution_tol:g} at t={t:.6g}", t
            )

    k = start
    try:
        record_state(k)
        while k < n_steps:
            t = _time_of(k, n_steps, cfg)
            dt = cfg.stepper.dt if k + 1 < n_steps else cfg.stepper.t_end - k * cfg.stepper.dt
            coeffs = integrator.advance(coeffs, dt, t)
            k += 1
            if checkpoint_dir is not None and cfg.output.checkpoint_stride and k % cfg.output.checkpoint_stride == 0:
                write_checkpoint(Path(checkpoint_dir) / checkpoint_name(k), coeffs, k,
                                 _time_of(k, n_steps, cfg), cfg)
            if k % stride == 0 or k == n_steps:
                record_state(k)
    except StepperError as e:
        record.status = _STATUS_BY_ERROR.get(type(e), RunStatus.BLOWUP_DETECTED)
        record.error = str(e)
        record.failure_time = e.t
        logger.warning(f"run stopped ({record.status.value}): {e}")

    record.steps_taken = k - start
    logger.info(
        f"run finished: status={record.status.value} steps={record.steps_taken} "
        f"samples={len(record.samples)} variant={cfg.variant.value} eps={cfg.epsilon:g}"
    )
    return record


def final_state(record: RunRecord) -> Optional[SpectralField]:
    """Last recorded state of a run"""
    if not record.states:
        return None
    return SpectralField.from_coeffs(grid_for(record.config), record.states[-1])
