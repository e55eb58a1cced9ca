"""
Tests for the run monitors: energy budget, regularity ladder, L-infinity
criterion, twin-run stability and the monitor pipeline
"""

import math
import threading
import time

import numpy as np
import pytest

from app.diagnostics.base_monitor import BaseMonitor, MonitorContext, MonitorStatus
from app.diagnostics.energy import EnergyMonitor, cumulative_integral, energy_audit, energy_budget
from app.diagnostics.ladder import LadderMonitor, ladder_exponents, ladder_monitor
from app.diagnostics.linf import kernel_factors, kernel_majorants, linf_criterion_check
from app.diagnostics.orchestrator import MonitorPipeline, PipelineStage, default_pipeline, run_diagnostics
from app.diagnostics.stability import (
    difference_flux,
    gradient_monitor,
    response_table,
    twin_run_stability,
)
from app.evolve.solver import grid_for, run
from app.exceptions import LadderResolutionError, MissingSeriesError, MonitorCancelledError
from app.models.config_models import EquationVariant
from app.models.run_models import RunRecord
from app.operators.nonlinear import quadratic_term
from app.spectral.field import SpectralField
from app.spectral.profiles import initial_profile, single_mode


def run_small(cfg):
    return run(cfg, initial_profile(grid_for(cfg), cfg.equation.initial_data))


class TestEnergyBudget:
    """Test the energy identity and inequality audit"""

    def test_cumulative_integral_short_series(self):
        assert np.all(cumulative_integral(np.array([3.0]), np.array([0.0])) == 0.0)
        two = cumulative_integral(np.array([1.0, 3.0]), np.array([0.0, 1.0]))
        assert two[-1] == pytest.approx(2.0)

    def test_cumulative_integral_simpson_exact_on_quadratic(self):
        times = np.linspace(0.0, 1.0, 11)
        integral = cumulative_integral(times ** 2, times)
        assert integral[0] == 0.0
        assert integral[-1] == pytest.approx(1.0 / 3.0, rel=1e-10)

    def test_modified_run_satisfies_inequality(self, small_config):
        record = run_small(small_config)
        budget, report = energy_audit(record)
        assert report.checked_inequality
        assert report.inequality_holds
        assert report.relative_residual < 1e-4
        assert report.budget_length == len(record.samples)
        assert budget[0].residual == 0.0
        assert all(b.dissipation_n >= 0.0 for b in budget)

    def test_kinetic_energy_decays(self, small_config):
        budget = energy_budget(run_small(small_config))
        kinetic = [b.kinetic for b in budget]
        assert kinetic[-1] < kinetic[0]

    def test_classic_variant_skips_inequality(self, small_config):
        cfg = small_config.updated(equation={"variant": EquationVariant.WHITHAM_CLASSIC.value})
        budget, report = energy_audit(run_small(cfg))
        assert not report.checked_inequality
        assert report.inequality_holds
        assert all(b.dissipation_n == 0.0 for b in budget)

    def test_hyperviscous_term_enters_budget(self, small_config):
        cfg = small_config.updated(equation={"epsilon": 0.05})
        budget, report = energy_audit(run_small(cfg))
        assert budget[-1].dissipation_eps > 0.0
        assert report.inequality_holds

    def test_empty_record_raises(self, small_config):
        with pytest.raises(MissingSeriesError):
            energy_budget(RunRecord(config=small_config))


class TestLadder:
    """Test the regularity ladder"""

    def test_exponents(self):
        exponents = ladder_exponents(2.0)
        assert exponents == pytest.approx([0.49, 0.98, 1.47, 1.96, 2.0])
        assert all(a < b for a, b in zip(exponents, exponents[1:]))

    def test_exponents_end_at_target(self):
        assert ladder_exponents(0.3)[-1] == 0.3
        assert len(ladder_exponents(0.3)) == 1

    @pytest.mark.parametrize("s_start", [0.25, 0.75, 0.1, 1.0])
    def test_exponents_reject_start(self, s_start):
        with pytest.raises(ValueError):
            ladder_exponents(2.0, s_start)

    def test_exponents_reject_target(self):
        with pytest.raises(ValueError):
            ladder_exponents(0.0)

    def test_monitor_on_small_run(self, small_config):
        record = run_small(small_config)
        report = ladder_monitor(record, 1.0)
        assert [r.sigma for r in report.rungs] == pytest.approx(report.exponents)
        assert report.all_bounded

    def test_monitor_stops_when_cancelled(self, small_config):
        record = run_small(small_config)
        calls = []

        def check_cancelled():
            calls.append(1)
            if len(calls) > 1:
                raise MonitorCancelledError("ladder cancelled")

        with pytest.raises(MonitorCancelledError):
            ladder_monitor(record, 2.0, check_cancelled=check_cancelled)
        assert len(calls) == 2
        assert report.linf_sup == pytest.approx(float(np.max(record.series("linf"))))
        for rung in report.rungs:
            assert rung.sup_norm >= rung.initial_norm

    def test_cap_marks_unbounded(self, small_config):
        report = ladder_monitor(run_small(small_config), 1.0, cap=1e-12)
        assert not report.all_bounded

    def test_unresolved_tail_raises(self, small_config):
        with pytest.raises(LadderResolutionError):
            ladder_monitor(run_small(small_config), 1.0, resolution_tol=1e-300)

    def test_missing_states_raise(self, small_config):
        record = run_small(small_config)
        record.states = []
        with pytest.raises(MissingSeriesError):
            ladder_monitor(record, 1.0)


class TestLinfCriterion:
    """Test the L-infinity criterion and its kernel factors"""

    def test_kernel_factors_below_majorants(self, fine_grid):
        low, high = kernel_factors(fine_grid, 0.05)
        majorant_low, majorant_high = kernel_majorants(0.05)
        assert 0.0 < low <= majorant_low
        assert 0.0 < high <= majorant_high

    def test_majorants(self):
        low, high = kernel_majorants(0.1)
        assert low == pytest.approx(2.0 / 0.3)
        assert high == pytest.approx(10.0)

    @pytest.mark.parametrize("eps_prime", [0.0, 0.25, -0.1])
    def test_eps_prime_range(self, grid, eps_prime):
        with pytest.raises(ValueError):
            kernel_factors(grid, eps_prime)

    def test_check_on_small_run(self, small_config):
        record = run_small(small_config)
        report = linf_criterion_check(record)
        assert report.finite
        assert report.a_norm > 0.0
        assert report.u0_linf == pytest.approx(record.samples[0].linf)
        assert report.measured_constant == pytest.approx(
            report.lhs / (report.u0_linf + report.a_norm ** 2)
        )

    def test_without_samples(self, small_config):
        with pytest.raises(MissingSeriesError):
            linf_criterion_check(RunRecord(config=small_config))


class TestStability:
    """Test twin runs and the linear-response table"""

    def test_gradient_monitor(self, small_config):
        record = run_small(small_config)
        assert gradient_monitor(record) == pytest.approx(float(np.max(record.series("dx_linf"))))
        assert gradient_monitor(RunRecord(config=small_config)) == 0.0

    def test_difference_identity(self, grid, rng):
        u = SpectralField.from_samples(grid, 0.1 * rng.standard_normal(grid.n_points)).dealiased().coeffs
        v = SpectralField.from_samples(grid, 0.1 * rng.standard_normal(grid.n_points)).dealiased().coeffs
        lhs = quadratic_term(u, grid) - quadratic_term(v, grid)
        rhs = difference_flux(u - v, u + v, grid)
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_zero_perturbation(self, small_config):
        grid = grid_for(small_config)
        u0 = initial_profile(grid, small_config.equation.initial_data)
        report = twin_run_stability(u0, SpectralField.zeros(grid), small_config)
        assert report.max_difference == 0.0
        assert all(d == 0.0 for d in report.difference_sq)
        assert report.below_envelope
        assert report.identity_residual == 0.0

    def test_small_perturbation_below_envelope(self, small_config):
        grid = grid_for(small_config)
        u0 = initial_profile(grid, small_config.equation.initial_data)
        report = twin_run_stability(u0, single_mode(grid, 3, 1e-3), small_config)
        assert report.below_envelope
        assert report.bookkeeping_constant == 0.25
        assert report.gronwall_k > 0.0
        assert 0.0 < report.max_difference
        assert report.identity_residual < 1e-8

    def test_response_table_linear(self):
        table = response_table([1.0, 2.0, 4.0], [0.1, 0.2, 0.4], [True, True, True])
        assert table.linear
        assert table.rows[0].ratio_to_previous is None
        assert table.rows[1].ratio_to_previous == pytest.approx(2.0)
        assert table.rows[2].expected_ratio == pytest.approx(2.0)

    def test_response_table_nonlinear(self):
        table = response_table([1.0, 2.0], [0.1, 0.3], [True, True])
        assert not table.linear


class SlowMonitor(BaseMonitor):

    def __init__(self, delay: float, timeout: float):
        super().__init__("slow", timeout)
        self.delay = delay

    def compute(self, record):
        time.sleep(self.delay)
        return None


class BrokenMonitor(BaseMonitor):

    def __init__(self):
        super().__init__("broken", 5.0)

    def compute(self, record):
        raise RuntimeError("no series")


class LoopingMonitor(BaseMonitor):

    def __init__(self, timeout: float):
        super().__init__("looping", timeout)
        self.stopped = threading.Event()

    def compute(self, record):
        try:
            while True:
                self.raise_if_cancelled()
                time.sleep(0.005)
        finally:
            self.stopped.set()


class TestMonitorPipeline:
    """Test concurrent monitor execution and error capture"""

    @pytest.mark.asyncio
    async def test_energy_monitor_executes(self, small_config):
        record = run_small(small_config)
        result = await EnergyMonitor(timeout=30.0).execute(record, MonitorContext(run_id="r1"))
        assert result.status == MonitorStatus.COMPLETED
        assert result.data.inequality_holds
        assert result.context.run_id == "r1"
        assert result.metrics.duration_ms is not None

    @pytest.mark.asyncio
    async def test_empty_record_fails_validation(self, small_config):
        result = await EnergyMonitor(timeout=30.0).execute(RunRecord(config=small_config), MonitorContext())
        assert result.status == MonitorStatus.FAILED
        assert "no samples" in result.error
        assert result.metrics.error_count == 1

    @pytest.mark.asyncio
    async def test_timeout(self, small_config):
        record = run_small(small_config)
        result = await SlowMonitor(0.3, 0.01).execute(record, MonitorContext())
        assert result.status == MonitorStatus.FAILED
        assert "Timeout" in result.error

    @pytest.mark.asyncio
    async def test_timeout_stops_worker_thread(self, small_config):
        record = run_small(small_config)
        monitor = LoopingMonitor(0.05)
        result = await monitor.execute(record, MonitorContext())
        assert result.status == MonitorStatus.FAILED
        assert monitor.cancelled.is_set()
        assert monitor.stopped.wait(2.0)

    @pytest.mark.asyncio
    async def test_failed_monitor_is_captured(self, small_config):
        record = run_small(small_config)
        pipeline = MonitorPipeline()
        pipeline.register_monitor(EnergyMonitor(timeout=30.0))
        pipeline.register_monitor(BrokenMonitor())
        state = await pipeline.execute(record)
        assert state.stage == PipelineStage.COMPLETED
        assert state.failed_monitors == ["broken"]
        assert not state.passed
        assert state.results["energy"].status == MonitorStatus.COMPLETED
        summary = state.summary()
        assert summary["broken"]["error"] == "no series"
        assert summary["energy"]["report"]["inequality_holds"] is True

    @pytest.mark.asyncio
    async def test_all_failed(self, small_config):
        pipeline = MonitorPipeline()
        pipeline.register_monitor(BrokenMonitor())
        state = await pipeline.execute(run_small(small_config))
        assert state.stage == PipelineStage.FAILED

    @pytest.mark.asyncio
    async def test_default_pipeline(self, small_config):
        pipeline = default_pipeline(rho_target=1.0)
        assert set(pipeline.monitors) == {"energy", "ladder", "linf"}
        assert isinstance(pipeline.monitors["ladder"], LadderMonitor)
        state = await pipeline.execute(run_small(small_config))
        assert state.passed

    def test_run_diagnostics_blocking(self, small_config):
        state = run_diagnostics(run_small(small_config), rho_target=1.0, run_id="abc")
        assert state.run_id == "abc"
        assert state.passed
        assert math.isfinite(state.summary()["linf"]["report"]["measured_constant"])
