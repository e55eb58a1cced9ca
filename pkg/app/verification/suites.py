"""
Verification Suites

Property suites at pinned desk-scale sizes. Every suite returns a
SuiteReport of individual CheckResults with the measured constants and
slopes attached; a suite that raises is reported as failed with the error.
"""

from typing import Callable, Dict, List, Optional
from enum import Enum
import logging
import math
import time

import numpy as np

from ..config import settings
from ..diagnostics.energy import energy_audit
from ..diagnostics.stability import linear_response, twin_run_stability
from ..evolve.family import epsilon_family_study
from ..evolve.solver import final_state, run
from ..models.config_models import SolverConfig, StepperKind
from ..models.report_models import CheckResult, SuiteReport
from ..norms.functionals import hs_norm, l2_norm, l2_norm_samples, n_norm
from ..norms.inequalities import (
    check_endpoint_34,
    check_interpolation_s,
    check_time_integrated_endpoint,
    endpoint_scale,
    product_law_corpus,
)
from ..operators.semigroup import SemigroupKernel
from ..operators.studies import certify_l1_norm, duality_bound_study, quartic_decay_studies
from ..operators.symbols import MultiplierSymbol, SymbolName, endpoint_margin, eval_whitham_m
from ..picard.duhamel import make_duhamel_state, pde_residual
from ..picard.fixed_point import FixedPointConfig, solve_fixed_point
from ..picard.horizon import admissible_horizon, measured_constants
from ..picard.mollifier import FULL_DERIVATIVE_BOUND, HALF_DERIVATIVE_BOUND, mollifier_regularity, mollify
from ..spectral.field import SpectralField
from ..spectral.grid import make_grid
from ..spectral.profiles import gaussian, random_smooth_field, sech2
from ..spectral.transforms import direct_dft, forward, hermitian_defect

KERNEL_SLOPES = {1.0: -0.375, 1.5: -0.5, 2.0: -0.625}
SLOPE_TOL = 0.01
ROUNDOFF = 1.0e-12


class SuiteName(str, Enum):
    """Verification suites"""
    SYMBOLS = "symbols"
    KERNELS = "kernels"
    NORMS = "norms"
    PICARD = "picard"
    ENERGY = "energy"
    FAMILY = "family"
    STABILITY = "stability"
    ALL = "all"


def desk_config(
    n_points: int,
    half_length: float,
    epsilon: float = 0.0,
    t_end: float = 1.0,
    dt: float = 0.01,
    snapshot_stride: int = 10,
    kind: StepperKind = StepperKind.INTEGRATING_FACTOR_RK4,
    nonlinear: bool = True,
) -> SolverConfig:
    """Run configuration for in-memory verification runs"""
    return SolverConfig().updated(
        grid={"n_points": n_points, "half_length": half_length},
        equation={"epsilon": epsilon, "nonlinear": nonlinear},
        stepper={"kind": kind.value, "dt": dt, "t_end": t_end},
        output={"snapshot_stride": snapshot_stride, "write_snapshots": False},
    )


class VerificationRunner:
    """
    Runs the property suites

    The seed pins every random corpus; jobs is forwarded to the run families.
    """

    def __init__(self, seed: Optional[int] = None, jobs: Optional[int] = None):
        self.seed = settings.default_seed if seed is None else seed
        self.jobs = settings.default_jobs if jobs is None else jobs
        self.logger = logging.getLogger("verification")
        self.suites: Dict[SuiteName, Callable[[], List[CheckResult]]] = {
            SuiteName.SYMBOLS: self._symbols,
            SuiteName.KERNELS: self._kernels,
            SuiteName.NORMS: self._norms,
            SuiteName.PICARD: self._picard,
            SuiteName.ENERGY: self._energy,
            SuiteName.FAMILY: self._family,
            SuiteName.STABILITY: self._stability,
        }

    def _rng(self, stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, stream])

    @staticmethod
    def _check(suite: SuiteName, name: str, passed: bool, message: str = "", **measured) -> CheckResult:
        return CheckResult(
            suite=suite.value,
            name=name,
            passed=bool(passed),
            message=message,
            measured={k: (float(v) if isinstance(v, (int, float, np.floating)) else v) for k, v in measured.items()},
        )

    def run(self, name: SuiteName) -> List[SuiteReport]:
        """Run one suite, or every suite for ALL"""
        name = SuiteName(name)
        names = [s for s in self.suites] if name == SuiteName.ALL else [name]
        return [self.run_suite(s) for s in names]

    def run_suite(self, name: SuiteName) -> SuiteReport:
        start = time.perf_counter()
        results: List[CheckResult] = []
        errors: List[str] = []
        try:
            results = self.suites[name]()
        except Exception as e:
            self.logger.error(f"suite {name.value} raised: {e}")
            errors.append(f"{type(e).__name__}: {e}")

        passed_checks = sum(1 for r in results if r.passed)
        report = SuiteReport(
            suite=name.value,
            passed=not errors and passed_checks == len(results),
            total_checks=len(results),
            passed_checks=passed_checks,
            failed_checks=len(results) - passed_checks,
            results=results,
            errors=errors,
            duration_s=time.perf_counter() - start,
        )
        for r in results:
            if not r.passed:
                self.logger.warning(f"{name.value}/{r.name} failed: {r.message} {r.measured}")
        self.logger.info(
            f"suite {name.value}: {passed_checks}/{len(results)} checks passed in {report.duration_s:.2f}s"
        )
        return report

    # Suites

    def _symbols(self) -> List[CheckResult]:
        suite = SuiteName.SYMBOLS
        results = []

        m0 = eval_whitham_m(0.0)
        results.append(self._check(suite, "m_at_zero", m0 == 1.0, value=m0))

        worst_m = math.inf
        worst_margin = math.inf
        for n in (64, 256, 1024):
            for half_length in (math.pi, 8 * math.pi, 64 * math.pi):
                xi = make_grid(n, half_length).frequencies
                worst_m = min(worst_m, float(np.min(eval_whitham_m(xi))))
                worst_margin = min(worst_margin, float(np.min(endpoint_margin(xi))))
        results.append(self._check(suite, "m_at_least_one", worst_m >= 1.0, min_m=worst_m))
        results.append(self._check(suite, "endpoint_margin_nonnegative", worst_margin >= 0.0, min_margin=worst_margin))

        xi = np.abs(make_grid(1024, math.pi).frequencies)
        xi = xi[xi >= 50.0]
        ratio = eval_whitham_m(xi) / np.sqrt(xi)
        results.append(self._check(
            suite, "m_high_frequency_asymptotics",
            float(ratio.min()) >= 1.0 and float(ratio.max()) <= 1.001,
            min_ratio=ratio.min(), max_ratio=ratio.max(),
        ))

        grid = make_grid(64, 8 * math.pi)
        uneven = [s.value for s in SymbolName if not MultiplierSymbol(s, grid, 0.5).is_even()]
        results.append(self._check(suite, "symbols_even", not uneven, message=", ".join(uneven)))

        rng = self._rng(1)
        worst_dft = 0.0
        worst_hermitian = 0.0
        for n in (8, 16, 32, 64, 128):
            for _ in range(10):
                samples = rng.standard_normal(n)
                fast = forward(samples)
                scale = max(1.0, float(np.max(np.abs(fast))))
                worst_dft = max(worst_dft, float(np.max(np.abs(fast - direct_dft(samples)))) / scale)
                worst_hermitian = max(worst_hermitian, hermitian_defect(fast) / scale)
        results.append(self._check(suite, "fft_matches_direct_dft", worst_dft < ROUNDOFF, max_error=worst_dft))
        results.append(self._check(suite, "real_data_hermitian", worst_hermitian < ROUNDOFF, max_defect=worst_hermitian))
        return results

    def _kernels(self) -> List[CheckResult]:
        suite = SuiteName.KERNELS
        results = []
        grid = make_grid(1024, 8 * math.pi)
        times = np.logspace(-4, -1, 13)
        for study in quartic_decay_studies(grid, times):
            expected = KERNEL_SLOPES[study.derivative_order]
            slope = study.slope if study.slope is not None else math.nan
            results.append(self._check(
                suite, f"quartic_order_{study.derivative_order:g}_slope",
                abs(slope - expected) <= SLOPE_TOL,
                slope=slope, expected=expected, constant=study.constant,
            ))

        psi = random_smooth_field(make_grid(256, 8 * math.pi), self._rng(2), bandwidth=2.0)
        for extra in (0.0, 0.5):
            study = duality_bound_study(np.logspace(-3, 0, 7), psi, extra_order=extra)
            results.append(self._check(
                suite, f"duality_scaling_extra_{extra:g}",
                abs(study.slope + 0.5) <= SLOPE_TOL,
                slope=study.slope, constant=study.constant,
            ))

        dissipation = MultiplierSymbol(SymbolName.DISSIPATION_A, make_grid(256, 8 * math.pi))
        composed = SemigroupKernel(dissipation, 0.3).compose(SemigroupKernel(dissipation, 0.2))
        direct = SemigroupKernel(dissipation, 0.5)
        gap = float(np.max(np.abs(composed.multiplier - direct.multiplier)))
        results.append(self._check(suite, "semigroup_composition", gap < ROUNDOFF, max_gap=gap))

        quartic = MultiplierSymbol(SymbolName.QUARTIC, make_grid(256, 8 * math.pi))
        value, change, certified = certify_l1_norm(quartic, 1.0e-2)
        results.append(self._check(suite, "quartic_l1_certified", certified, l1_norm=value, change=change))
        return results

    def _norms(self) -> List[CheckResult]:
        suite = SuiteName.NORMS
        results = []
        grid = make_grid(256, 8 * math.pi)
        rng = self._rng(3)

        worst = {0.1: 0.0, 0.25: 0.0, 0.5: 0.0}
        worst_endpoint = math.inf
        worst_parseval = 0.0
        for _ in range(settings.verify_corpus_size):
            f = random_smooth_field(grid, rng, amplitude=rng.uniform(0.1, 2.0), bandwidth=rng.uniform(0.5, 4.0))
            for s in worst:
                worst[s] = max(worst[s], check_interpolation_s(f, s))
            worst_endpoint = min(worst_endpoint, check_endpoint_34(f) / endpoint_scale(f))
            worst_parseval = max(worst_parseval, abs(l2_norm(f) - l2_norm_samples(f)) / l2_norm(f))
        for s, ratio in worst.items():
            results.append(self._check(
                suite, f"interpolation_s_{s:g}", ratio <= 1.0 + ROUNDOFF, max_ratio=ratio,
                fields=settings.verify_corpus_size,
            ))
        results.append(self._check(suite, "endpoint_34", worst_endpoint >= -ROUNDOFF, min_relative_residual=worst_endpoint))
        results.append(self._check(suite, "parseval", worst_parseval < ROUNDOFF, max_error=worst_parseval))

        worst_products = product_law_corpus(grid, rng, settings.verify_product_pairs)
        results.append(self._check(
            suite, "product_law_constants",
            all(math.isfinite(v) for v in worst_products.values()),
            **worst_products,
        ))

        f = random_smooth_field(grid, rng, bandwidth=2.0)
        dissipation = MultiplierSymbol(SymbolName.DISSIPATION_A, grid)
        times = np.linspace(0.0, 1.0, 21)
        fields = [SemigroupKernel(dissipation, t).apply(f) for t in times]
        residual = check_time_integrated_endpoint(
            times,
            np.array([l2_norm(g) for g in fields]),
            np.array([n_norm(g) for g in fields]),
            np.array([hs_norm(g, 0.75) for g in fields]),
        )
        results.append(self._check(suite, "time_integrated_endpoint", residual >= -ROUNDOFF, residual=residual))

        rows = mollifier_regularity(f, np.logspace(-3, 0, 7))
        c_half = max(r.c_half for r in rows)
        c_one = max(r.c_one for r in rows)
        results.append(self._check(
            suite, "mollifier_regularity",
            c_half <= HALF_DERIVATIVE_BOUND * (1.0 + ROUNDOFF) and c_one <= FULL_DERIVATIVE_BOUND * (1.0 + ROUNDOFF),
            c_half=c_half, c_one=c_one,
        ))
        return results

    def _picard(self) -> List[CheckResult]:
        suite = SuiteName.PICARD
        results = []
        grid = make_grid(64, 8 * math.pi)
        eps = 0.5
        u0 = SpectralField.from_samples(grid, gaussian(grid.x, 0.1, 4.0))
        data_norm = l2_norm(mollify(u0, eps))
        c_lin_hat, c_bil_hat = measured_constants(grid)
        horizon = admissible_horizon(eps, data_norm, c_lin_hat, c_bil_hat, strict=True)
        cfg = FixedPointConfig.from_measured(eps, horizon, data_norm, c_lin_hat, c_bil_hat, tol=1.0e-12)
        results.append(self._check(suite, "horizon_admissible", cfg.is_admissible, horizon=horizon,
                                   c_lin_hat=c_lin_hat, c_bil_hat=c_bil_hat))

        residuals = []
        report = None
        for nodes in (17, 33, 65):
            state = make_duhamel_state(u0, eps, horizon, nodes)
            path, report = solve_fixed_point(state, cfg)
            residuals.append(pde_residual(path, state))
        ratio = report.contraction_ratio if report.contraction_ratio is not None else 0.0
        results.append(self._check(suite, "geometric_convergence", report.converged and ratio < 1.0,
                                   iterations=report.iterations, contraction_ratio=ratio))
        results.append(self._check(suite, "sup_norm_bound", report.within_bound,
                                   sup_norm=report.sup_norm, bound=3.0 * data_norm))
        orders = [math.log2(a / b) for a, b in zip(residuals, residuals[1:])]
        results.append(self._check(suite, "pde_residual_order", min(orders) >= 1.8,
                                   orders=orders, residuals=residuals))
        return results

    def _energy(self) -> List[CheckResult]:
        suite = SuiteName.ENERGY
        results = []
        rng = self._rng(4)
        grid = make_grid(256, 8 * math.pi)

        violations = 0
        worst_excess = -math.inf
        worst_cancellation = 0.0
        incomplete = 0
        for i in range(settings.verify_energy_runs):
            u0 = random_smooth_field(grid, rng, amplitude=0.3, bandwidth=1.0)
            for eps in (0.0, 1.0e-2):
                cfg = desk_config(256, 8 * math.pi, epsilon=eps, t_end=5.0, dt=0.01, snapshot_stride=1)
                record = run(cfg, u0)
                if not record.completed:
                    incomplete += 1
                    continue
                _, audit = energy_audit(record)
                violations += 0 if audit.inequality_holds else 1
                worst_excess = max(worst_excess, audit.max_inequality_excess)
                worst_cancellation = max(worst_cancellation, float(np.max(record.series("nonlinear_residual"))))
        results.append(self._check(suite, "energy_inequality", violations == 0 and incomplete == 0,
                                   violations=violations, incomplete=incomplete, max_excess=worst_excess))
        results.append(self._check(suite, "nonlinear_cancellation", worst_cancellation < 1.0e-10,
                                   max_relative_residual=worst_cancellation))

        grid = make_grid(128, 4 * math.pi)
        u0 = SpectralField.from_samples(grid, gaussian(grid.x, 0.5, math.sqrt(2.0)))
        relative = []
        for dt in (0.05, 0.025, 0.0125):
            record = run(desk_config(128, 4 * math.pi, dt=dt, snapshot_stride=1), u0)
            relative.append(energy_audit(record)[1].relative_residual)
        orders = [math.log2(a / b) for a, b in zip(relative, relative[1:])]
        results.append(self._check(suite, "energy_residual_order", min(orders) >= 3.5,
                                   orders=orders, residuals=relative))

        grid = make_grid(32, math.pi)
        cfg = desk_config(32, math.pi, epsilon=1.0e-2, t_end=1.0, dt=0.1, nonlinear=False)
        record = run(cfg, SpectralField.from_samples(grid, np.cos(grid.x)))
        rate = 1.0e-2 * 2.0 + float(eval_whitham_m(1.0))
        exact = np.cos(grid.x) * math.exp(-rate)
        error = float(np.max(np.abs(final_state(record).samples - exact)))
        results.append(self._check(suite, "linear_single_mode", error < ROUNDOFF, max_error=error))

        for kind, order in ((StepperKind.INTEGRATING_FACTOR_RK4, 3.5), (StepperKind.ETD_RK2, 1.8)):
            observed = self._self_convergence(kind)
            results.append(self._check(suite, f"self_convergence_{kind.value}", min(observed) >= order,
                                       orders=observed, nominal=order))
        return results

    @staticmethod
    def _self_convergence(kind: StepperKind) -> List[float]:
        grid = make_grid(128, 8 * math.pi)
        u0 = SpectralField.from_samples(grid, sech2(grid.x, 0.5, 2.0))

        def solve(dt: float) -> np.ndarray:
            cfg = desk_config(128, 8 * math.pi, dt=dt, snapshot_stride=1000, kind=kind)
            return final_state(run(cfg, u0)).samples

        reference = solve(0.0025)
        errors = [float(np.max(np.abs(solve(dt) - reference))) for dt in (0.04, 0.02, 0.01)]
        return [math.log2(a / b) for a, b in zip(errors, errors[1:])]

    def _family(self) -> List[CheckResult]:
        suite = SuiteName.FAMILY
        grid = make_grid(128, 8 * math.pi)
        u0 = SpectralField.from_samples(grid, sech2(grid.x, 0.1, 2.0))
        table = epsilon_family_study(desk_config(128, 8 * math.pi), [1.0e-1, 1.0e-2, 1.0e-3], u0, self.jobs)
        to_zero = [row.distance_to_zero for row in table.rows]
        to_next = [row.distance_to_next for row in table.rows if row.distance_to_next is not None]
        return [
            self._check(suite, "cauchy_monotone", table.monotone, distance_to_next=to_next, distance_to_zero=to_zero),
            self._check(suite, "smallest_eps_within_envelope", to_zero[-1] <= min(to_next),
                        distance_to_zero=to_zero[-1], envelope=min(to_next), observed_rates=table.observed_rates),
        ]

    def _stability(self) -> List[CheckResult]:
        suite = SuiteName.STABILITY
        grid = make_grid(128, 8 * math.pi)
        cfg = desk_config(128, 8 * math.pi)
        u0 = SpectralField.from_samples(grid, sech2(grid.x, 0.1, 2.0))
        perturbation = SpectralField.from_samples(grid, gaussian(grid.x, 1.0, 2.0))

        zero = twin_run_stability(u0, SpectralField.zeros(grid), cfg, jobs=self.jobs)
        table = linear_response(u0, perturbation, cfg, [1.0e-4, 1.0e-6, 1.0e-8], jobs=self.jobs)
        single = twin_run_stability(u0, perturbation * 1.0e-4, cfg, jobs=self.jobs)
        return [
            self._check(suite, "zero_perturbation_stays_zero", zero.max_difference < ROUNDOFF,
                        max_difference=zero.max_difference),
            self._check(suite, "linear_response", table.linear,
                        ratios=[r.ratio_to_previous for r in table.rows if r.ratio_to_previous is not None]),
            self._check(suite, "below_gronwall_envelope", all(r.below_envelope for r in table.rows),
                        gronwall_k=single.gronwall_k),
            self._check(suite, "difference_identity", single.identity_residual < 1.0e-10,
                        identity_residual=single.identity_residual),
        ]


def run_verification(suite: SuiteName, seed: Optional[int] = None, jobs: Optional[int] = None) -> List[SuiteReport]:
    """Run a named suite ("all" runs every suite)"""
    return VerificationRunner(seed, jobs).run(suite)
