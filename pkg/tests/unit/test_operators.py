"""
Tests for multiplier symbols, convolution semigroups, kernel studies
and the quadratic flux
"""

import math

import numpy as np
import pytest

from app.exceptions import GridMismatchError, NegativeTimeError, UnderResolvedKernelError, ZeroFieldError
from app.operators.nonlinear import derivative_symbol, quadratic_term
from app.operators.semigroup import SemigroupKernel, apply_semigroup
from app.operators.studies import (
    _check_span,
    duality_bound_study,
    fit_loglog_slope,
    kernel_norm_study,
    measure_linear_constant,
    smoothing_symbol_bound,
)
from app.operators.symbols import (
    MultiplierSymbol,
    SymbolName,
    apply_multiplier,
    endpoint_margin,
    eval_whitham_m,
    symbol_values,
    tanhc,
)
from app.spectral.field import SpectralField
from app.spectral.grid import make_grid
from app.spectral.profiles import gaussian, random_smooth_field, single_mode


class TestSymbols:
    """Test the dispersion symbol and its relatives"""

    def test_m_at_zero_is_one(self):
        assert eval_whitham_m(0.0) == 1.0
        assert tanhc(0.0) == 1.0

    def test_tanhc_series_matches_quotient(self):
        """Test the small-argument branch joins the quotient smoothly"""
        xi = 1.5e-4
        assert tanhc(xi) == pytest.approx(math.tanh(xi) / xi, rel=1e-14)
        assert tanhc(0.9e-4) == pytest.approx(math.tanh(0.9e-4) / 0.9e-4, rel=1e-14)

    def test_m_bounded_below_by_one(self):
        xi = np.linspace(-200.0, 200.0, 40001)
        assert np.all(np.asarray(eval_whitham_m(xi)) >= 1.0 - 1e-15)

    def test_high_frequency_asymptotics(self):
        """Test m(xi) / sqrt|xi| -> 1"""
        xi = np.array([1.0e3, 1.0e4, 1.0e5])
        ratio = np.asarray(eval_whitham_m(xi)) / np.sqrt(xi)
        assert np.all(ratio >= 1.0)
        assert np.all(ratio <= 1.001)

    def test_endpoint_margin_nonnegative(self):
        xi = np.linspace(-50.0, 50.0, 10001)
        assert np.all(endpoint_margin(xi) >= -1e-12)

    def test_named_symbols(self):
        xi = np.array([0.0, 0.5, -2.0])
        assert np.allclose(symbol_values(SymbolName.HYPERVISCOUS_ELL, xi), xi ** 2 * (1 + xi ** 2))
        assert np.allclose(symbol_values(SymbolName.QUARTIC, xi), xi ** 4)
        assert np.allclose(symbol_values(SymbolName.DISSIPATION_A, xi), np.abs(xi) * eval_whitham_m(xi))
        assert np.allclose(symbol_values(SymbolName.FRAC_LAPLACIAN, xi, 0.5), np.abs(xi))

    def test_frac_laplacian_needs_exponent(self):
        with pytest.raises(ValueError):
            symbol_values(SymbolName.FRAC_LAPLACIAN, np.ones(3))

    def test_symbols_are_even(self, grid):
        for name in (SymbolName.WHITHAM_M, SymbolName.DISSIPATION_A, SymbolName.QUARTIC):
            assert MultiplierSymbol(name, grid).is_even(tol=1e-14)

    def test_apply_multiplier_grid_mismatch(self, grid):
        symbol = MultiplierSymbol(SymbolName.HEAT_SQ, grid)
        with pytest.raises(GridMismatchError):
            apply_multiplier(symbol, SpectralField.zeros(make_grid(32, grid.half_length)))

    def test_label(self, grid):
        assert MultiplierSymbol("frac_laplacian", grid, 0.25).label == "frac_laplacian(0.25)"
        assert MultiplierSymbol("quartic", grid).label == "quartic"

    def test_half_laplacian_commutes_with_m(self, grid, rng):
        f = random_smooth_field(grid, rng)
        half = MultiplierSymbol(SymbolName.FRAC_LAPLACIAN, grid, 0.5)
        m = MultiplierSymbol(SymbolName.WHITHAM_M, grid)
        left = apply_multiplier(half, apply_multiplier(m, f)).coeffs
        right = apply_multiplier(m, apply_multiplier(half, f)).coeffs
        assert np.allclose(left, right, rtol=1e-14, atol=1e-14)
        combined = apply_multiplier(MultiplierSymbol(SymbolName.DISSIPATION_A, grid), f).coeffs
        assert np.allclose(left, combined, rtol=1e-13, atol=1e-13)


class TestSemigroup:
    """Test convolution semigroups"""

    def test_negative_time_rejected(self, grid):
        with pytest.raises(NegativeTimeError):
            SemigroupKernel(MultiplierSymbol(SymbolName.HEAT_SQ, grid), -1.0)

    def test_time_zero_is_identity(self, grid):
        u = single_mode(grid, 3)
        out = apply_semigroup(MultiplierSymbol(SymbolName.DISSIPATION_A, grid), 0.0, u)
        assert np.allclose(out.samples, u.samples, atol=1e-15)

    def test_composition(self, grid):
        """Test kernel(t) kernel(s) == kernel(t + s)"""
        gen = MultiplierSymbol(SymbolName.HYPERVISCOUS_ELL, grid)
        composed = SemigroupKernel(gen, 0.1).compose(SemigroupKernel(gen, 0.2))
        assert np.allclose(composed.multiplier, SemigroupKernel(gen, 0.3).multiplier, rtol=1e-14)

    def test_composition_needs_same_generator(self, grid):
        a = SemigroupKernel(MultiplierSymbol(SymbolName.HEAT_SQ, grid), 0.1)
        b = SemigroupKernel(MultiplierSymbol(SymbolName.QUARTIC, grid), 0.1)
        with pytest.raises(GridMismatchError):
            a.compose(b)

    def test_heat_kernel_has_unit_mass(self, fine_grid):
        """Test the resolved heat kernel is a probability density"""
        kernel = SemigroupKernel(MultiplierSymbol(SymbolName.HEAT_SQ, fine_grid), 1.0)
        assert kernel.l1_norm() == pytest.approx(1.0, abs=1e-10)
        assert np.sum(kernel.physical_kernel()) * fine_grid.dx == pytest.approx(1.0, abs=1e-10)

    def test_single_mode_decays_at_symbol_rate(self, grid):
        gen = MultiplierSymbol(SymbolName.DISSIPATION_A, grid)
        u = single_mode(grid, 4)
        rate = float(symbol_values(SymbolName.DISSIPATION_A, 4 * grid.dxi))
        out = apply_semigroup(gen, 0.5, u)
        assert np.allclose(out.samples, math.exp(-0.5 * rate) * u.samples, atol=1e-14)


class TestKernelStudies:
    """Test measured decay rates and constants"""

    def test_fit_loglog_slope(self):
        xs = np.logspace(-3, 0, 10)
        assert fit_loglog_slope(xs, 3.0 * xs ** -0.7) == pytest.approx(-0.7, abs=1e-12)

    def test_span_check(self):
        with pytest.raises(ValueError):
            _check_span([0.1, 1.0], "times")
        with pytest.raises(ValueError):
            _check_span([0.0, 1.0], "times")

    def test_quartic_order_one_slope(self):
        """Test ||d/dx h_t|| decays like t^(-3/8)"""
        grid = make_grid(512, 8.0 * math.pi)
        quartic = MultiplierSymbol(SymbolName.QUARTIC, grid)
        study = kernel_norm_study(quartic, 1.0, np.logspace(-4, -1, 7), "l2")
        assert study.slope == pytest.approx(-0.375, abs=0.01)
        assert study.constant > 0
        assert len(study.rows) == 7

    def test_under_resolved_kernel(self, grid):
        quartic = MultiplierSymbol(SymbolName.QUARTIC, grid)
        with pytest.raises(UnderResolvedKernelError):
            kernel_norm_study(quartic, 1.0, [1.0e-4, 1.0e-2])

    def test_unknown_norm(self, grid):
        with pytest.raises(ValueError):
            kernel_norm_study(MultiplierSymbol(SymbolName.QUARTIC, grid), 1.0, [1.0, 100.0], norm="l3")

    def test_duality_scaling(self, grid):
        """Test the space-time norm scales exactly like eps^(-1/2)"""
        psi = SpectralField.from_samples(grid, gaussian(grid.x, 1.0, 2.0))
        study = duality_bound_study([1.0e-3, 1.0e-2, 1.0e-1], psi)
        assert study.slope == pytest.approx(-0.5, abs=1e-10)
        assert study.constant > 0

    def test_duality_rejects_zero_field(self, grid):
        with pytest.raises(ZeroFieldError):
            duality_bound_study([1.0e-3, 1.0e-1], SpectralField.zeros(grid))

    def test_duality_single_mode_closed_form(self):
        """Test cos(x) at eps = 1 gives sqrt(pi tanh(1) / 2)"""
        grid = make_grid(64, math.pi)
        study = duality_bound_study([1.0e-2, 1.0e-1, 1.0], single_mode(grid, 1))
        row = study.rows[-1]
        assert row.parameter == 1.0
        assert row.value == pytest.approx(math.sqrt(math.pi * math.tanh(1.0) / 2.0), rel=1e-12)

    def test_duality_is_linear_in_psi(self, grid):
        psi = SpectralField.from_samples(grid, gaussian(grid.x, 1.0, 2.0))
        eps_values = [1.0e-3, 1.0e-2, 1.0e-1]
        single = duality_bound_study(eps_values, psi)
        doubled = duality_bound_study(eps_values, psi * 2.0)
        for a, b in zip(single.rows, doubled.rows):
            assert b.value == pytest.approx(2.0 * a.value, rel=1e-14)
        assert doubled.constant == pytest.approx(single.constant, rel=1e-14)

    def test_measured_constants(self, grid):
        """Test the symbol ratios stay below their closed-form bounds"""
        assert smoothing_symbol_bound(grid) <= 0.5
        assert measure_linear_constant(grid) <= math.sqrt(0.5) + 1e-15


class TestQuadraticTerm:
    """Test the pseudospectral flux d/dx (u^2 / 2)"""

    def test_nyquist_dropped(self, grid):
        assert derivative_symbol(grid)[grid.nyquist_index] == 0.0

    def test_matches_closed_form(self, grid):
        """Test u = cos(xi x) gives -xi/2 sin(2 xi x)"""
        xi = 2 * grid.dxi
        u = single_mode(grid, 2)
        flux = SpectralField.from_coeffs(grid, quadratic_term(u.coeffs, grid))
        assert np.allclose(flux.samples, -0.5 * xi * np.sin(2 * xi * grid.x), atol=1e-13)

    def test_energy_neutral(self, grid, rng):
        """Test <d/dx (u^2/2), u> vanishes to roundoff with dealiasing"""
        coeffs = np.fft.fft(rng.standard_normal(grid.n_points), norm="ortho") * grid.dealias_mask()
        flux = quadratic_term(coeffs, grid)
        scale = np.sum(np.abs(coeffs)) * np.sum(np.abs(flux))
        assert abs(np.vdot(coeffs, flux).real) < 1e-12 * scale

    def test_stacked_states(self, grid, rng):
        stack = np.fft.fft(rng.standard_normal((3, grid.n_points)), norm="ortho", axis=-1)
        out = quadratic_term(stack, grid)
        for row in range(3):
            assert np.allclose(out[row], quadratic_term(stack[row], grid), atol=1e-14)
