"""
Tests for the mollified Duhamel map, the Picard solver and the
admissible horizon
"""

import math

import numpy as np
import pytest

from app.exceptions import (
    FixedPointDivergenceError,
    InadmissibleConfigError,
    TransformSizeError,
    ZeroFieldError,
)
from app.norms.functionals import l2_norm
from app.picard.duhamel import (
    DuhamelState,
    duhamel_map,
    initial_path,
    make_duhamel_state,
    pde_residual,
    single_mode_decay,
    sup_l2_norm,
)
from app.picard.fixed_point import FixedPointConfig, solve_fixed_point, solve_with_node_refinement
from app.picard.horizon import SAFETY_FACTOR, admissible_horizon, horizon_terms
from app.picard.mollifier import (
    FULL_DERIVATIVE_BOUND,
    HALF_DERIVATIVE_BOUND,
    mollifier_multiplier,
    mollifier_regularity,
    mollify,
)
from app.spectral.field import SpectralField
from app.spectral.profiles import gaussian, single_mode

EPS = 0.5
HORIZON = 0.05


def linear_state(grid, n_nodes=33):
    u0 = single_mode(grid, 2, amplitude=0.1)
    return make_duhamel_state(u0, EPS, HORIZON, n_nodes, nonlinear=False)


def loose_config(state, **controls):
    return FixedPointConfig(delta=l2_norm(state.u0_mollified), c_lin=0.1, c_bil=0.01, **controls)


class TestMollifier:
    """Test the gaussian mollifier"""

    def test_multiplier(self, grid):
        u = single_mode(grid, 4)
        xi = 4 * grid.dxi
        assert np.allclose(mollify(u, 0.3).samples, math.exp(-0.5 * (0.3 * xi) ** 2) * u.samples, atol=1e-14)
        assert mollifier_multiplier(np.array([0.0]), 1.0)[0] == 1.0

    def test_scale_must_be_positive(self, grid):
        with pytest.raises(ValueError):
            mollify(single_mode(grid, 1), 0.0)

    def test_regularity_constants_bounded(self, grid):
        """Test the eps-scaled Sobolev norms stay below their sup bounds"""
        u0 = SpectralField.from_samples(grid, gaussian(grid.x, 1.0, 0.5))
        rows = mollifier_regularity(u0, [1.0, 0.1, 0.01])
        assert [r.epsilon for r in rows] == [0.01, 0.1, 1.0]
        for row in rows:
            assert row.c_half <= HALF_DERIVATIVE_BOUND + 1e-12
            assert row.c_one <= FULL_DERIVATIVE_BOUND + 1e-12

    def test_regularity_of_zero_field(self, grid):
        with pytest.raises(ZeroFieldError):
            mollifier_regularity(SpectralField.zeros(grid), [0.1])


class TestDuhamelState:
    """Test problem data and path plumbing"""

    def test_validation(self, grid):
        u0 = single_mode(grid, 1)
        with pytest.raises(ValueError):
            DuhamelState(u0, 0.0, 1.0)
        with pytest.raises(ValueError):
            DuhamelState(u0, 0.1, 0.0)
        with pytest.raises(ValueError):
            DuhamelState(u0, 0.1, 1.0, n_nodes=1)

    def test_refined_nodes(self, grid):
        state = linear_state(grid, 17)
        finer = state.refined()
        assert finer.n_nodes == 33
        assert np.allclose(finer.nodes[::2], state.nodes)
        assert state.node_spacing == pytest.approx(HORIZON / 16)

    def test_initial_path_starts_at_mollified_data(self, grid):
        state = linear_state(grid)
        path = initial_path(state)
        assert path.shape == (state.n_nodes, grid.n_points)
        assert np.allclose(path[0], state.u0_mollified.coeffs)

    def test_path_shape_checked(self, grid):
        state = linear_state(grid)
        with pytest.raises(TransformSizeError):
            duhamel_map(np.zeros((3, grid.n_points)), state)

    def test_zero_data_is_fixed(self, grid):
        state = make_duhamel_state(SpectralField.zeros(grid), EPS, HORIZON, 9)
        assert sup_l2_norm(duhamel_map(np.zeros((9, grid.n_points)), state), grid) == 0.0

    def test_residual_needs_three_nodes(self, grid):
        state = linear_state(grid, 2)
        with pytest.raises(ValueError):
            pde_residual(initial_path(state), state)


class TestFixedPoint:
    """Test the Picard iteration"""

    def test_conditions(self):
        cfg = FixedPointConfig(delta=1.0, c_lin=0.2, c_bil=0.05)
        assert dict(cfg.conditions())["3 c_lin"] == pytest.approx(0.6)
        assert cfg.is_admissible
        assert not FixedPointConfig(delta=1.0, c_lin=0.4, c_bil=0.0).is_admissible

    def test_inadmissible_rejected(self, grid):
        state = linear_state(grid)
        with pytest.raises(InadmissibleConfigError):
            solve_fixed_point(state, FixedPointConfig(delta=1.0, c_lin=0.5, c_bil=0.0))

    def test_linear_solution_matches_mode_decay(self, grid):
        """Test the converged linear path follows exp(-t (eps ell + a)) per mode"""
        state = linear_state(grid)
        path, report = solve_fixed_point(state, loose_config(state))
        assert report.converged
        assert report.within_bound
        assert report.fixed_point_residual < 1e-9
        exact = state.u0_mollified.coeffs * single_mode_decay(state)[-1]
        scale = np.max(np.abs(state.u0_mollified.coeffs))
        assert np.allclose(path[-1], exact, atol=1e-8 * scale)

    def test_single_frequency_decay(self, grid):
        state = linear_state(grid)
        table = single_mode_decay(state, 0.0)
        assert np.allclose(table, 1.0)

    def test_residual_second_order(self, grid):
        """Test halving the node spacing cuts the residual about fourfold"""
        residuals = []
        for nodes in (17, 33):
            state = linear_state(grid, nodes)
            path, _ = solve_fixed_point(state, loose_config(state, tol=1e-13))
            residuals.append(pde_residual(path, state))
        assert residuals[1] < residuals[0] / 3.0

    def test_divergence_reported(self, grid):
        state = linear_state(grid)
        with pytest.raises(FixedPointDivergenceError) as exc_info:
            solve_fixed_point(state, loose_config(state, max_iters=1, tol=1e-30))
        assert len(exc_info.value.trace) == 1

    def test_node_refinement(self, grid):
        state = linear_state(grid, 17)
        _, report, finest = solve_with_node_refinement(state, loose_config(state), quadrature_tol=1e-6)
        assert finest.n_nodes == 33
        assert report.n_nodes == 33


class TestHorizon:
    """Test the admissible horizon"""

    def test_terms(self):
        a, b = horizon_terms(0.25, 1.0, 2.0, 0.5, 0.1)
        assert a == pytest.approx(0.5 * math.sqrt(4.0))
        assert b == pytest.approx(0.1 * 0.25 ** -0.375 * 2.0)

    def test_zero_data_uses_linear_root(self):
        """Test with no data only the linear condition binds"""
        assert admissible_horizon(0.5, 0.0, 0.2, 1.0) == pytest.approx(SAFETY_FACTOR * 0.5 / 0.04)
        strict = admissible_horizon(0.5, 0.0, 0.2, 1.0, strict=True)
        assert strict == pytest.approx(SAFETY_FACTOR * 0.5 * (1.0 / 0.6) ** 2)

    def test_conditions_hold_at_horizon(self):
        eps, norm, c_lin, c_bil = 0.5, 0.3, 0.4, 0.8
        horizon = admissible_horizon(eps, norm, c_lin, c_bil, strict=True)
        cfg = FixedPointConfig.from_measured(eps, horizon, norm, c_lin, c_bil)
        assert cfg.is_admissible
        assert admissible_horizon(eps, norm, c_lin, c_bil) > horizon

    @pytest.mark.parametrize("strict", [False, True])
    def test_monotone_in_eps_and_data(self, strict):
        """Test the horizon grows with eps and shrinks as the data grows"""
        by_eps = [admissible_horizon(eps, 0.5, 0.4, 0.8, strict=strict) for eps in (1e-3, 1e-2, 1e-1, 1.0)]
        assert all(b > a for a, b in zip(by_eps, by_eps[1:]))
        by_norm = [admissible_horizon(0.1, norm, 0.4, 0.8, strict=strict) for norm in (0.0, 0.1, 1.0, 10.0)]
        assert all(b <= a for a, b in zip(by_norm, by_norm[1:]))
        assert by_norm[-1] < by_norm[0]

    def test_arguments(self):
        with pytest.raises(ValueError):
            admissible_horizon(0.0, 1.0, 1.0, 1.0)
        with pytest.raises(ValueError):
            admissible_horizon(0.5, -1.0, 1.0, 1.0)
