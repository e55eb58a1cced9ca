"""
Kernel Norm Studies

Measured decay of semigroup kernel norms in time, the epsilon scaling of
the dissipation-weighted space-time bound, and the measured constants the
Picard horizon needs in place of the unnamed C's.
"""

import logging
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import scipy.fft
from scipy.integrate import simpson

from ..exceptions import QuadratureError, UnderResolvedKernelError, ZeroFieldError
from ..models.report_models import DualityStudy, KernelStudy, StudyRow
from ..spectral.field import SpectralField
from ..spectral.grid import Grid, make_grid
from .semigroup import SemigroupKernel
from .symbols import MultiplierSymbol, SymbolName, eval_whitham_m, symbol_values

logger = logging.getLogger(__name__)

NYQUIST_TAIL_TOL = 1.0e-8
L1_CERTIFY_TOL = 1.0e-6


def fit_loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log(y) against log(x)"""
    return float(np.polyfit(np.log(np.asarray(xs)), np.log(np.asarray(ys)), 1)[0])


def _check_span(values: Sequence[float], what: str):
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2 or np.any(values <= 0):
        raise ValueError(f"{what} must be positive with at least two entries")
    if values.max() / values.min() < 100.0 * (1.0 - 1e-12):
        raise ValueError(f"{what} must span at least two decades")


def derivative_weight(grid: Grid, order: float) -> np.ndarray:
    """(-Delta)^{(order-1)/2} d/dx for order >= 1, |xi|^order below"""
    xi = grid.frequencies
    if order >= 1.0:
        weight = 1j * xi * np.abs(xi) ** (order - 1.0)
        weight[grid.nyquist_index] = 0.0
        return weight
    return (np.abs(xi) ** order).astype(np.complex128)


def _kernel_table(generator: MultiplierSymbol, tau: float, weight: np.ndarray, check: bool) -> np.ndarray:
    kernel = SemigroupKernel(generator, tau)
    table = kernel.multiplier * weight
    if check:
        peak = float(np.max(np.abs(table)))
        nyquist = float(kernel.multiplier[generator.grid.nyquist_index])
        if peak > 0 and nyquist > NYQUIST_TAIL_TOL:
            raise UnderResolvedKernelError(
                f"{generator.label} kernel at time {tau:g} keeps multiplier {nyquist:.3g} "
                f"at the Nyquist frequency of {generator.grid.describe()}"
            )
    return table


def kernel_norm_study(
    gen: MultiplierSymbol,
    derivative_order: float,
    times: Iterable[float],
    norm: str = "l2",
    epsilon: float = 1.0,
    check_resolution: bool = True,
) -> KernelStudy:
    """
    Measure ||(-Delta)^{(s-1)/2} d/dx e^{-eps t a}||  over a list of times

    Args:
        gen: Generator symbol a
        derivative_order: Total power s of |xi| carried by the kernel
        times: Times t (the kernel is evaluated at eps * t)
        norm: "l2" (Fourier side) or "l1" (inverse transform plus quadrature)
        epsilon: Time scale
        check_resolution: Raise when the kernel is not resolved at the smallest time

    Returns:
        KernelStudy with rows, fitted log-log slope and measured constant

    Raises:
        ValueError: If times do not span two decades
        UnderResolvedKernelError: If the multiplier at Nyquist exceeds 1e-8
    """
    times = [float(t) for t in times]
    _check_span(times, "times")
    if norm not in ("l1", "l2"):
        raise ValueError(f"Unknown kernel norm: {norm}")

    grid = gen.grid
    weight = derivative_weight(grid, derivative_order)
    rows: List[StudyRow] = []
    for t in sorted(times):
        table = _kernel_table(gen, epsilon * t, weight, check_resolution)
        if norm == "l2":
            value = math.sqrt(float(np.sum(np.abs(table) ** 2)) / (2.0 * grid.half_length))
        else:
            value = float(np.sum(np.abs(scipy.fft.ifft(table))))
        rows.append(StudyRow(parameter=t, value=value))

    xs = [epsilon * r.parameter for r in rows]
    ys = [r.value for r in rows]
    slope = fit_loglog_slope(xs, ys) if all(y > 0 for y in ys) else None
    exponent = slope if slope is not None else 0.0
    constant = max(y * x ** (-exponent) for x, y in zip(xs, ys))

    logger.info(
        f"kernel study {gen.label} order {derivative_order:g} ({norm}): "
        f"slope={slope if slope is None else round(slope, 6)} constant={constant:.6g}"
    )
    return KernelStudy(
        generator=gen.label,
        derivative_order=derivative_order,
        norm=norm,
        epsilon=epsilon,
        rows=rows,
        slope=slope,
        constant=constant,
    )


def certify_l1_norm(gen: MultiplierSymbol, t: float, derivative_order: float = 0.0) -> Tuple[float, float, bool]:
    """
    L1 norm of a kernel and its change when L and n are both doubled

    Returns:
        (value, relative change, certified)
    """
    def l1_on(grid: Grid) -> float:
        symbol = gen.on_grid(grid)
        table = _kernel_table(symbol, t, derivative_weight(grid, derivative_order), False)
        return float(np.sum(np.abs(scipy.fft.ifft(table))))

    value = l1_on(gen.grid)
    doubled = l1_on(make_grid(2 * gen.grid.n_points, 2.0 * gen.grid.half_length))
    change = abs(doubled - value) / max(abs(value), 1e-300)
    return value, change, change < L1_CERTIFY_TOL


def _duality_ratio(xi: np.ndarray, extra_order: float) -> np.ndarray:
    """a_num^2 / ell with a_num = |xi|^{1+extra} m(xi); zero at xi = 0"""
    ax = np.abs(xi)
    a_num = ax ** (1.0 + extra_order) * np.asarray(eval_whitham_m(xi))
    ell = symbol_values(SymbolName.HYPERVISCOUS_ELL, xi)
    ratio = np.zeros_like(ax)
    nonzero = ax > 0
    ratio[nonzero] = a_num[nonzero] ** 2 / ell[nonzero]
    return ratio


def duality_space_time_norm(psi: SpectralField, epsilon: float, extra_order: float = 0.0) -> float:
    """
    sqrt(int_0^inf ||a_num(D) G_{eps t} psi||^2 dt) from the per-mode closed form
    |psi_k|^2 a_num^2 / (2 eps ell)
    """
    ratio = _duality_ratio(psi.grid.frequencies, extra_order)
    total = psi.grid.dx * float(np.sum(np.abs(psi.coeffs) ** 2 * ratio)) / (2.0 * epsilon)
    return math.sqrt(total)


def _duality_by_quadrature(psi: SpectralField, epsilon: float, extra_order: float, points: int = 4001) -> float:
    """Same quantity by Simpson quadrature in log time"""
    grid = psi.grid
    xi = grid.frequencies
    ell = symbol_values(SymbolName.HYPERVISCOUS_ELL, xi)
    nonzero = np.abs(xi) > 0
    rates = 2.0 * epsilon * ell[nonzero]
    weights = grid.dx * np.abs(psi.coeffs[nonzero]) ** 2 * _duality_ratio(xi, extra_order)[nonzero] * ell[nonzero]
    t_min = 1.0e-6 / rates.max()
    t_max = 50.0 / rates.min()
    u = np.linspace(math.log(t_min), math.log(t_max), points)
    t = np.exp(u)
    integrand = np.exp(-np.outer(t, rates)) @ weights * t
    head = float(np.sum(weights)) * t_min
    return math.sqrt(head + float(simpson(integrand, x=u)))


def duality_bound_study(
    eps_values: Iterable[float],
    psi: SpectralField,
    extra_order: float = 0.0,
    verify_quadrature: bool = False,
    quadrature_tol: float = 1.0e-3,
) -> DualityStudy:
    """
    Space-time norm of |xi|^{extra} (-Delta)^{1/2} M G_{eps t} psi against eps

    Args:
        eps_values: Positive epsilons spanning two decades
        psi: Nonzero test field
        extra_order: Extra |xi| power; 0.5 gives the (-Delta)^{3/4} M variant
        verify_quadrature: Cross-check the closed form by time quadrature
        quadrature_tol: Relative tolerance of that cross-check

    Returns:
        DualityStudy with rows, fitted slope and measured constant

    Raises:
        ZeroFieldError: If psi vanishes
        QuadratureError: If the quadrature cross-check disagrees
    """
    eps_values = [float(e) for e in eps_values]
    _check_span(eps_values, "eps_values")
    psi_l2 = math.sqrt(psi.grid.dx * float(np.sum(np.abs(psi.coeffs) ** 2)))
    if psi_l2 == 0.0:
        raise ZeroFieldError("duality_bound_study needs a nonzero psi")
    if extra_order > 0.5:
        logger.warning(f"extra_order {extra_order} > 1/2: the symbol ratio is unbounded in xi")

    rows: List[StudyRow] = []
    for eps in sorted(eps_values):
        value = duality_space_time_norm(psi, eps, extra_order)
        if verify_quadrature:
            check = _duality_by_quadrature(psi, eps, extra_order)
            if abs(check - value) > quadrature_tol * value:
                raise QuadratureError(
                    f"time quadrature {check:.8g} disagrees with closed form {value:.8g} at eps={eps:g}"
                )
        rows.append(StudyRow(parameter=eps, value=value))

    slope = fit_loglog_slope([r.parameter for r in rows], [r.value for r in rows])
    constant = max(r.value * math.sqrt(r.parameter) / psi_l2 for r in rows)
    logger.info(f"duality study extra_order={extra_order:g}: slope={slope:.6f} constant={constant:.6g}")
    return DualityStudy(extra_order=extra_order, psi_l2=psi_l2, rows=rows, slope=slope, constant=constant)


def measure_linear_constant(grid: Grid, extra_order: float = 0.0) -> float:
    """sup over grid modes of sqrt(a_num^2 / (2 ell)); the C in ||L|| <= C sqrt(T/eps)"""
    ratio = _duality_ratio(grid.frequencies, extra_order)
    return math.sqrt(float(ratio.max()) / 2.0)


def measure_bilinear_constant(study: KernelStudy, exponent: float = 3.0 / 8.0) -> float:
    """
    Bilinear constant from a quartic order-1 kernel study

    ||B(u,v)|| <= 1/2 int_0^T C_h (eps (t - s))^{-3/8} ds ||u|| ||v||
               = 0.8 C_h eps^{-3/8} T^{5/8} ||u|| ||v||
    """
    c_h = max(r.value * (study.epsilon * r.parameter) ** exponent for r in study.rows)
    return 0.5 * c_h / (1.0 - exponent)


def smoothing_symbol_bound(grid: Grid) -> float:
    """sup over xi != 0 of |xi|^{3/2} / (2 |xi| m(xi)); at most 1/2 since m(xi)^2 >= |xi|"""
    xi = np.abs(grid.frequencies)
    xi = xi[xi > 0]
    return float(np.max(xi ** 1.5 / (2.0 * xi * np.asarray(eval_whitham_m(xi)))))


def quartic_decay_studies(grid: Grid, times: Sequence[float], epsilon: float = 1.0) -> List[KernelStudy]:
    """The three quartic-kernel rates: orders 1, 3/2 and 2"""
    quartic = MultiplierSymbol(SymbolName.QUARTIC, grid)
    return [kernel_norm_study(quartic, order, times, "l2", epsilon) for order in (1.0, 1.5, 2.0)]
