"""
Operators: multiplier symbols, convolution semigroups and kernel studies.
"""

from .symbols import (
    SymbolName,
    MultiplierSymbol,
    make_symbol,
    apply_multiplier,
    eval_whitham_m,
    tanhc,
    symbol_values,
    endpoint_margin,
)
from .nonlinear import derivative_symbol, quadratic_term
from .semigroup import SemigroupKernel, apply_semigroup
from .studies import (
    fit_loglog_slope,
    kernel_norm_study,
    certify_l1_norm,
    duality_bound_study,
    duality_space_time_norm,
    measure_linear_constant,
    measure_bilinear_constant,
    smoothing_symbol_bound,
    quartic_decay_studies,
)

__all__ = [
    "SymbolName",
    "MultiplierSymbol",
    "make_symbol",
    "apply_multiplier",
    "eval_whitham_m",
    "tanhc",
    "symbol_values",
    "endpoint_margin",
    "derivative_symbol",
    "quadratic_term",
    "SemigroupKernel",
    "apply_semigroup",
    "fit_loglog_slope",
    "kernel_norm_study",
    "certify_l1_norm",
    "duality_bound_study",
    "duality_space_time_norm",
    "measure_linear_constant",
    "measure_bilinear_constant",
    "smoothing_symbol_bound",
    "quartic_decay_studies",
]
