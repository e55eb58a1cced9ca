"""
Norms: functionals and executable inequalities.
"""

from .functionals import (
    l2_norm,
    l2_norm_samples,
    hs_norm,
    inhomogeneous_hs_norm,
    n_norm,
    hyperviscous_norm,
    linf_norm,
    compute_norms,
    homogeneous_weight,
    tail_fraction,
    sobolev_tail_fraction,
)
from .inequalities import (
    check_interpolation_s,
    check_endpoint_34,
    endpoint_scale,
    check_product_laws,
    product_law_corpus,
    check_time_integrated_endpoint,
)

__all__ = [
    "l2_norm",
    "l2_norm_samples",
    "hs_norm",
    "inhomogeneous_hs_norm",
    "n_norm",
    "hyperviscous_norm",
    "linf_norm",
    "compute_norms",
    "homogeneous_weight",
    "tail_fraction",
    "sobolev_tail_fraction",
    "check_interpolation_s",
    "check_endpoint_34",
    "endpoint_scale",
    "check_product_laws",
    "product_law_corpus",
    "check_time_integrated_endpoint",
]
