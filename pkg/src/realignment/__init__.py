"""Realignment-based separability criteria for bipartite density matrices."""

from .bipartite import (
    BipartiteState,
    InvalidStateError,
    marginal_a,
    marginal_b,
    partial_transpose,
    partial_transpose_b,
    pure_state,
    purity,
    realign,
    schmidt_coefficients,
    unrealign,
)
from .criteria import (
    CriterionReport,
    filter_criterion,
    generalized_rc,
    mirror_theta_criterion,
    omega_family,
    ppt_check,
    rc,
    run_all,
    theta_criterion,
    transpose_theta_criterion,
    zhang,
)
from .linalg import NumericalError, hs_inner, kron, operator_norm, singular_values, trace_norm
from .superop import SuperOp, SuperOpFamily, apply, build_rho_e, check_condicio, estimate_breve_epsilon

__version__ = "0.1.0"
