"""holderlab: numerical estimation of weighted anisotropic Holder seminorms
on the half-space and on smooth bounded domains, plus verification harnesses
for the inequalities between them."""

from .fields import (
    SpaceParams,
    MultiIndex,
    Expression,
    differentiate,
    evaluate,
    dilate,
    fd_consistency,
    multiindices,
    preweight_boundary,
    expression_to_dict,
    expression_from_dict,
)
from .windows import Window, DomainGeometry, HALF_SPACE
from .seminorms import (
    SeminormSpec,
    SeminormEstimate,
    Ladder,
    TooFewRungs,
    weighted_seminorm,
    kth_difference_seminorm,
    sup_norm,
    time_seminorm,
    zygmund_seminorm,
    estimate_seminorm,
    estimate_with_ladder,
    classify_growth,
)
from .operators import (
    BoundaryFunction,
    iterated_log,
    fd_weights,
    mollify,
    gauge_tilde,
    gauge_full,
    gauge_constant,
    derivative_envelope,
    poisson_extend,
)
from .norms import composite_norm, generating_terms, derived_group_terms
from .checks import (
    CheckCase,
    VerificationReport,
    run_check,
    registry_ids,
    check_description,
    default_params,
)
from .cli import emit_plot_data, list_cases, run_suite

__version__ = "0.1.0"
