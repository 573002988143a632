"""Relative zeta regularization of the Coulomb plus point interaction pair.

Thin python layer over the C++ core: special functions, the resolvent-trace
closed forms, the relative spectral measure, the continued zeta function and
the regularized partition function.
"""

from ._relzeta import (
    BranchError,
    PoleError,
    bernoulli,
    bound_state_threshold,
    coupling_function,
    digamma,
    euler_gamma,
    find_bound_state,
    hankel_heat_trace,
    heat_trace,
    laurent_at_minus_half,
    log_eta,
    log_gamma,
    log_partition,
    resolvent_trace,
    spectral_measure,
    trace_integral_closed,
    trace_integral_contour,
    trigamma,
    zeta_continued,
)

__all__ = [
    "BranchError",
    "PoleError",
    "bernoulli",
    "bound_state_threshold",
    "coupling_function",
    "digamma",
    "euler_gamma",
    "find_bound_state",
    "hankel_heat_trace",
    "heat_trace",
    "laurent_at_minus_half",
    "log_eta",
    "log_gamma",
    "log_partition",
    "resolvent_trace",
    "spectral_measure",
    "trace_integral_closed",
    "trace_integral_contour",
    "trigamma",
    "zeta_continued",
]

__version__ = "1.0.0"
