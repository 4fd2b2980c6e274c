"""Numerical lab for products of unbounded Bloch functions.

Points of the disc carry a gap representation so that radii like
``1 - exp(-160)`` stay exact; functions are immutable expression trees with
symbolic derivatives; the lab modules turn the two constructions into finite,
checkable certificates.
"""
from . import kernels
from .disc import DiscPoint, Horocycle, mobius_eval, pseudo_hyperbolic
from .errors import BlochLabError, ConvergenceError, DomainError, ParseError, ScheduleError
from .lab import (
    build_counterexample, interpolation_derivative_identity, select_radii, stolz_contains,
    uniform_separation, verify_nonbloch, verify_theorem1, verify_theorem2,
)
from .parse import parse_expr
from .seminorms import (
    bloch_seminorm_est, blog_seminorm_est, integral_mean, normal_seminorm_est, sup_mean,
)
from .zoo import deriv, evaluate, log_modulus

__version__ = "0.1.0"

__all__ = [
    "kernels", "DiscPoint", "Horocycle", "mobius_eval", "pseudo_hyperbolic",
    "BlochLabError", "ConvergenceError", "DomainError", "ParseError", "ScheduleError",
    "build_counterexample", "interpolation_derivative_identity", "select_radii",
    "stolz_contains", "uniform_separation", "verify_nonbloch", "verify_theorem1",
    "verify_theorem2", "parse_expr", "bloch_seminorm_est", "blog_seminorm_est",
    "integral_mean", "normal_seminorm_est", "sup_mean", "deriv", "evaluate", "log_modulus",
]
