"""Exact klt / plt / lc checks for pairs ``(X, Y + B)`` read off a log
resolution, the different, the Ohsawa measure's pole divisor, adjoint
ideals, and a Monte-Carlo oracle for the shell integrals behind them."""

from .adjoint import Chart, MonomialGerm, blowup_chart, epsilon_threshold, is_trivial, monomial_membership, vanishing_orders
from .adjunction import different, different_zero, inversion_check, klt_of_different
from .divisor import PrimeId, QDivisor, as_rational
from .ohsawa import OhsawaSetup, is_locally_integrable, pole_divisor, setup_for
from .resolution import (
    BoundarySpec,
    DivisorRecord,
    Incidence,
    Kind,
    SncModel,
    a_surface_model,
    cone_blowup_model,
    fermat_model,
    kollar_example_model,
    node_model,
    parse_family,
    validate,
)
from .singularities import PairClass, Verdict, classify_absolute, classify_pair

__version__ = "0.1.0"

__all__ = [
    "BoundarySpec",
    "Chart",
    "DivisorRecord",
    "Incidence",
    "Kind",
    "MonomialGerm",
    "OhsawaSetup",
    "PairClass",
    "PrimeId",
    "QDivisor",
    "SncModel",
    "Verdict",
    "a_surface_model",
    "as_rational",
    "blowup_chart",
    "classify_absolute",
    "classify_pair",
    "cone_blowup_model",
    "different",
    "different_zero",
    "epsilon_threshold",
    "fermat_model",
    "inversion_check",
    "is_locally_integrable",
    "is_trivial",
    "klt_of_different",
    "kollar_example_model",
    "monomial_membership",
    "node_model",
    "parse_family",
    "pole_divisor",
    "setup_for",
    "validate",
    "vanishing_orders",
]
