"""Green functions, weights and degree growth of polynomial skew products on C^2.

A skew product is f(z, w) = (p(z), q(z, w)).  The package computes the
weight α exactly, certified escape regions, Green functions with rigorous
error bounds, the extension to weighted projective space with its
algebraic-stability verdict, and degree growth of iterates.
"""
from .algebra import DomainError, Poly1, Poly2, SkewProduct, TermBudgetExceeded
from .green import GreenValue, Status, ValueKind, WrongCase
from .mapfile import ParseError, format_map, parse_map
from .weights import NEG_INFINITY, alpha, weight_spec

__all__ = [
    "DomainError", "Poly1", "Poly2", "SkewProduct", "TermBudgetExceeded", "GreenValue",
    "Status", "ValueKind", "WrongCase", "ParseError", "format_map", "parse_map",
    "NEG_INFINITY", "alpha", "weight_spec",
]
__version__ = "0.1.0"
