"""The weight α of a skew product and its weighted-homogeneous top part."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import Poly1, Poly2, SkewProduct, iterate_skew

__all__ = [
    "NEG_INFINITY", "ExtendedRational", "AlphaNotFinite", "Case", "WeightSpec",
    "alpha", "weight_spec", "weight_of_poly", "weighted_top_part", "h_restricted",
    "predicted_weight", "WeightGrowthReport", "check_weight_growth", "format_alpha",
]


class AlphaNotFinite(ValueError):
    pass


class _NegInf:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NEG_INFINITY"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __reduce__(self):
        return (_NegInf, ())


NEG_INFINITY = _NegInf()
ExtendedRational = Union[Fraction, _NegInf]


class Case(enum.Enum):
    DELTA_GT = "delta>d"
    DELTA_LT = "delta<d"
    DELTA_EQ = "delta=d"


def _case(f: SkewProduct) -> Case:
    if f.delta > f.d:
        return Case.DELTA_GT
    if f.delta < f.d:
        return Case.DELTA_LT
    return Case.DELTA_EQ


def alpha(f: SkewProduct) -> ExtendedRational:
    """Exact weight α.  Depends only on the support of q, so monic input is not needed."""
    terms = list(f.q.terms)
    delta, d, gamma = f.delta, f.d, f.gamma
    if gamma == 0:
        lam = f.lam
        cands = [Fraction(n, lam - m) for n, m in terms if m < lam]
        return max(cands, default=Fraction(0)) if f.q.deg_z > 0 else Fraction(0)
    if delta > d:
        return max(Fraction(n, delta - m) for n, m in terms)
    cands = [Fraction(n - gamma, d - m) for n, m in terms if m < d]
    if delta < d:
        return max([Fraction(-gamma, d - delta)] + cands)
    if not cands:
        return NEG_INFINITY
    return max(cands)


def format_alpha(a: ExtendedRational) -> str:
    if a is NEG_INFINITY:
        return "-inf"
    return f"{a.numerator}/{a.denominator}"


def weight_of_poly(q: Poly2, a: ExtendedRational) -> Fraction:
    if a is NEG_INFINITY:
        raise AlphaNotFinite("weights need a finite alpha")
    return max(n + a * m for n, m in q.terms)


def weighted_top_part(q: Poly2, a: ExtendedRational) -> Poly2:
    top = weight_of_poly(q, a)
    return Poly2({(n, m): c for (n, m), c in q.terms.items() if n + a * m == top})


def h_restricted(h: Poly2) -> Poly1:
    """c -> h(1, c)."""
    return Poly1([(m, c) for (_, m), c in h.terms.items()])


@dataclass(frozen=True)
class WeightSpec:
    alpha: ExtendedRational
    case: Case
    gamma_zero: bool
    h: Optional[Poly2]
    dominant_monomial_ok: bool

    @property
    def case_tag(self) -> str:
        return f"{self.case.value}, " + ("gamma=0" if self.gamma_zero else "gamma!=0")

    @property
    def finite(self) -> bool:
        return self.alpha is not NEG_INFINITY


def weight_spec(f: SkewProduct) -> WeightSpec:
    a = alpha(f)
    case = _case(f)
    h = None if a is NEG_INFINITY else weighted_top_part(f.q, a)
    if case is Case.DELTA_GT:
        ok = a == Fraction(f.gamma, f.delta - f.d)
    else:
        ok = True
    return WeightSpec(alpha=a, case=case, gamma_zero=f.gamma == 0, h=h,
                      dominant_monomial_ok=ok)


def gamma_n(f: SkewProduct, n: int) -> int:
    """γ (δ^{n-1} + δ^{n-2} d + ... + d^{n-1})."""
    return f.gamma * sum(f.delta ** (n - 1 - k) * f.d ** k for k in range(n))


def predicted_weight(f: SkewProduct, a: ExtendedRational, n: int) -> Fraction:
    if a is NEG_INFINITY:
        raise AlphaNotFinite("no weight prediction for alpha = -inf")
    if f.delta > f.d:
        return a * f.delta ** n
    # covers δ = d too, where γ_n = nγd^{n-1}
    return gamma_n(f, n) + a * f.d ** n


@dataclass(frozen=True)
class WeightGrowthReport:
    n: int
    actual: Fraction
    predicted: Fraction

    @property
    def match(self) -> bool:
        return self.actual == self.predicted


def check_weight_growth(f: SkewProduct, n: int, budget: int | None = None) -> WeightGrowthReport:
    """Compare the weight of the second component of f^n with the case prediction."""
    a = alpha(f)
    if a is NEG_INFINITY:
        raise AlphaNotFinite("no weight growth check for alpha = -inf")
    fn = iterate_skew(f, n, budget)
    return WeightGrowthReport(n, weight_of_poly(fn.q, a), predicted_weight(f, a, n))
