"""Degree growth of iterates: exact symbolic values against closed-form bounds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple, Union

from .algebra import SkewProduct, TermBudgetExceeded, compose_skew, default_term_budget
from .weights import (NEG_INFINITY, Case, WeightGrowthReport, WeightSpec, predicted_weight,
                      weight_of_poly, weight_spec)

__all__ = ["Unavailable", "DegreeReport", "deg_fn", "deg_bounds", "check_degree_growth",
           "degree_sequence", "iterates", "closed_form_exact"]


@dataclass(frozen=True)
class Unavailable:
    """Symbolic composition exceeded the term budget."""

    budget: int

    def __str__(self):
        return "unavailable"


Exact = Union[int, Unavailable]


def _total_degree(f: SkewProduct) -> int:
    return max(f.p.degree, f.q.total_degree)


def iterates(f: SkewProduct, n_max: int, budget: Optional[int] = None
             ) -> Iterator[Tuple[int, SkewProduct]]:
    """Yield (n, f^n) for n = 1.. until n_max or the term budget runs out."""
    budget = default_term_budget() if budget is None else budget
    cur = f
    for n in range(1, n_max + 1):
        if n > 1:
            try:
                cur = compose_skew(f, cur, budget)
            except TermBudgetExceeded:
                return
        yield n, cur


def deg_fn(f: SkewProduct, n: int, budget: Optional[int] = None) -> Exact:
    """Total degree of f^n, or Unavailable if the composition is too large.

    Degree is invariant under the scaling that makes p and b monic, so the
    map is composed as given; exact input stays exact.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = default_term_budget() if budget is None else budget
    last = None
    for k, fk in iterates(f, n, budget):
        last = (k, fk)
    if last is None or last[0] < n:
        return Unavailable(budget)
    return _total_degree(last[1])


def closed_form_exact(f: SkewProduct, spec: Optional[WeightSpec] = None) -> bool:
    """True when deg(f^n) has a closed form (δ <= d and α <= 0)."""
    spec = spec or weight_spec(f)
    return spec.case is not Case.DELTA_GT and spec.alpha <= 0


def deg_bounds(f: SkewProduct, spec: Optional[WeightSpec], n: int
               ) -> Tuple[Fraction, Fraction]:
    """(lower, upper) bounds for deg(f^n); equal on the closed-form branches."""
    spec = spec or weight_spec(f)
    delta, d, gamma = f.delta, f.d, f.gamma
    a = spec.alpha
    pos = a is not NEG_INFINITY and a > 0
    amax = max(a, 1) if pos else Fraction(1)
    ainv = max(1 / a, 1) if pos else Fraction(1)
    if spec.case is Case.DELTA_GT:
        return Fraction(delta ** n), amax * delta ** n
    if spec.case is Case.DELTA_LT:
        geo = Fraction(gamma, d - delta) * (1 - Fraction(delta, d) ** n)
        lower = (1 + geo) * d ** n
        if not pos:
            return lower, lower
        return lower, (amax + ainv * geo) * d ** n
    lin = Fraction(gamma, d) * n
    lower = (lin + 1) * d ** n
    if not pos:
        return lower, lower
    return lower, (ainv * lin + amax) * d ** n


def degree_sequence(f: SkewProduct, n_max: int, budget: Optional[int] = None) -> List[int]:
    """deg(f^n) for n = 1.. as far as available (closed form when one exists)."""
    spec = weight_spec(f)
    if closed_form_exact(f, spec):
        return [int(deg_bounds(f, spec, n)[0]) for n in range(1, n_max + 1)]
    return [_total_degree(fn) for _, fn in iterates(f, n_max, budget)]


def _int_if_whole(x: Fraction):
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class DegreeReport:
    n: int
    exact: Exact
    lower: Union[int, Fraction]
    upper: Union[int, Fraction]
    weight: Optional[WeightGrowthReport] = None

    @property
    def within_bounds(self) -> bool:
        if isinstance(self.exact, Unavailable):
            return True
        return self.lower <= self.exact <= self.upper


def _weight_check_applies(f: SkewProduct, spec: WeightSpec) -> bool:
    a = spec.alpha
    return a is not NEG_INFINITY and (a > 0 or f.gamma == 0)


def check_degree_growth(f: SkewProduct, spec: Optional[WeightSpec], n_max: int,
                        budget: Optional[int] = None) -> List[DegreeReport]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    spec = spec or weight_spec(f)
    budget = default_term_budget() if budget is None else budget
    with_weight = _weight_check_applies(f, spec)
    known = {}
    for n, fn in iterates(f, n_max, budget):
        wr = None
        if with_weight:
            wr = WeightGrowthReport(n, weight_of_poly(fn.q, spec.alpha),
                                    predicted_weight(f, spec.alpha, n))
        known[n] = (_total_degree(fn), wr)
    out = []
    for n in range(1, n_max + 1):
        lo, hi = deg_bounds(f, spec, n)
        exact, wr = known.get(n, (Unavailable(budget), None))
        out.append(DegreeReport(n, exact, _int_if_whole(lo), _int_if_whole(hi), wr))
    return out
