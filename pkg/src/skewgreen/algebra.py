"""Sparse polynomials in one and two variables, and polynomial skew products.

Coefficients are either exact (``int``, ``Fraction`` or :class:`QQi`, a
Gaussian rational) or floating (``float``/``complex``).  Exact coefficients
are kept exact through every operation so that degree counts of iterates are
never corrupted by rounding.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping, Tuple, Union

__all__ = [
    "QQi", "Poly1", "Poly2", "SkewProduct", "TermBudgetExceeded", "DomainError",
    "eval_poly1", "eval_poly2", "apply", "compose_skew", "iterate_skew",
    "normalize_monic", "default_term_budget", "is_exact",
]

FLOAT_PRUNE = 1e-300


class TermBudgetExceeded(RuntimeError):
    """A symbolic expansion grew beyond the configured number of terms."""


class DomainError(ValueError):
    pass


def default_term_budget() -> int:
    return int(os.environ.get("SKEWGREEN_TERM_BUDGET", 2_000_000))


class QQi:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, QQi):
            return x
        if isinstance(x, (int, Fraction)):
            return QQi(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return complex(self) + other
        return _simplify(QQi(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return complex(self) * other
        return _simplify(QQi(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return complex(self) / other
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("QQi division by zero")
        return self * QQi(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        o = QQi._lift(other)
        if o is NotImplemented:
            return other / complex(self)
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return QQi(1) / (self ** (-k))
        out, base = QQi(1), self
        while k:
            if k & 1:
                out = QQi._lift(out * base)
            base = QQi._lift(base * base)
            k >>= 1
        return _simplify(out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, QQi):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


Coeff = Union[int, Fraction, QQi, float, complex]


def _simplify(c):
    """Canonical form of an exact coefficient: QQi -> Fraction -> int."""
    if isinstance(c, QQi):
        if c.im != 0:
            return c
        c = c.re
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def is_exact(c) -> bool:
    return isinstance(c, (int, Fraction, QQi)) and not isinstance(c, bool)


def _is_zero(c) -> bool:
    if is_exact(c):
        return c == 0
    return abs(c) < FLOAT_PRUNE


def _clean(items: Iterable) -> dict:
    out = {}
    for k, c in items:
        c = _simplify(c) if is_exact(c) else c
        if not _is_zero(c):
            out[k] = c
    return out


def _accumulate(pairs: Iterable, budget: int | None = None) -> dict:
    acc: dict = {}
    for k, c in pairs:
        if k in acc:
            acc[k] = acc[k] + c
        else:
            acc[k] = c
            if budget is not None and len(acc) > budget:
                raise TermBudgetExceeded(f"expansion exceeded {budget} terms")
    return _clean(acc.items())


class Poly1:
    """Sparse polynomial in z: a frozen map exponent -> nonzero coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = MappingProxyType(_accumulate(items))
        self._hash = None

    @classmethod
    def monomial(cls, k: int, c: Coeff = 1) -> "Poly1":
        return cls({k: c})

    @property
    def terms(self) -> Mapping[int, Coeff]:
        return self._terms

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._terms, default=-1)

    @property
    def leading(self) -> Coeff:
        return self._terms[self.degree] if self._terms else 0

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def to_float(self) -> "Poly1":
        return Poly1({k: complex(c) for k, c in self._terms.items()})

    def __call__(self, z):
        return eval_poly1(self, z)

    def __add__(self, other: "Poly1") -> "Poly1":
        return Poly1(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return Poly1({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            return Poly1({k: c * other for k, c in self._terms.items()})
        return Poly1(_accumulate(
            (i + j, a * b)
            for i, a in self._terms.items() for j, b in other._terms.items()))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly1":
        out, base = Poly1({0: 1}), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def compose(self, inner: "Poly1") -> "Poly1":
        """self(inner(z)), by Horner over the dense exponent range."""
        out = Poly1()
        for k in range(self.degree, -1, -1):
            out = out * inner
            c = self._terms.get(k)
            if c is not None:
                out = out + Poly1({0: c})
        return out

    def lift(self) -> "Poly2":
        return Poly2({(k, 0): c for k, c in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, Poly1) and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly1({dict(sorted(self._terms.items()))})"


class Poly2:
    """Sparse polynomial in (z, w): a frozen map (n, m) -> nonzero coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Tuple[int, int], Coeff] | Iterable = (),
                 budget: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        self._terms = MappingProxyType(_accumulate(items, budget))
        self._hash = None

    @property
    def terms(self) -> Mapping[Tuple[int, int], Coeff]:
        return self._terms

    def __len__(self):
        return len(self._terms)

    @property
    def deg_w(self) -> int:
        return max((m for _, m in self._terms), default=-1)

    @property
    def deg_z(self) -> int:
        return max((n for n, _ in self._terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((n + m for n, m in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def to_float(self) -> "Poly2":
        return Poly2({k: complex(c) for k, c in self._terms.items()})

    def coeff_of_w(self, m: int) -> Poly1:
        """The polynomial in z multiplying w^m."""
        return Poly1({n: c for (n, mm), c in self._terms.items() if mm == m})

    def __call__(self, z, w):
        return eval_poly2(self, z, w)

    def __add__(self, other: "Poly2") -> "Poly2":
        return Poly2(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return Poly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def mul(self, other: "Poly2", budget: int | None = None) -> "Poly2":
        if budget is not None and len(self) * len(other) > 64 * budget:
            raise TermBudgetExceeded(f"product of {len(self)}x{len(other)} terms")
        return Poly2(((
            (n1 + n2, m1 + m2), a * b)
            for (n1, m1), a in self._terms.items()
            for (n2, m2), b in other._terms.items()), budget)

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return Poly2({k: c * other for k, c in self._terms.items()})
        return self.mul(other)

    __rmul__ = __mul__

    def pow(self, k: int, budget: int | None = None) -> "Poly2":
        out, base = Poly2({(0, 0): 1}), self
        while k:
            if k & 1:
                out = out.mul(base, budget)
            k >>= 1
            if k:
                base = base.mul(base, budget)
        return out

    def __eq__(self, other):
        return isinstance(other, Poly2) and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly2({dict(sorted(self._terms.items()))})"


def eval_poly1(p: Poly1, z):
    """Horner evaluation over the sorted exponents."""
    acc = 0
    prev = None
    for k in sorted(p.terms, reverse=True):
        if prev is not None:
            acc = acc * z ** (prev - k)
        acc = acc + p.terms[k]
        prev = k
    if prev:
        acc = acc * z ** prev
    return acc


def eval_poly2(q: Poly2, z, w):
    """Horner in w with each w-coefficient evaluated by :func:`eval_poly1`."""
    by_m: dict[int, dict[int, Coeff]] = {}
    for (n, m), c in q.terms.items():
        by_m.setdefault(m, {})[n] = c
    acc = 0
    prev = None
    for m in sorted(by_m, reverse=True):
        if prev is not None:
            acc = acc * w ** (prev - m)
        acc = acc + eval_poly1(Poly1(by_m[m]), z)
        prev = m
    if prev:
        acc = acc * w ** prev
    return acc


@dataclass(frozen=True)
class SkewProduct:
    """The map f(z, w) = (p(z), q(z, w)) with deg p >= 2 and deg_w q >= 2."""

    p: Poly1
    q: Poly2

    def __post_init__(self):
        if self.p.degree < 2 or self.q.deg_w < 2:
            raise DomainError("δ ≥ 2 and d ≥ 2 required")

    @property
    def delta(self) -> int:
        return self.p.degree

    @property
    def d(self) -> int:
        return self.q.deg_w

    @cached_property
    def b(self) -> Poly1:
        return self.q.coeff_of_w(self.d)

    @property
    def gamma(self) -> int:
        return self.b.degree

    @property
    def lam(self) -> int:
        return max(self.delta, self.d)

    def is_exact(self) -> bool:
        return self.p.is_exact() and self.q.is_exact()

    def is_monic(self) -> bool:
        return self.p.leading == 1 and self.b.leading == 1

    def is_product(self) -> bool:
        """True when q does not depend on z."""
        return self.q.deg_z == 0

    def __call__(self, z, w):
        return apply(self, z, w)


def apply(f: SkewProduct, z, w):
    return eval_poly1(f.p, z), eval_poly2(f.q, z, w)


def compose_skew(f: SkewProduct, g: SkewProduct, budget: int | None = None) -> SkewProduct:
    """f ∘ g = (p_f ∘ p_g, q_f(p_g(z), q_g(z, w))), exact on exact input."""
    budget = default_term_budget() if budget is None else budget
    p = f.p.compose(g.p)
    pg = g.p.lift()
    # powers of p_g only up to deg_z q_f
    zpow = [Poly2({(0, 0): 1})]
    for _ in range(max(f.q.deg_z, 0)):
        zpow.append(zpow[-1].mul(pg, budget))
    acc = Poly2()
    for m in range(f.d, -1, -1):
        acc = acc.mul(g.q, budget) if not acc.is_zero() else acc
        a_m = f.q.coeff_of_w(m)
        if not a_m.is_zero():
            acc = acc + Poly2(((k, c * cc) for n, c in a_m.terms.items()
                               for k, cc in zpow[n].terms.items()), budget)
    return SkewProduct(p, acc)


def iterate_skew(f: SkewProduct, n: int, budget: int | None = None) -> SkewProduct:
    """f^n by repeated outer composition f ∘ f^(n-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = f
    for _ in range(n - 1):
        out = compose_skew(f, out, budget)
    return out


def _exact_root(x, k: int):
    """Exact positive k-th root of a positive rational, or None."""
    if isinstance(x, QQi):
        if x.im != 0:
            return None
        x = x.re
    x = Fraction(x)
    if x <= 0:
        return None
    num = round(x.numerator ** (1.0 / k))
    den = round(x.denominator ** (1.0 / k))
    for a in (num - 1, num, num + 1):
        for b in (den - 1, den, den + 1):
            if a > 0 and b > 0 and Fraction(a, b) ** k == x:
                return _simplify(Fraction(a, b))
    return None


def principal_root(x, k: int):
    """k-th root with argument in (-pi/k, pi/k]; exact when possible."""
    if k == 1:
        return x
    if is_exact(x):
        r = _exact_root(x, k)
        if r is not None:
            return r
    x = complex(x)
    mod, arg = abs(x), cmath.phase(x)
    if arg == -math.pi:
        arg = math.pi
    return cmath.rect(mod ** (1.0 / k), arg / k)


def normalize_monic(f: SkewProduct):
    """Conjugate f by (z, w) -> (s z, t w) so that p and b become monic.

    Returns ``(g, (s, t))`` with g = σ⁻¹ ∘ f ∘ σ.
    """
    a = f.p.leading
    s = principal_root(1 / a if is_exact(a) else 1 / complex(a), f.delta - 1)
    bg = f.b.leading
    denom = bg * s ** f.gamma
    t = principal_root(1 / denom if is_exact(denom) else 1 / complex(denom), f.d - 1)
    if s == 1 and t == 1:
        return f, (1, 1)
    p = Poly1({k: c * s ** k / s for k, c in f.p.terms.items()})
    q = Poly2({(n, m): c * s ** n * t ** m / t for (n, m), c in f.q.terms.items()})
    # rounding leaves the leading coefficients at 1 ± ulp; pin them
    assert abs(complex(p.terms[f.delta]) - 1) < 1e-9
    assert abs(complex(q.terms[(f.gamma, f.d)]) - 1) < 1e-9
    p = Poly1({k: (1 if k == f.delta else c) for k, c in p.terms.items()})
    q = Poly2({k: (1 if k == (f.gamma, f.d) else c) for k, c in q.terms.items()})
    return SkewProduct(p, q), (s, t)
