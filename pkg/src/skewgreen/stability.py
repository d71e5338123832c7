"""Extension to the weighted projective plane P(r, s, 1) and algebraic stability.

Coordinates are [z : w : t] with (z, w, t) ~ (c^r z, c^s w, c t); the line at
infinity L_inf is {t = 0}, p_inf = [0 : 1 : 0].  The extension is normalized
by the weighted t-shift (t^{kr}, t^{ks}, t^k) that leaves every component a
polynomial in z, w and a non-negative power of t while removing any common
weighted power.  For some (r, s) that shift is fractional; t-exponents are
kept as rationals so the forms stay exact.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .algebra import Poly1, Poly2, SkewProduct
from .weights import NEG_INFINITY, Case, WeightSpec, weight_spec

__all__ = [
    "WeightedForm", "WeightedExtension", "extend", "Indeterminacy", "indeterminacy_on_linf",
    "InducedByH", "ContractsToPoint", "ContractsToIndeterminacy", "StabilityVerdict",
    "is_algebraically_stable", "LinfModel", "linf_dynamics", "DecompositionFailure",
    "WrongCase", "normalize_point", "same_point", "P_INF", "ONE_ZERO_ZERO",
]

Point = Tuple[complex, complex, complex]
P_INF = (0, 1, 0)
ONE_ZERO_ZERO = (1, 0, 0)


class WrongCase(ValueError):
    pass


class DecompositionFailure(RuntimeError):
    """Exponents of h(1, c) disagree modulo the denominator of α."""


@dataclass(frozen=True)
class WeightedForm:
    """Σ c z^i w^j t^k with rational k >= 0."""

    terms: Tuple[Tuple[int, int, Fraction, object], ...]

    @classmethod
    def from_dict(cls, d: Dict[Tuple[int, int, Fraction], object]) -> "WeightedForm":
        return cls(tuple(sorted(((i, j, k, c) for (i, j, k), c in d.items() if c != 0),
                                key=lambda x: (x[0], x[1], x[2]))))

    def is_zero(self) -> bool:
        return not self.terms

    def weighted_degrees(self, r: int, s: int) -> set:
        return {r * i + s * j + k for i, j, k, _ in self.terms}

    def min_t(self) -> Fraction:
        return min(k for _, _, k, _ in self.terms)

    def at_t0(self) -> Poly2:
        """The restriction to L_inf, as a polynomial in (z, w)."""
        return Poly2({(i, j): c for i, j, k, c in self.terms if k == 0})

    def __call__(self, z, w, t):
        acc = 0
        for i, j, k, c in self.terms:
            tk = 1 if k == 0 else (t ** int(k) if k.denominator == 1 else
                                   cmath.exp(float(k) * cmath.log(t)))
            acc += c * z ** i * w ** j * tk
        return acc

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, j, k, c in self.terms:
            mono = "".join(v for v in (_pw("z", i), _pw("w", j), _pw("t", k)) if v)
            parts.append(f"{c}" + (f"*{mono}" if mono else "") if c != 1 or not mono else mono)
        return " + ".join(parts)


def _pw(v, e):
    if e == 0:
        return ""
    return v if e == 1 else f"{v}^{e}"


@dataclass(frozen=True)
class WeightedExtension:
    r: int
    s: int
    F: Tuple[WeightedForm, WeightedForm, WeightedForm]
    t_cleared: Fraction      # the weighted shift k; 0 means the plain lift was already reduced
    lam: int

    @property
    def degree(self) -> Fraction:
        """Common weighted degree, with weights (r, s, 1) on the target slots."""
        return self.lam + self.t_cleared

    def is_weighted_homogeneous(self) -> bool:
        wts = (self.r, self.s, 1)
        for comp, wt in zip(self.F, wts):
            if comp.is_zero():
                continue
            if comp.weighted_degrees(self.r, self.s) != {wt * self.degree}:
                return False
        return True

    @property
    def polynomial_lift(self) -> bool:
        """True when the plain lift needed no shift at all."""
        return self.t_cleared == 0

    def __call__(self, z, w, t):
        return tuple(c(z, w, t) for c in self.F)


def extend(f: SkewProduct, r: int, s: int) -> WeightedExtension:
    """Lift f to P(r, s, 1), reduced by the minimal weighted t-shift."""
    if r < 1 or s < 1:
        raise ValueError("r, s must be positive integers")
    lam = f.lam
    e1 = {i: r * (lam - i) for i in f.p.terms}
    e2 = {(n, m): lam * s - r * n - s * m for (n, m) in f.q.terms}
    k = max(Fraction(-min(e1.values()), r), Fraction(-min(e2.values()), s), Fraction(-lam))
    F1 = WeightedForm.from_dict({(i, 0, e1[i] + k * r): c for i, c in f.p.terms.items()})
    F2 = WeightedForm.from_dict({(n, m, e2[(n, m)] + k * s): c
                                 for (n, m), c in f.q.terms.items()})
    F3 = WeightedForm.from_dict({(0, 0, lam + k): 1})
    return WeightedExtension(r, s, (F1, F2, F3), k, lam)


# ---------------------------------------------------------------- L_inf

@dataclass(frozen=True)
class Indeterminacy:
    p_infty_in_I: bool
    one_zero_zero_in_I: bool
    off_axis: bool            # I meets {z w != 0} on L_inf
    F1_inf: Poly2
    F2_inf: Poly2

    @property
    def h(self) -> Poly2:
        return self.F2_inf

    def describe(self) -> str:
        pts = []
        if self.p_infty_in_I:
            pts.append("p_inf=[0:1:0]")
        if self.one_zero_zero_in_I:
            pts.append("[1:0:0]")
        if self.off_axis:
            pts.append("{h(z,w)=0, zw!=0}")
        return "I ∩ L_inf = " + ("{" + ", ".join(pts) + "}" if pts else "empty")


def indeterminacy_on_linf(ext: WeightedExtension, spec: Optional[WeightSpec] = None
                          ) -> Indeterminacy:
    F1, F2 = ext.F[0].at_t0(), ext.F[1].at_t0()
    p_inf = F1(0, 1) == 0 and F2(0, 1) == 0
    one = F1(1, 0) == 0 and F2(1, 0) == 0
    # a weighted-homogeneous form vanishes somewhere off the axes iff it has >= 2 terms
    if F1.is_zero() and F2.is_zero():
        off = True
    elif F1.is_zero():
        off = len(F2) >= 2
    elif F2.is_zero():
        off = len(F1) >= 2
    else:
        off = False   # F1 restricted to L_inf is a single power of z
    return Indeterminacy(p_inf, one, off, F1, F2)


@dataclass(frozen=True)
class InducedByH:
    h1: Poly1     # c -> h(1, c)

    def __str__(self):
        return f"InducedByH(h(1,c) = {self.h1})"


@dataclass(frozen=True)
class ContractsToPoint:
    target: Point

    def __str__(self):
        return f"ContractsToPoint([{self.target[0]}:{self.target[1]}:{self.target[2]}])"


@dataclass(frozen=True)
class ContractsToIndeterminacy:
    target: Point = P_INF

    def __str__(self):
        return "ContractsToIndeterminacy(p_inf)"


LinfBehavior = Union[InducedByH, ContractsToPoint, ContractsToIndeterminacy]


def _linf_behavior(ind: Indeterminacy) -> LinfBehavior:
    F1, F2 = ind.F1_inf, ind.F2_inf
    if not F1.is_zero() and not F2.is_zero():
        return InducedByH(Poly1({m: c for (_, m), c in F2.terms.items()}))
    if F2.is_zero():
        if ind.one_zero_zero_in_I:
            return ContractsToIndeterminacy(ONE_ZERO_ZERO)
        return ContractsToPoint(ONE_ZERO_ZERO)
    # F1 vanishes on L_inf: the image is [0 : h : 0] = p_inf
    if ind.p_infty_in_I:
        return ContractsToIndeterminacy(P_INF)
    return ContractsToPoint(P_INF)


@dataclass(frozen=True)
class StabilityVerdict:
    algebraically_stable: bool
    reason: str
    p_infty_in_I: bool
    one_zero_zero_in_I: bool
    linf_behavior: LinfBehavior
    conflict: bool = False    # classification and contraction witness disagree

    def __str__(self):
        word = "algebraically stable" if self.algebraically_stable else "not algebraically stable"
        out = f"{word} ({self.reason}); L_inf: {self.linf_behavior}"
        return out + ("; WITNESS CONFLICT" if self.conflict else "")


def is_algebraically_stable(f: SkewProduct, spec: Optional[WeightSpec], r: int, s: int
                            ) -> StabilityVerdict:
    spec = spec or weight_spec(f)
    ratio = Fraction(s, r)
    a = spec.alpha
    if f.gamma == 0 or spec.case is Case.DELTA_GT:
        stable = a is NEG_INFINITY or ratio >= a
        rel = ">=" if stable else "<"
        reason = f"{spec.case_tag}: s/r = {ratio} {rel} alpha"
    else:
        stable = False
        reason = f"{spec.case_tag}: never stable"
    ext = extend(f, r, s)
    ind = indeterminacy_on_linf(ext, spec)
    beh = _linf_behavior(ind)
    if stable:
        conflict = isinstance(beh, ContractsToIndeterminacy)
        if ratio == a and isinstance(beh, InducedByH):
            conflict = conflict or beh.h1.degree < 1
    else:
        conflict = not isinstance(beh, ContractsToIndeterminacy)
    return StabilityVerdict(stable, reason, ind.p_infty_in_I, ind.one_zero_zero_in_I, beh,
                            conflict)


@dataclass(frozen=True)
class LinfModel:
    h1: Poly1
    l: int
    H: Optional[Poly1]
    model: Poly1      # c^l H(c)^r, or h1 itself when α is an integer

    def __str__(self):
        if self.H is None:
            return f"h(1,c) = {self.h1}"
        return f"h(1,c) = c^{self.l} H(c^r), H = {self.H}; L_inf model {self.model}"


def linf_dynamics(ext: WeightedExtension, spec: WeightSpec) -> LinfModel:
    ratio = Fraction(ext.s, ext.r)
    a = spec.alpha
    ok = (spec.case is Case.DELTA_GT and a is not NEG_INFINITY and ratio == a) or \
        (spec.case is Case.DELTA_EQ and spec.gamma_zero and ratio >= a)
    if not ok:
        raise WrongCase("L_inf dynamics need delta > d with s/r = alpha, "
                        "or delta = d, gamma = 0 with s/r >= alpha")
    F2 = ext.F[1].at_t0()
    h1 = Poly1({m: c for (_, m), c in F2.terms.items()})
    den = a.denominator
    if den == 1 or h1.is_zero():
        return LinfModel(h1, 0, None, h1)
    l = min(h1.terms)
    if any((m - l) % den for m in h1.terms):
        raise DecompositionFailure(f"exponents of h(1,c) not congruent mod {den}")
    H = Poly1({(m - l) // den: c for m, c in h1.terms.items()})
    model = Poly1.monomial(l) * H ** den
    return LinfModel(h1, l, H, model)


# ---------------------------------------------------------------- points

def normalize_point(r: int, s: int, pt: Point) -> Point:
    """Canonical representative: last nonzero coordinate scaled to 1."""
    z, w, t = (complex(x) for x in pt)
    if t != 0:
        return (z / t ** r, w / t ** s, 1)
    if w != 0:
        c = cmath.exp(-cmath.log(w) / s)
        return (z * c ** r, 1, 0)
    if z != 0:
        return (1, 0, 0)
    raise ValueError("[0:0:0] is not a point")


def same_point(r: int, s: int, a: Point, b: Point, tol: float = 1e-12) -> bool:
    """Equality under (z, w, t) ~ (c^r z, c^s w, c t).

    Normalizing w to 1 leaves an s-th root of unity acting on z by c^r.
    """
    na, nb = normalize_point(r, s, a), normalize_point(r, s, b)
    if na[2] == 1 or na[1] != 1:
        return all(abs(complex(x) - complex(y)) <= tol for x, y in zip(na, nb))
    if nb[1] != 1 or nb[2] != 0:
        return False
    for k in range(s):
        rho = cmath.exp(2j * cmath.pi * k / s)
        if abs(na[0] * rho ** r - nb[0]) <= tol:
            return True
    return False
