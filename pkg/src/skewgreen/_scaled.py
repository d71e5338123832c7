"""Complex numbers with an unbounded binary exponent.

A value is a pair ``(m, e)`` meaning ``m * 2**e`` with ``0.5 <= |m| < 1`` (or
``m == 0``).  Orbits inside an escape region outgrow the float range within a
few steps; this representation keeps float relative precision while the
exponent, a Python int, grows without bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .algebra import SkewProduct

Scaled = Tuple[complex, int]
LN2 = math.log(2.0)
ZERO: Scaled = (0j, 0)
_UNDERFLOW_SHIFT = -1100


def scaled(x: complex) -> Scaled:
    return renorm(complex(x), 0)


def renorm(m: complex, e: int) -> Scaled:
    a = abs(m)
    if a == 0.0:
        return ZERO
    if math.isinf(a):
        # rescale before frexp can see the overflow
        m = complex(math.ldexp(m.real, -600), math.ldexp(m.imag, -600))
        e += 600
        a = abs(m)
    _, k = math.frexp(a)
    return complex(math.ldexp(m.real, -k), math.ldexp(m.imag, -k)), e + k


def mul(x: Scaled, y: Scaled) -> Scaled:
    return renorm(x[0] * y[0], x[1] + y[1])


def log_abs(x: Scaled) -> float:
    """log|x|; -inf for zero."""
    if x[0] == 0:
        return -math.inf
    return math.log(abs(x[0])) + x[1] * LN2


def mant_log(x: Scaled) -> float:
    """log of the mantissa modulus only, an O(1) quantity."""
    return math.log(abs(x[0])) if x[0] != 0 else -math.inf


def to_complex(x: Scaled) -> complex:
    m, e = x
    if e > 1020:
        return complex(math.inf, 0)
    return complex(math.ldexp(m.real, e), math.ldexp(m.imag, e))


def is_zero(x: Scaled) -> bool:
    return x[0] == 0


def powers(x: Scaled, k: int) -> list:
    out = [(1 + 0j, 0)]
    if k >= 1:
        out.append(x)
    for _ in range(2, k + 1):
        out.append(mul(out[-1], x))
    return out


def combine(terms) -> Scaled:
    """Sum of (mantissa, exponent) pairs, aligned on the largest exponent."""
    top = None
    for m, e in terms:
        if m and (top is None or e > top):
            top = e
    if top is None:
        return ZERO
    acc = 0j
    ldexp = math.ldexp
    for m, e in terms:
        sh = e - top
        if m and sh > _UNDERFLOW_SHIFT:
            acc += m * ldexp(1.0, sh)   # power-of-two scaling is exact
    return renorm(acc, top)


def _raw_powers(x: Scaled, k: int) -> list:
    """x^0..x^k as unnormalized pairs; mantissas stay above 2^-k, so no renorm is needed."""
    m, e = x
    out = [(1 + 0j, 0)]
    acc = 1 + 0j
    for i in range(1, k + 1):
        acc *= m
        out.append((acc, e * i))
    return out


@dataclass(frozen=True)
class FloatMap:
    """Floating-point image of a skew product, for orbit iteration.

    Coefficients are stored pre-scaled as (mantissa, exponent) pairs.
    """

    p_terms: tuple  # ((k, coeff), ...)
    q_terms: tuple  # ((n, m, coeff), ...)
    delta: int
    d: int
    gamma: int
    max_n: int
    q_zero_at_w0: bool  # q(z, 0) == 0 identically
    p_plain: tuple = ()  # ((k, complex coeff), ...) for plain float evaluation

    def p(self, z: Scaled) -> Scaled:
        zp = _raw_powers(z, self.delta)
        return combine([(zp[k][0] * cm, zp[k][1] + ce) for k, (cm, ce) in self.p_terms])

    def q(self, z: Scaled, w: Scaled) -> Scaled:
        zp = _raw_powers(z, self.max_n)
        wp = _raw_powers(w, self.d)
        return combine([(zp[n][0] * wp[m][0] * cm, zp[n][1] + wp[m][1] + ce)
                        for n, m, (cm, ce) in self.q_terms])

    def step(self, z: Scaled, w: Scaled) -> Tuple[Scaled, Scaled]:
        return self.p(z), self.q(z, w)

    def p_complex(self, z: complex) -> complex:
        acc = 0j
        for k, c in self.p_plain:
            acc += c * z ** k
        return acc


@lru_cache(maxsize=256)
def float_map(f: SkewProduct) -> FloatMap:
    q_terms = tuple((n, m, scaled(c)) for (n, m), c in sorted(f.q.terms.items()))
    return FloatMap(
        p_terms=tuple((k, scaled(c)) for k, c in sorted(f.p.terms.items())),
        q_terms=q_terms,
        delta=f.delta, d=f.d, gamma=f.gamma,
        max_n=max(n for n, _, _ in q_terms),
        q_zero_at_w0=all(m > 0 for _, m, _ in q_terms),
        p_plain=tuple((k, complex(c)) for k, c in sorted(f.p.terms.items())),
    )
