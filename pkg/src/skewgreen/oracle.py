"""Brute-force references: arbitrary-precision orbits and symbolic Q_z^n.

Nothing here shares code with the estimators in :mod:`skewgreen.green`; the
point of an oracle is to fail differently.  Orbits use mpmath, whose
exponents are unbounded, so magnitudes survive far past float overflow.
The symbolic fiber composition goes through sympy rather than the in-house
polynomial classes.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import mpmath
import sympy

from .algebra import Poly2, QQi, SkewProduct, TermBudgetExceeded, default_term_budget
from .weights import NEG_INFINITY, alpha

__all__ = ["PrecisionConfig", "highprec_orbit", "brute_green", "brute_sequence",
           "symbolic_Qzn", "SELECTORS"]

SELECTORS = ("G_p", "G_z", "G_z_alpha", "G_f_alpha", "G", "normalized", "degnorm")


def _default_bits() -> int:
    return int(os.environ.get("SKEWGREEN_ORACLE_BITS", "256"))


@dataclass(frozen=True)
class PrecisionConfig:
    mantissa_bits: int = field(default_factory=_default_bits)
    n_max: int = 10000

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be >= 64")

    def context(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.mantissa_bits
        return ctx


def _to_mp(ctx, c):
    if isinstance(c, QQi):
        return ctx.mpc(_to_mp(ctx, c.re), _to_mp(ctx, c.im))
    if isinstance(c, Fraction):
        return ctx.mpf(c.numerator) / c.denominator
    if isinstance(c, complex):
        return ctx.mpc(c.real, c.imag)
    return ctx.mpf(c)


def _mp_terms(ctx, f: SkewProduct):
    pt = [(k, _to_mp(ctx, c)) for k, c in f.p.terms.items()]
    qt = [(n, m, _to_mp(ctx, c)) for (n, m), c in f.q.terms.items()]
    return pt, qt


def highprec_orbit(f: SkewProduct, z, w, n: int, cfg: PrecisionConfig | None = None
                   ) -> List[Tuple[mpmath.mpc, mpmath.mpc]]:
    """[(z_1, w_1), ..., (z_n, w_n)] in cfg.mantissa_bits precision."""
    cfg = cfg or PrecisionConfig()
    if n > cfg.n_max:
        raise ValueError("n exceeds cfg.n_max")
    ctx = cfg.context()
    pt, qt = _mp_terms(ctx, f)
    zc, wc = ctx.mpc(_to_mp(ctx, z)), ctx.mpc(_to_mp(ctx, w))
    out = []
    for _ in range(n):
        zn = ctx.fsum(c * zc ** k for k, c in pt)
        wn = ctx.fsum(c * zc ** a * wc ** b for a, b, c in qt)
        zc, wc = ctx.mpc(zn), ctx.mpc(wn)
        out.append((zc, wc))
    return out


def _log_plus(ctx, x):
    return ctx.log(x) if x > 1 else ctx.mpf(0)


def _log_abs(ctx, x):
    return ctx.log(abs(x)) if x != 0 else ctx.ninf


def _partial(ctx, f: SkewProduct, which: str, n: int, zn, wn, a, degs):
    delta, d, gamma = f.delta, f.d, f.gamma
    if which == "G_p":
        return _log_plus(ctx, abs(zn)) / ctx.mpf(delta) ** n
    if which == "G_z":
        return _log_plus(ctx, abs(wn)) / ctx.mpf(d) ** n
    if which == "G_z_alpha":
        if zn == 0:
            return ctx.inf if wn != 0 else ctx.mpf(0)
        ratio = abs(wn) / abs(zn) ** (ctx.mpf(a.numerator) / a.denominator)
        return _log_plus(ctx, ratio) / ctx.mpf(d) ** n
    if which == "G_f_alpha":
        az = (abs(zn) + 1) ** (ctx.mpf(a.numerator) / a.denominator)
        return _log_plus(ctx, max(az, abs(wn))) / ctx.mpf(max(delta, d)) ** n
    if which == "G":
        return (_log_abs(ctx, wn) - ctx.mpf(n * gamma) / d * _log_abs(ctx, zn)) / ctx.mpf(d) ** n
    if which == "normalized":
        return _log_plus(ctx, abs(wn)) / (n * gamma * ctx.mpf(d) ** (n - 1))
    if which == "degnorm":
        if a is NEG_INFINITY:
            az = ctx.mpf(0)
        else:
            az = (abs(zn) + 1) ** (ctx.mpf(a.numerator) / a.denominator)
        return _log_plus(ctx, max(az, abs(wn))) / degs[n - 1]
    raise ValueError(f"unknown selector {which!r}; choose from {SELECTORS}")


def brute_sequence(f: SkewProduct, z, w, n: int, which: str,
                   cfg: PrecisionConfig | None = None, degrees=None) -> list:
    """Partial expressions 1..n of the selected definitional limit."""
    cfg = cfg or PrecisionConfig()
    if which not in SELECTORS:
        raise ValueError(f"unknown selector {which!r}; choose from {SELECTORS}")
    ctx = cfg.context()
    a = alpha(f) if which in ("G_z_alpha", "G_f_alpha", "degnorm") else None
    if which in ("G_z_alpha", "G_f_alpha") and a is NEG_INFINITY:
        raise ValueError("selector needs a finite alpha")
    if which == "degnorm" and degrees is None:
        degrees = _symbolic_degrees(f, n)
    orbit = highprec_orbit(f, z, w, n, cfg)
    return [_partial(ctx, f, which, k, zk, wk, a, degrees)
            for k, (zk, wk) in enumerate(orbit, start=1)]


def brute_green(f: SkewProduct, z, w, n: int, which: str,
                cfg: PrecisionConfig | None = None, degrees=None):
    """The n-th partial expression of the selected limit; no extrapolation."""
    return brute_sequence(f, z, w, n, which, cfg, degrees)[-1]


# ---------------------------------------------------------------- symbolic

_Z, _W = sympy.symbols("z w")


def _sym_coeff(c):
    if isinstance(c, QQi):
        return sympy.Rational(c.re.numerator, c.re.denominator) + \
            sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
    if isinstance(c, Fraction):
        return sympy.Rational(c.numerator, c.denominator)
    if isinstance(c, complex):
        return sympy.Float(c.real) + sympy.I * sympy.Float(c.imag)
    if isinstance(c, float):
        return sympy.Float(c)
    return sympy.Integer(c)


def _from_sym(c):
    c = sympy.nsimplify(c) if c.is_Float else c
    re, im = c.as_real_imag()
    if re.is_Rational and im.is_Rational:
        fr = Fraction(int(re.p), int(re.q))
        fi = Fraction(int(im.p), int(im.q))
        if fi == 0:
            return int(fr) if fr.denominator == 1 else fr
        return QQi(fr, fi)
    return complex(c)


def symbolic_Qzn(f: SkewProduct, n: int, budget: int | None = None) -> Poly2:
    """Second component of f^n, built as q_{p^{n-1}(z)} ∘ ... ∘ q_z in sympy."""
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = default_term_budget() if budget is None else budget
    p_expr = sum(_sym_coeff(c) * _Z ** k for k, c in f.p.terms.items())
    q_expr = sum(_sym_coeff(c) * _Z ** a * _W ** b for (a, b), c in f.q.terms.items())
    zk, Q = _Z, _W
    for _ in range(n):
        Q = sympy.expand(q_expr.subs({_Z: zk, _W: Q}, simultaneous=True))
        if len(sympy.Add.make_args(Q)) > budget:
            raise TermBudgetExceeded(f"more than {budget} terms")
        zk = sympy.expand(p_expr.subs(_Z, zk))
    poly = sympy.Poly(Q, _Z, _W)
    return Poly2({mon: _from_sym(c) for mon, c in poly.terms()})


def _symbolic_degrees(f: SkewProduct, n: int) -> list:
    p_expr = sum(_sym_coeff(c) * _Z ** k for k, c in f.p.terms.items())
    q_expr = sum(_sym_coeff(c) * _Z ** a * _W ** b for (a, b), c in f.q.terms.items())
    zk, Q, out = _Z, _W, []
    for _ in range(n):
        Q = sympy.expand(q_expr.subs({_Z: zk, _W: Q}, simultaneous=True))
        zk = sympy.expand(p_expr.subs(_Z, zk))
        out.append(max(sympy.Poly(Q, _Z, _W).total_degree(), sympy.Poly(zk, _Z).degree()))
    return out
