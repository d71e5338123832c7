"""Green functions of polynomial skew products with rigorous tail bounds.

Each certified evaluator follows the same pattern: iterate until the orbit
enters the escape region W_R at step N, run the case's telescoping estimator
from the entry point until its summed tail bound is below ``tol``, then pull
the value back through the functional equation of the limit.

Orbits are carried in scaled arithmetic (see :mod:`skewgreen._scaled`); where
an estimator subtracts two huge logarithms, the binary exponents are combined
exactly with rationals before anything is rounded.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence

from . import _scaled as sc
from .algebra import Poly1, SkewProduct, normalize_monic, principal_root, is_exact
from .escape import (EXP_LIMIT, DominanceUnavailable, EscapeRegion, OrbitStatus,
                     base_escape_radius, certified_region, classify_orbit)
from .weights import NEG_INFINITY, Case, WeightSpec, h_restricted, weight_spec

__all__ = [
    "WrongCase", "ValueKind", "Status", "GreenValue", "green_base", "green_fiber_ratio",
    "green_fiber", "green_weighted", "green_normalized", "green_G",
    "green_deg_normalized", "asymptotic_check", "telescoping_trace", "FUNCTIONS",
    "evaluate",
]

SLACK = 1e-12
DEFAULT_TOL = 1e-9
DEFAULT_NMAX = 10000
_DIRECT_CAP = 4000
_DIVERGED_AFTER = 30     # consecutive growing increments read as divergence to +inf


class WrongCase(ValueError):
    """The requested Green function is not defined for this case of the map."""


class ValueKind(enum.Enum):
    FINITE = "finite"
    POS_INF = "+inf"
    NEG_INF = "-inf"


class Status(enum.Enum):
    CERTIFIED = "Certified"
    BEST_EFFORT = "BestEffort"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class GreenValue:
    kind: ValueKind
    value: Optional[float]
    error_bound: float
    iterations: int
    status: Status

    @classmethod
    def finite(cls, value, error, iterations, status=Status.CERTIFIED):
        return cls(ValueKind.FINITE, float(value), float(error), iterations, status)

    @classmethod
    def pos_inf(cls, iterations, status=Status.CERTIFIED):
        return cls(ValueKind.POS_INF, None, 0.0, iterations, status)

    @classmethod
    def neg_inf(cls, iterations, status=Status.CERTIFIED):
        return cls(ValueKind.NEG_INF, None, 0.0, iterations, status)

    @property
    def is_finite(self) -> bool:
        return self.kind is ValueKind.FINITE

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def as_float(self) -> float:
        if self.kind is ValueKind.POS_INF:
            return math.inf
        if self.kind is ValueKind.NEG_INF:
            return -math.inf
        return self.value

    def value_text(self) -> str:
        if self.kind is ValueKind.FINITE:
            return repr(self.value)
        return self.kind.value

    def __str__(self):
        if self.kind is ValueKind.FINITE:
            return f"value = {self.value!r} ± {self.error_bound:.3g} [{self.status.value}]"
        return f"value = {self.kind.value} [{self.status.value}]"


# ---------------------------------------------------------------- preparation

@dataclass(frozen=True)
class _Prepared:
    g: SkewProduct            # monic conjugate
    s: complex
    t: complex
    spec: WeightSpec
    region: Optional[EscapeRegion]

    def to_normal(self, z, w):
        if self.s == 1 and self.t == 1:
            return complex(z), complex(w)
        return complex(z) / complex(self.s), complex(w) / complex(self.t)

    @property
    def log_s(self) -> float:
        return math.log(abs(complex(self.s)))

    @property
    def log_t(self) -> float:
        return math.log(abs(complex(self.t)))


def _prepare(f: SkewProduct, region: Optional[EscapeRegion] = None) -> _Prepared:
    """Monic conjugate, weight data and escape region.

    A caller-supplied ``region`` must belong to the monic conjugate of ``f``.
    """
    P = _prepare_cached(f)
    if region is not None and region != P.region:
        P = replace(P, region=region)
    return P


@lru_cache(maxsize=128)
def _prepare_cached(f: SkewProduct) -> _Prepared:
    g, (s, t) = normalize_monic(f)
    spec = weight_spec(g)
    try:
        region = certified_region(g, spec)
    except DominanceUnavailable:
        region = None
    return _Prepared(g, s, t, spec, region)


def _log_ratio(W, Z, a: Fraction) -> float:
    """log|W| - a log|Z| with the binary exponents combined exactly."""
    if sc.is_zero(W):
        return -math.inf
    if a == 0:
        return sc.log_abs(W)
    num, den = a.numerator, a.denominator
    ex = (W[1] * den - num * Z[1]) / den    # exact integers, one rounding
    return sc.mant_log(W) - float(a) * sc.mant_log(Z) + ex * sc.LN2


def _slack(v: float) -> float:
    return SLACK * (1.0 + abs(v))


# ---------------------------------------------------------------- base

def green_base(p: Poly1, z: complex, tol: float = DEFAULT_TOL,
               n_max: int = DEFAULT_NMAX) -> GreenValue:
    """G_p(z) = lim δ^-n log^+|p^n(z)|."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p.leading != 1:
        # G_p(z) = G_p~(z/s) for the monic conjugate p~(z) = p(sz)/s
        a = p.leading
        s = complex(principal_root(1 / a if is_exact(a) else 1 / complex(a), p.degree - 1))
        pm = Poly1({k: complex(c) * s ** (k - 1) for k, c in p.terms.items()})
        pm = Poly1({k: (1 if k == p.degree else c) for k, c in pm.terms.items()})
        return green_base(pm, complex(z) / s, tol, n_max)
    delta = p.degree
    R_p, eps = base_escape_radius(p)
    L = -math.log1p(-eps)
    terms = tuple((k, complex(c)) for k, c in sorted(p.terms.items()))
    zc = complex(z)
    n = 0
    # G_p <= log R_p + log(1+eps)/(δ-1) on |z| <= R_p, so a bounded orbit pins G_p(z) to [0, δ^-n that]
    disk_sup = math.log(R_p) + math.log1p(eps) / (delta - 1)
    while abs(zc) <= R_p:
        if disk_sup / delta ** n <= tol:
            return GreenValue.finite(0.0, disk_sup / delta ** n, n)
        if n >= n_max:
            return GreenValue.finite(0.0, disk_sup / delta ** n, n, Status.BEST_EFFORT)
        zc = sum(c * zc ** k for k, c in terms)
        n += 1
    Z = sc.scaled(zc)
    fm = _poly_stepper(terms, delta)
    while L / (delta ** n * (delta - 1)) > tol / 2 and n < n_max:
        Z = fm(Z)
        n += 1
    v = sc.log_abs(Z) / delta ** n
    return GreenValue.finite(v, L / (delta ** n * (delta - 1)) + _slack(v), n)


def _poly_stepper(terms, delta):
    def step(Z):
        zp = sc.powers(Z, delta)
        return sc.combine([sc.mul(zp[k], sc.scaled(c)) for k, c in terms])
    return step


# ---------------------------------------------------------------- estimators

class _Estimator(enum.Enum):
    RATIO = "ratio"      # d^-k log|z_k^-α w_k|          (δ > d, α = γ/(δ-d))
    HAT = "hat"          # d^-k log|w_k| + γ/(d-δ) (δ/d)^k log|z_0|   (δ < d or γ = 0)
    BIG_G = "G"          # d^-k log|z_k^{-kγ/d} w_k|     (δ = d, γ != 0)


def _pick_estimator(g: SkewProduct, spec: WeightSpec) -> _Estimator:
    if spec.case is Case.DELTA_GT and g.gamma != 0:
        return _Estimator.RATIO
    if g.gamma == 0 or spec.case is Case.DELTA_LT:
        return _Estimator.HAT
    return _Estimator.BIG_G


def _run_estimator(est: _Estimator, g: SkewProduct, region: EscapeRegion, spec: WeightSpec,
                   Z, W):
    """Yield (k, estimate_k, tail_bound_k, step_bound_k) from a point of W_R."""
    fm = sc.float_map(g)
    d, delta, gamma = g.d, g.delta, g.gamma
    log_r, L0 = region.log_r, region.log_r0
    x = 1.0 / d
    lz0 = sc.log_abs(Z)
    k = 0
    while True:
        if k * math.log2(d) > 1000:
            return
        dk = float(d) ** k
        if est is _Estimator.RATIO:
            val = _log_ratio(W, Z, spec.alpha) / dk
            step = log_r / (dk * d)
            tail = log_r / (dk * (d - 1))
        elif est is _Estimator.HAT:
            val = sc.log_abs(W) / dk
            step = log_r / (dk * d)
            tail = log_r / (dk * (d - 1))
            if gamma:
                ratio_k = (delta / d) ** k
                val += gamma / (d - delta) * ratio_k * lz0
                step += gamma / d * ratio_k * L0
                tail += gamma * L0 * ratio_k / (d - delta)
        else:
            val = _log_ratio(W, Z, Fraction(k * gamma, d)) / dk
            step = log_r / (dk * d) + (k + 1) / (dk * d) * (gamma / d) * L0
            tail = (log_r / (dk * (d - 1))
                    + gamma / d * L0 * x ** (k + 1) * ((k + 1) - k * x) / (1 - x) ** 2)
        yield k, val, tail, step
        Z, W = fm.step(Z, W)
        k += 1


def _refine(est, P: _Prepared, entry, N: int, tol: float, n_max: int):
    """Estimate at the entry point, refined until d^-N * tail <= tol."""
    d = P.g.d
    scale = float(d) ** (-N)
    out = None
    for out in _run_estimator(est, P.g, P.region, P.spec, *entry):
        k, val, tail, _ = out
        if scale * tail <= tol or N + k >= n_max:
            break
    return out[1], out[2], out[0]


def _direct_sequence(P: _Prepared, z, w, n_max: int, tol: float, term, plus: bool = True):
    """Raw partial values d^-n term(z_n, w_n, n) until the estimated tail is below tol.

    The tail is extrapolated from the ratio of the last two increments, which
    is exact for geometric convergence.  Uncertified.
    """
    fm = sc.float_map(P.g)
    d = P.g.d
    Z, W = sc.scaled(z), sc.scaled(w)

    def value(n):
        t = term(Z, W, n)
        return max(t, 0.0) / float(d) ** n if plus else t / float(d) ** n

    prev = value(0)
    cap = min(n_max, _DIRECT_CAP, int(1000 / math.log2(d)))
    inc = last_inc = err = math.inf
    growing = 0       # consecutive non-shrinking increments
    n = 0
    for n in range(1, cap + 1):
        Z, W = fm.step(Z, W)
        if max(abs(Z[1]), abs(W[1])) > EXP_LIMIT:
            break
        cur = value(n)
        if not math.isfinite(cur):
            return cur, math.inf, n
        last_inc, inc = inc, abs(cur - prev)
        prev = cur
        if inc == 0.0 and last_inc == 0.0:
            err, growing = 0.0, 0
        elif math.isfinite(last_inc) and inc < last_inc:
            rho = inc / last_inc
            # twice the geometric extrapolation, as a safety margin
            err, growing = 2 * inc * max(1.0, rho / (1.0 - rho)), 0
        else:
            err = math.inf
            growing = growing + 1 if inc > 0 else 0
            if growing >= _DIVERGED_AFTER and prev > 0:
                return math.inf, math.inf, n
        err_total = err + _slack(prev)
        if err_total < tol and n > 8:
            return prev, err_total, n
    if growing >= 5 and prev > 0:
        return math.inf, math.inf, n   # still climbing when the exponents ran out
    return prev, err + _slack(prev), n


def _direct_value(v: float, err: float, n: int) -> GreenValue:
    """BestEffort when the raw sequence settled or blew up, Undecided otherwise."""
    if v == math.inf:
        return GreenValue.pos_inf(n, Status.BEST_EFFORT)
    return GreenValue.finite(v, err, n, Status.BEST_EFFORT if math.isfinite(err)
                             else Status.UNDECIDED)


def _fiber_term(Z, W, n):
    return sc.log_abs(W)


def _direct_fiber(P: _Prepared, z, w, n_max: int, tol: float):
    """Raw d^-n log^+|Q^n(w)|.  Uncertified."""
    return _direct_sequence(P, z, w, n_max, tol, _fiber_term)


def _require_region(P: _Prepared):
    if P.region is None:
        raise WrongCase("no certified escape region: alpha > gamma/(delta-d)")


# ---------------------------------------------------------------- public evaluators

def green_fiber_ratio(f: SkewProduct, region: Optional[EscapeRegion], z: complex, w: complex, tol: float = DEFAULT_TOL,
                      n_max: int = DEFAULT_NMAX) -> GreenValue:
    """G_z^α(w) = lim d^-n log^+|Q_z^n(w) / p^n(z)^α| for δ > d and α = γ/(δ-d)."""
    P = _prepare(f, region)
    g, spec = P.g, P.spec
    if spec.case is not Case.DELTA_GT or not spec.dominant_monomial_ok:
        raise WrongCase("G_z^alpha needs delta > d and alpha = gamma/(delta-d)")
    z, w = P.to_normal(z, w)
    oc = classify_orbit(g, P.region, z, w, n_max)
    if oc.status is OrbitStatus.ENTERS_WR:
        N = oc.steps
        est = _Estimator.RATIO if g.gamma else _Estimator.HAT
        val, tail, k = _refine(est, P, oc.entry_point, N, tol, n_max)
        v = val * float(g.d) ** -N
        return GreenValue.finite(v, tail * float(g.d) ** -N + _slack(v), N + k)
    if oc.fiber_dead:
        return GreenValue.finite(0.0, 0.0, oc.steps)
    if oc.status is OrbitStatus.UNDECIDED:
        return GreenValue.finite(0.0, 0.0, oc.steps, Status.UNDECIDED)
    # over K_p: the raw definitional sequence, uncertified
    a = spec.alpha
    return _direct_value(*_direct_sequence(P, z, w, n_max, tol,
                                           lambda Z, W, k: _log_ratio(W, Z, a)))


def _finite_fiber_branch(g: SkewProduct, spec: WeightSpec) -> bool:
    return g.gamma == 0 or spec.case is Case.DELTA_LT


def green_fiber(f: SkewProduct, region: Optional[EscapeRegion], z: complex, w: complex, tol: float = DEFAULT_TOL,
                n_max: int = DEFAULT_NMAX) -> GreenValue:
    """G_z(w) = lim d^-n log^+|Q_z^n(w)|."""
    P = _prepare(f, region)
    g, spec = P.g, P.spec
    z, w = P.to_normal(z, w)
    if P.region is None:
        return _direct_value(*_direct_fiber(P, z, w, n_max, tol))
    oc = classify_orbit(g, P.region, z, w, n_max)
    if oc.status is OrbitStatus.ENTERS_WR:
        N = oc.steps
        if not _finite_fiber_branch(g, spec):
            return GreenValue.pos_inf(N)
        val, tail, k = _refine(_Estimator.HAT, P, oc.entry_point, N, tol, n_max)
        v = val * float(g.d) ** -N
        return GreenValue.finite(v, tail * float(g.d) ** -N + _slack(v), N + k)
    if oc.fiber_dead:
        return GreenValue.finite(0.0, 0.0, oc.steps)
    if oc.status is OrbitStatus.UNDECIDED and spec.case is Case.DELTA_LT:
        return GreenValue.finite(0.0, 0.0, oc.steps, Status.UNDECIDED)
    v, err, n = _direct_fiber(P, z, w, n_max, tol)
    if oc.status is OrbitStatus.BASE_BOUNDED or v == math.inf:
        return _direct_value(v, err, n)
    return GreenValue.finite(v, err, n, Status.UNDECIDED)


def _gp(P: _Prepared, z: complex, tol: float, n_max: int) -> GreenValue:
    return green_base(P.g.p, z, tol, n_max)


def green_weighted(f: SkewProduct, z: complex, w: complex, tol: float = DEFAULT_TOL,
                   n_max: int = DEFAULT_NMAX) -> GreenValue:
    """G_f^α with the norm max{(|z|+1)^α, |w|}, normalized by λ^n."""
    P = _prepare(f)
    g, spec = P.g, P.spec
    a = spec.alpha
    if a is NEG_INFINITY:
        raise WrongCase("G_f^alpha is not defined for alpha = -inf")
    if spec.case is Case.DELTA_GT:
        zn, _ = P.to_normal(z, w)
        gp = _gp(P, zn, tol / max(1.0, float(a)), n_max)
        v = float(a) * gp.value
        return GreenValue.finite(v, float(a) * gp.error_bound + _slack(v), gp.iterations,
                                 gp.status)
    if spec.case is Case.DELTA_LT:
        return green_fiber(f, P.region, z, w, tol, n_max)
    # δ = d
    zn, wn = P.to_normal(z, w)
    oc = classify_orbit(g, P.region, zn, wn, n_max)
    apos = max(float(a), 0.0)
    if oc.status is OrbitStatus.BASE_BOUNDED:
        return _direct_value(*_direct_fiber(P, zn, wn, n_max, tol))
    gp = _gp(P, zn, tol / max(1.0, apos), n_max)
    if oc.status is OrbitStatus.ENTERS_WR:
        if g.gamma != 0:
            return GreenValue.pos_inf(oc.steps)
        gz = green_fiber(f, P.region, z, w, tol, n_max)
        v = max(apos * gp.value, gz.value)
        err = max(apos * gp.error_bound, gz.error_bound)
        return GreenValue.finite(v, err + _slack(v), max(gz.iterations, gp.iterations))
    v = apos * gp.value
    status = Status.CERTIFIED if oc.fiber_dead and g.gamma != 0 else Status.UNDECIDED
    return GreenValue.finite(v, apos * gp.error_bound + _slack(v), oc.steps, status)


def green_G(f: SkewProduct, region: Optional[EscapeRegion], z: complex, w: complex, tol: float = DEFAULT_TOL,
            n_max: int = DEFAULT_NMAX) -> GreenValue:
    """G = lim d^-n log|Q_z^n(w) / p^n(z)^{nγ/d}| for δ = d, γ != 0."""
    P = _prepare(f, region)
    g = P.g
    if g.delta != g.d or g.gamma == 0:
        raise WrongCase("G needs delta = d and gamma != 0")
    z, w = P.to_normal(z, w)
    oc = classify_orbit(g, P.region, z, w, n_max)
    d, gamma = g.d, g.gamma
    if oc.status is OrbitStatus.ENTERS_WR:
        N = oc.steps
        coef = N * gamma / d
        val, tail, k = _refine(_Estimator.BIG_G, P, oc.entry_point, N, tol / 2, n_max)
        v = val * float(d) ** -N
        err = tail * float(d) ** -N
        if N:
            gp = _gp(P, z, tol / (2 * coef), n_max)
            v -= coef * gp.value
            err += coef * gp.error_bound
        return GreenValue.finite(v, err + _slack(v), N + k)
    if oc.fiber_dead:
        return GreenValue.neg_inf(oc.steps)
    if oc.status is OrbitStatus.UNDECIDED:
        return GreenValue.neg_inf(oc.steps, Status.UNDECIDED)
    # over K_p: the raw definitional sequence, uncertified
    v, err, n = _direct_sequence(
        P, z, w, n_max, tol, lambda Z, W, k: _log_ratio(W, Z, Fraction(k * gamma, d)),
        plus=False)
    if not math.isfinite(v):
        return GreenValue.neg_inf(n, Status.UNDECIDED)
    return _direct_value(v, err, n)


def _orbit_logs(P: _Prepared, z, w, n: int):
    """log|z_k|, log|w_k| of the ORIGINAL map's orbit, k = 0..n."""
    fm = sc.float_map(P.g)
    zn, wn = P.to_normal(z, w)
    Z, W = sc.scaled(zn), sc.scaled(wn)
    out = []
    for k in range(n + 1):
        out.append((sc.log_abs(Z) + P.log_s, sc.log_abs(W) + P.log_t))
        if k < n:
            Z, W = fm.step(Z, W)
    return out


def green_normalized(f: SkewProduct, z: complex, w: complex, n_max: int = 100) -> GreenValue:
    """(nγd^{n-1})^-1 log^+|Q_z^n(w)| at n = n_max, for δ = d, γ != 0.

    The 1/n convergence rate admits no small certified bound; the error
    field is a heuristic O(1/n) estimate.
    """
    P = _prepare(f)
    g = P.g
    if g.delta != g.d or g.gamma == 0:
        raise WrongCase("normalized limit needs delta = d and gamma != 0")
    d, gamma, n = g.d, g.gamma, n_max
    logs = _orbit_logs(P, z, w, n)
    norm = n * gamma * float(d) ** (n - 1)
    v = max(logs[n][1], 0.0) / norm
    zn, wn = P.to_normal(z, w)
    oc = classify_orbit(g, P.region, zn, wn, min(n, DEFAULT_NMAX))
    if oc.status is OrbitStatus.ENTERS_WR:
        N = oc.steps
        gp = _gp(P, zn, 1e-12, DEFAULT_NMAX).value
        avg = sum(logs[j][0] / float(d) ** j for j in range(n)) / n
        est = d / (n * gamma) * (P.region.log_r + abs(logs[N][1])) + abs(avg - gp)
    else:
        est = v
    return GreenValue.finite(v, est, n, Status.BEST_EFFORT)


def green_deg_normalized(f: SkewProduct, z: complex, w: complex, n_max: int = 60,
                         tol: float = 1e-12) -> GreenValue:
    """(deg f^n)^-1 log^+|f^n(z, w)|_α, with |(z, w)|_α = max{(|z|+1)^α, |w|}."""
    from .degree import degree_sequence

    P = _prepare(f)
    g, spec = P.g, P.spec
    a = spec.alpha
    if g.delta == g.d and a is not NEG_INFINITY and a > 0:
        raise WrongCase("needs delta != d or alpha <= 0")
    degs = degree_sequence(f, n_max)
    n_top = len(degs)
    logs = _orbit_logs(P, z, w, n_top)
    vals = []
    for n in range(1, n_top + 1):
        lz, lw = logs[n]
        if a is NEG_INFINITY:
            lzn = -math.inf
        else:
            lz1 = lz if lz > 40 else math.log1p(math.exp(lz))
            lzn = float(a) * lz1
        vals.append(max(lzn, lw, 0.0) / degs[n - 1])
        if len(vals) > 8 and abs(vals[-1] - vals[-2]) < tol:
            break
    err = abs(vals[-1] - vals[-2]) if len(vals) > 1 else math.inf
    return GreenValue.finite(vals[-1], err, len(vals), Status.BEST_EFFORT)


def asymptotic_check(f: SkewProduct, c: complex, z_ladder: Sequence[complex],
                     tol: float = 1e-12) -> List[dict]:
    """Rows comparing G_z^α(c z^α) with G_h(c) along increasing |z|."""
    P = _prepare(f)
    g, spec = P.g, P.spec
    if spec.case is Case.DELTA_EQ or spec.alpha != Fraction(g.gamma, g.delta - g.d):
        raise WrongCase("asymptotics need delta != d and alpha = gamma/(delta-d)")
    if not f.is_monic():
        raise WrongCase("asymptotic check works in monic coordinates; normalize first")
    a = float(spec.alpha)
    gh = green_base(h_restricted(spec.h), c, tol)
    fn = green_fiber_ratio if spec.case is Case.DELTA_GT else green_fiber
    rows = []
    for z in z_ladder:
        z = complex(z)
        w = c * cmath.exp(a * cmath.log(z))
        gv = fn(f, P.region, z, w, tol)
        rows.append({"z": z, "G_alpha": gv.as_float(), "G_h": gh.value,
                     "diff": gv.as_float() - gh.value, "status": gv.status.value})
    return rows


def telescoping_trace(f: SkewProduct, z: complex, w: complex, n_steps: int = 30) -> List[dict]:
    """Consecutive estimator increments against the proof bound, for a point of W_R."""
    P = _prepare(f)
    _require_region(P)
    g = P.g
    zn, wn = P.to_normal(z, w)
    oc = classify_orbit(g, P.region, zn, wn, 1)
    if oc.status is not OrbitStatus.ENTERS_WR or oc.steps != 0:
        raise ValueError("point is not in W_R")
    est = _pick_estimator(g, P.spec)
    rows = []
    prev = None
    for k, val, _, step in _run_estimator(est, g, P.region, P.spec, *oc.entry_point):
        if prev is not None:
            pk, pval, pstep = prev
            rows.append({"n": pk, "G_n": pval, "G_next": val, "increment": abs(val - pval),
                         "bound": pstep})
        if k >= n_steps:
            break
        prev = (k, val, step)
    return rows


def _green_p(f, z, w, tol, n_max):
    P = _prepare(f)
    zn, _ = P.to_normal(z, w)
    return green_base(P.g.p, zn, tol, n_max)


FUNCTIONS = {
    "base": _green_p,
    "fiber": lambda f, z, w, tol, n_max: green_fiber(f, None, z, w, tol, n_max),
    "fiber-ratio": lambda f, z, w, tol, n_max: green_fiber_ratio(f, None, z, w, tol, n_max),
    "weighted": green_weighted,
    "normalized": lambda f, z, w, tol, n_max: green_normalized(f, z, w, min(n_max, 100)),
    "bigG": lambda f, z, w, tol, n_max: green_G(f, None, z, w, tol, n_max),
    "degnorm": lambda f, z, w, tol, n_max: green_deg_normalized(f, z, w),
}


def evaluate(which: str, f: SkewProduct, z: complex, w: complex, tol: float = DEFAULT_TOL,
             n_max: int = DEFAULT_NMAX) -> GreenValue:
    try:
        fn = FUNCTIONS[which]
    except KeyError:
        raise ValueError(f"unknown function {which!r}; choose from {sorted(FUNCTIONS)}")
    return fn(f, z, w, tol, n_max)
