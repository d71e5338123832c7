"""Certified escape regions W_R and orbit classification.

Every constant here comes from a coefficient sum, so the dominance
inequalities hold on the whole region rather than asymptotically:

* base: for |z| > R, |p(z)/z^δ - 1| <= eps_p := Σ_{i<δ} |a_i| R^{i-δ};
* fiber: for (z, w) in W_R, |q/(z^γ w^d) - 1| <= S(R) := Σ |c_j| R^{u_j+v_j},
  summed over the non-dominant terms, with u_j = m_j - d and
  v_j = n_j + α m_j - (γ + α d).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import _scaled as sc
from .algebra import Poly1, SkewProduct
from .weights import NEG_INFINITY, ExtendedRational, WeightSpec, weight_spec

__all__ = [
    "DominanceUnavailable", "RegionKind", "EscapeRegion", "base_escape_radius",
    "certified_region", "in_region", "OrbitStatus", "BaseStatus", "OrbitClass",
    "classify_orbit",
]

S_MAX = 0.25
EPS_MAX = 0.5
# binary exponents past this no longer convert to float; such an orbit
# has left every scale we can reason about, so classification stops
EXP_LIMIT = 1 << 1000


class DominanceUnavailable(ValueError):
    pass


class RegionKind(enum.Enum):
    GAMMA_NONZERO = "GammaNonzero"    # |z| > R, |w| > R|z|^α
    NONDEGENERATE = "Nondegenerate"   # |w| > R|z|^α, |w| > R^(α+1)
    FIBER_FREE = "FiberFree"          # |z| > R, w != 0  (α = -inf)


def _eps(p: Poly1, R: float) -> float:
    delta = p.degree
    return sum(abs(complex(c)) * R ** (k - delta) for k, c in p.terms.items() if k < delta)


def base_escape_radius(p: Poly1):
    """Smallest power-of-two R_p >= 2 with eps_p(R_p) <= 1/2.

    Returns ``(R_p, eps_p)``.  For |z| > R_p the orbit of z escapes.
    """
    if p.leading != 1:
        raise ValueError("p must be monic")
    R = 2.0
    while _eps(p, R) > EPS_MAX:
        R *= 2.0
    return R, _eps(p, R)


@dataclass(frozen=True)
class EscapeRegion:
    R: float
    r1: float
    r2: float
    region_kind: RegionKind
    alpha_used: ExtendedRational
    eps_p: float          # |p(z)/z^δ - 1| <= eps_p for |z| > R
    S: float              # fiber dominance defect
    R_p: float

    @property
    def log_r(self) -> float:
        """max(-log r1, log r2)."""
        return max(0.0, -math.log(self.r1), math.log(self.r2))

    @property
    def log_r0(self) -> float:
        """Bound on |log|p(z)/z^δ|| for |z| > R."""
        return max(0.0, -math.log1p(-self.eps_p), math.log1p(self.eps_p))

    @property
    def alpha_float(self) -> float:
        return float(self.alpha_used) if self.alpha_used is not NEG_INFINITY else -math.inf


def _dominance_sum(f: SkewProduct, a: Fraction, R: float) -> float:
    """S(R); all exponents u_j + v_j are negative by the definition of α."""
    dom = (f.gamma, f.d)
    top = f.gamma + a * f.d
    total = 0.0
    for (n, m), c in f.q.terms.items():
        if (n, m) == dom:
            continue
        expo = (m - f.d) + (n + a * m - top)
        if expo >= 0:
            raise DominanceUnavailable(f"term z^{n} w^{m} is not dominated")
        total += abs(complex(c)) * R ** float(expo)
    return total


def _invariant_ok(f: SkewProduct, kind: RegionKind, a, R: float, eps: float, S: float,
                  P_R: float) -> bool:
    if kind is RegionKind.FIBER_FREE:
        return (1 - eps) * R ** (f.delta - 1) >= 1
    af = float(a)
    # lower bound of |p|^{-α} |z|^{αδ} for |z| > R
    K = min((1 + eps) ** (-af), (1 - eps) ** (-af))
    if kind is RegionKind.GAMMA_NONZERO:
        return (1 - eps) * R ** (f.delta - 1) >= 1 and (1 - S) * K * R >= 1
    # nondegenerate: α >= 0 and the orbit may sit over small |z|
    cond_big_z = (1 - S) * R ** (f.d - 1) >= (1 + eps) ** af and \
        (1 - S) * R ** ((af + 1) * (f.d - 1)) >= 1
    cond_small_z = (1 - S) * R ** ((af + 1) * f.d) >= R * max(P_R, R) ** af
    return cond_big_z and cond_small_z


def certified_region(f: SkewProduct, spec: Optional[WeightSpec] = None) -> EscapeRegion:
    """Radius and dominance constants for the escape region of a monic map."""
    if not f.is_monic():
        raise ValueError("normalize the map first (monic p and b)")
    spec = spec or weight_spec(f)
    if not spec.dominant_monomial_ok:
        raise DominanceUnavailable(
            "alpha > gamma/(delta-d): z^gamma w^d does not dominate q")
    R_p, _ = base_escape_radius(f.p)
    a = spec.alpha
    if a is NEG_INFINITY:
        kind = RegionKind.FIBER_FREE
    elif f.gamma == 0:
        kind = RegionKind.NONDEGENERATE
    else:
        kind = RegionKind.GAMMA_NONZERO
    R = R_p
    while True:
        eps = _eps(f.p, R)
        if kind is RegionKind.FIBER_FREE:
            S = _eps(f.b, R) if f.gamma > 0 else 0.0
        else:
            S = _dominance_sum(f, a, R)
        P_R = sum(abs(complex(c)) * R ** k for k, c in f.p.terms.items())
        if S <= S_MAX and eps <= EPS_MAX and _invariant_ok(f, kind, a, R, eps, S, P_R):
            break
        R *= 2.0
    if kind is RegionKind.GAMMA_NONZERO and f.delta > f.d:
        # ratio |q/p^α| against |w/z^α|^d
        af = float(a)
        r1 = (1 - S) * (1 + eps) ** (-af)
        r2 = (1 + S) * (1 - eps) ** (-af)
    else:
        # ratio |q/(z^γ w^d)|
        r1, r2 = 1 - S, 1 + S
    return EscapeRegion(R=R, r1=r1, r2=r2, region_kind=kind, alpha_used=a,
                        eps_p=eps, S=S, R_p=R_p)


def _in_region_logs(region: EscapeRegion, lz: float, lw: float) -> bool:
    """Membership from log|z|, log|w| (either may be -inf)."""
    lR = math.log(region.R)
    kind = region.region_kind
    if kind is RegionKind.FIBER_FREE:
        return lz > lR and lw > -math.inf
    a = float(region.alpha_used)
    if a == 0:
        az = 0.0
    elif lz == -math.inf:
        az = -math.inf if a > 0 else math.inf
    else:
        az = a * lz
    if kind is RegionKind.GAMMA_NONZERO:
        return lz > lR and lw > lR + az
    return lw > lR + az and lw > (a + 1) * lR


def in_region(region: EscapeRegion, z: complex, w: complex) -> bool:
    lz = math.log(abs(z)) if z != 0 else -math.inf
    lw = math.log(abs(w)) if w != 0 else -math.inf
    return _in_region_logs(region, lz, lw)


class OrbitStatus(enum.Enum):
    ENTERS_WR = "EntersWR"
    BASE_BOUNDED = "BaseBounded"
    UNDECIDED = "Undecided"


class BaseStatus(enum.Enum):
    ESCAPES = "BaseEscapes"
    BOUNDED_SO_FAR = "BaseBoundedSoFar"


@dataclass(frozen=True)
class OrbitClass:
    status: OrbitStatus
    steps: int                      # entry step, or number of steps checked
    base_status: BaseStatus
    base_escape_step: Optional[int]
    entry_point: Optional[tuple] = None   # scaled (z_N, w_N) on entry
    fiber_dead: bool = False        # w_n == 0 and q(z, 0) == 0: w stays 0 forever

    def __str__(self):
        return f"{self.status.value}({self.steps})"


def classify_orbit(f: SkewProduct, region: EscapeRegion, z: complex, w: complex,
                   n_max: int = 10000) -> OrbitClass:
    """First n <= n_max with f^n(z, w) in W_R, iterating in scaled arithmetic."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    fm = sc.float_map(f)
    lRp = math.log(region.R_p)
    if region.region_kind is not RegionKind.NONDEGENERATE:
        # entry needs |z_n| > R >= R_p; settle the base orbit cheaply first
        if _base_escape_step(fm, sc.scaled(z), 0, n_max, lRp) is None:
            return _no_entry(n_max, None)
    Z, W = sc.scaled(z), sc.scaled(w)
    base_step = None
    for n in range(n_max + 1):
        lz, lw = sc.log_abs(Z), sc.log_abs(W)
        if base_step is None and lz > lRp:
            base_step = n
        if _in_region_logs(region, lz, lw):
            bs = BaseStatus.ESCAPES if base_step is not None else BaseStatus.BOUNDED_SO_FAR
            return OrbitClass(OrbitStatus.ENTERS_WR, n, bs, base_step, (Z, W))
        if sc.is_zero(W) and fm.q_zero_at_w0:
            # the fiber orbit is pinned at 0 and can never reach W_R
            if base_step is None:
                base_step = _base_escape_step(fm, Z, n, n_max, lRp)
            return _no_entry(n_max, base_step, fiber_dead=True)
        if n == n_max or abs(Z[1]) > EXP_LIMIT or abs(W[1]) > EXP_LIMIT:
            break
        Z, W = fm.step(Z, W)
    return _no_entry(n, base_step)


def _base_escape_step(fm, Z, n0, n_max, lRp):
    Rp = math.exp(lRp)
    z = sc.to_complex(Z)
    anchor, lap = z, 1
    for n in range(n0, n_max + 1):
        if abs(z) > Rp:
            return n
        z = fm.p_complex(z)
        # Brent cycle check: a repeated float value repeats forever
        if z == anchor:
            return None
        if n - n0 + 1 == lap:
            anchor, lap = z, 2 * lap
    return None


def _no_entry(steps, base_step, fiber_dead=False) -> OrbitClass:
    if base_step is None:
        return OrbitClass(OrbitStatus.BASE_BOUNDED, steps, BaseStatus.BOUNDED_SO_FAR, None,
                          fiber_dead=fiber_dead)
    return OrbitClass(OrbitStatus.UNDECIDED, steps, BaseStatus.ESCAPES, base_step,
                      fiber_dead=fiber_dead)
