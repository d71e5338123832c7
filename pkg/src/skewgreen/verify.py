"""Self-checks run by ``skewgreen verify``: closed forms, oracle agreement, degrees."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from . import green as G
from .corpus import corpus_map, names
from .degree import check_degree_growth
from .oracle import brute_green
from .weights import NEG_INFINITY, Case, alpha, weight_spec

__all__ = ["CheckResult", "run_checks", "EXPECTED_ALPHA", "oracle_pair"]

EXPECTED_ALPHA = {
    "monomial_gt": Fraction(2),
    "monomial_lt": Fraction(-1),
    "rational_weight_eq": Fraction(3, 2),
    "mixed_eq": Fraction(1),
    "monomial_eq": NEG_INFINITY,
    "regular": Fraction(0),
    "nondegenerate": Fraction(3, 2),
    "conjugate_eq": Fraction(1),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self):
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def oracle_pair(f):
    """(green evaluator, oracle selector, oracle n) for the map's certified fiber function."""
    spec = weight_spec(f)
    if spec.case is Case.DELTA_GT:
        return (lambda z, w: G.green_fiber_ratio(f, None, z, w)), "G_z_alpha", 60
    if f.gamma == 0 or spec.case is Case.DELTA_LT:
        return (lambda z, w: G.green_fiber(f, None, z, w)), "G_z", 120
    return (lambda z, w: G.green_G(f, None, z, w)), "G", 60


def _check_alpha() -> CheckResult:
    bad = [n for n, a in EXPECTED_ALPHA.items() if alpha(corpus_map(n)) != a]
    return CheckResult("alpha of corpus maps", not bad, ", ".join(bad))


def _check_closed_forms() -> CheckResult:
    cases = [
        (lambda: G.green_fiber_ratio(corpus_map("monomial_gt"), None, 2, 16), math.log(4)),
        (lambda: G.green_fiber(corpus_map("monomial_lt"), None, 2, 3), math.log(6)),
        (lambda: G.green_G(corpus_map("monomial_eq"), None, 2, 5), math.log(5)),
        (lambda: G.green_weighted(corpus_map("monomial_gt"), 2, 1), 2 * math.log(2)),
        (lambda: G.green_base(corpus_map("regular").p, 2), math.log(2)),
    ]
    worst = 0.0
    ok = True
    for fn, exact in cases:
        v = fn()
        err = abs(v.value - exact)
        worst = max(worst, err)
        ok &= v.certified and err <= v.error_bound <= 1e-9
    return CheckResult("monomial closed forms", ok, f"max error {worst:.2e}")


def _check_oracle(points: int, rng: random.Random) -> List[CheckResult]:
    out = []
    for name in names():
        f = corpus_map(name)
        ev, sel, n = oracle_pair(f)
        fails = checked = 0
        for _ in range(points * 4):
            if checked >= points:
                break
            z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            w = complex(rng.uniform(-40, 40), rng.uniform(-40, 40))
            v = ev(z, w)
            if not (v.certified and v.is_finite):
                continue
            checked += 1
            seq = brute_green(f, z, w, n, sel), brute_green(f, z, w, n - 1, sel)
            inc = abs(float(seq[0] - seq[1]))
            if abs(v.value - float(seq[0])) > v.error_bound + inc:
                fails += 1
        out.append(CheckResult(f"oracle agreement: {name}", fails == 0 and checked > 0,
                               f"{checked} points, {fails} disagreements"))
    return out


def _check_degrees() -> CheckResult:
    bad = []
    for name in names():
        for rep in check_degree_growth(corpus_map(name), None, 4):
            if not rep.within_bounds:
                bad.append(f"{name} n={rep.n}")
    return CheckResult("degree growth within bounds", not bad, ", ".join(bad[:5]))


def run_checks(quick: bool = False, seed: int = 0,
               report: Callable[[CheckResult], None] | None = None) -> List[CheckResult]:
    rng = random.Random(seed)
    results: List[CheckResult] = []

    def add(r):
        results.append(r)
        if report:
            report(r)

    add(_check_alpha())
    add(_check_closed_forms())
    add(_check_degrees())
    for r in _check_oracle(2 if quick else 8, rng):
        add(r)
    return results
