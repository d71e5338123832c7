import cmath
import math
import random
from fractions import Fraction

import pytest

from skewgreen.algebra import Poly1
from skewgreen.corpus import corpus_map, names
from skewgreen.escape import (DominanceUnavailable, EscapeRegion, OrbitStatus, RegionKind,
                              base_escape_radius, certified_region, classify_orbit, in_region)
from skewgreen.weights import NEG_INFINITY, weight_spec
from conftest import make_map


def _region(kind, R, a):
    return EscapeRegion(R=R, r1=0.5, r2=2.0, region_kind=kind, alpha_used=a,
                        eps_p=0.0, S=0.0, R_p=2.0)


@pytest.mark.parametrize("coeffs,R,eps", [
    ({2: 1}, 2.0, 0.0),
    ({2: 1, 0: -1}, 2.0, 0.25),
    ({3: 1, 1: 1}, 2.0, 0.25),
])
def test_base_escape_radius_examples(coeffs, R, eps):
    assert base_escape_radius(Poly1(coeffs)) == (R, eps)


def test_base_escape_radius_grows_with_coefficients():
    R, eps = base_escape_radius(Poly1({2: 1, 0: 100}))
    assert R >= 16 and eps <= 0.5


def test_certified_region_examples():
    r = certified_region(make_map("z^3", "z^2 w^2"))
    assert (r.S, r.r1, r.r2, r.eps_p) == (0.0, 1.0, 1.0, 0)
    r = certified_region(make_map("z^2", "z w^2 + z^2 w"))
    assert r.R == 4 and r.S == 0.25 and r.alpha_used == 1
    assert r.region_kind is RegionKind.GAMMA_NONZERO
    # α = -1/2 for this map; the term w has exponent sum -2, so S(2) = 1/4
    r = certified_region(make_map("z^2", "z w^3 + w"))
    assert r.alpha_used == Fraction(-1, 2) and r.R == 2 and r.S == 0.25


def test_region_kinds():
    assert certified_region(make_map("z^2", "w^2")).region_kind is RegionKind.NONDEGENERATE
    assert certified_region(make_map("z^2", "z w^2")).region_kind is RegionKind.FIBER_FREE


def test_dominance_unavailable():
    # δ > d with α = 3/2 > γ/(δ-d) = 1
    f = make_map("z^3", "z w^2 + z^3 w")
    spec = weight_spec(f)
    assert spec.alpha == Fraction(3, 2) and not spec.dominant_monomial_ok
    with pytest.raises(DominanceUnavailable):
        certified_region(f)


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        certified_region(make_map("2 z^2", "w^2"))


def test_in_region_examples():
    reg = _region(RegionKind.GAMMA_NONZERO, 10.0, Fraction(2))
    assert in_region(reg, 100, 1e6)
    assert not in_region(reg, 100, 1e4)
    assert not in_region(reg, 5, 1e9)
    ff = _region(RegionKind.FIBER_FREE, 10.0, NEG_INFINITY)
    assert not in_region(ff, 11, 0)
    assert in_region(ff, 11, 1e-9)


def test_in_region_nondegenerate_literal_second_condition():
    reg = _region(RegionKind.NONDEGENERATE, 4.0, Fraction(0))
    assert in_region(reg, 0, 5) and not in_region(reg, 100, 3)
    reg = _region(RegionKind.NONDEGENERATE, 4.0, Fraction(1))
    assert in_region(reg, 0.1, 17) and not in_region(reg, 0.1, 15)


def test_classify_orbit_examples():
    f = make_map("z^3", "z^2 w^2")
    reg = certified_region(f)
    c = classify_orbit(f, reg, 2, 2)
    assert c.status is not OrbitStatus.BASE_BOUNDED
    c = classify_orbit(f, reg, 3, 100)
    assert c.status is OrbitStatus.ENTERS_WR and c.steps == 0

    f = make_map("z^2", "z w^3")
    assert classify_orbit(f, certified_region(f), 0.5, 0.5).status is OrbitStatus.BASE_BOUNDED

    f = make_map("z^2", "z w^2")
    c = classify_orbit(f, certified_region(f), 2, 0, n_max=50)
    assert c.status is OrbitStatus.UNDECIDED and c.fiber_dead


def test_classify_requires_budget():
    f = make_map("z^2", "w^2")
    with pytest.raises(ValueError):
        classify_orbit(f, certified_region(f), 1, 1, n_max=0)


def test_entry_implies_base_escape_for_gamma_regions():
    rng = random.Random(1)
    for name in ["perturbed_gt", "mixed_eq", "monomial_lt", "conjugate_eq"]:
        f = corpus_map(name)
        reg = certified_region(f)
        for _ in range(50):
            z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            w = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
            c = classify_orbit(f, reg, z, w, 200)
            if c.status is OrbitStatus.ENTERS_WR:
                assert c.base_status.value == "BaseEscapes"


def test_certification_is_monotone_in_budget():
    rng = random.Random(2)
    f = corpus_map("perturbed_lt")
    reg = certified_region(f)
    for _ in range(100):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        w = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
        c = classify_orbit(f, reg, z, w, 20)
        if c.status is OrbitStatus.ENTERS_WR:
            c2 = classify_orbit(f, reg, z, w, 500)
            assert (c2.status, c2.steps) == (c.status, c.steps)


def test_monomial_maps_enter_immediately():
    rng = random.Random(3)
    for name in ["monomial_gt", "monomial_lt"]:
        f = corpus_map(name)
        reg = certified_region(f)
        a = float(reg.alpha_used)
        for _ in range(200):
            z = cmath.rect(reg.R * rng.uniform(1.01, 50), rng.uniform(0, 2 * math.pi))
            w = cmath.rect(reg.R * abs(z) ** a * rng.uniform(1.01, 50), rng.uniform(0, 2 * math.pi))
            c = classify_orbit(f, reg, z, w, 5)
            assert c.status is OrbitStatus.ENTERS_WR and c.steps == 0


def _sample(reg, f, rng):
    """A random point of the region with moderate magnitudes."""
    R = reg.R
    ph = lambda: rng.uniform(0, 2 * math.pi)
    if reg.region_kind is RegionKind.FIBER_FREE:
        return cmath.rect(R * rng.uniform(1.001, 20), ph()), cmath.rect(10 ** rng.uniform(-6, 6), ph())
    a = float(reg.alpha_used)
    if reg.region_kind is RegionKind.GAMMA_NONZERO:
        z = cmath.rect(R * 10 ** rng.uniform(0.001, 1.3), ph())
        w = cmath.rect(R * abs(z) ** a * 10 ** rng.uniform(0.001, 2), ph())
        return z, w
    z = cmath.rect(10 ** rng.uniform(-3, 1.5), ph())
    floor = max(R * abs(z) ** a, R ** (a + 1))
    return z, cmath.rect(floor * 10 ** rng.uniform(0.001, 2), ph())


def _dominance_ratio(f, reg, z, w):
    a = float(reg.alpha_used)
    qv = complex(f.q(z, w))
    if reg.region_kind is RegionKind.GAMMA_NONZERO and f.delta > f.d:
        return abs(qv) / abs(complex(f.p(z))) ** a / (abs(w) / abs(z) ** a) ** f.d
    return abs(qv) / (abs(z) ** f.gamma * abs(w) ** f.d)


CERTIFIABLE = [n for n in names() if corpus_map(n).is_monic()
               and weight_spec(corpus_map(n)).dominant_monomial_ok]


@pytest.mark.parametrize("name", CERTIFIABLE)
def test_forward_invariance_and_dominance(name):
    f = corpus_map(name)
    reg = certified_region(f)
    rng = random.Random(hash(name) & 0xFFFF)
    slack = 1e-9
    for _ in range(10_000):
        z, w = _sample(reg, f, rng)
        if not in_region(reg, z, w):
            continue
        z1, w1 = complex(f.p(z)), complex(f.q(z, w))
        assert in_region(reg, z1, w1), (z, w)
        if reg.region_kind is not RegionKind.FIBER_FREE:
            ratio = _dominance_ratio(f, reg, z, w)
            assert reg.r1 - slack <= ratio <= reg.r2 + slack, (z, w, ratio)
            if reg.S > 0:
                assert reg.r1 < ratio < reg.r2
