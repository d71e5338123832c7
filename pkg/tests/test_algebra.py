from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skewgreen.algebra import (QQi, DomainError, Poly1, Poly2, SkewProduct, TermBudgetExceeded,
                               apply, compose_skew, eval_poly1, eval_poly2, iterate_skew,
                               normalize_monic)
from conftest import make_map


def test_eval_poly1_examples():
    assert eval_poly1(Poly1({2: 1}), 3) == 9
    assert eval_poly1(Poly1({2: 1, 0: -1}), 0) == -1
    assert eval_poly1(Poly1({3: 1, 1: Fraction(1, 2)}), 2) == 9


def test_eval_poly2_examples():
    assert eval_poly2(Poly2({(1, 2): 1}), 2, 3) == 18
    assert eval_poly2(Poly2({(2, 2): 1, (0, 0): 1}), 0, 5) == 1
    assert eval_poly2(Poly2({(1, 3): 1, (2, 1): 1}), 1, 2) == 10


def test_apply_examples(mk):
    assert apply(mk("z^2", "z w^2"), 2, 1) == (4, 2)
    assert apply(mk("z^2", "z w^3"), 1, 1) == (1, 1)
    assert apply(mk("z^3", "z^2 w^2"), 2, 2) == (8, 16)


def test_zero_coefficients_are_never_stored():
    p = Poly1({2: 1, 1: 0, 0: Fraction(0)})
    assert dict(p.terms) == {2: 1}
    assert (Poly1({1: 1}) - Poly1({1: 1})).degree == -1


def test_domain_checks():
    with pytest.raises(DomainError):
        SkewProduct(Poly1({1: 1}), Poly2({(0, 2): 1}))
    with pytest.raises(DomainError):
        SkewProduct(Poly1({2: 1}), Poly2({(1, 1): 1}))


def test_skew_product_invariants(mk):
    f = mk("z^2", "z w^2 + z^2 w")
    assert (f.delta, f.d, f.gamma, f.lam) == (2, 2, 1, 2)
    assert f.b == Poly1({1: 1})


def test_compose_examples(mk):
    f = mk("z^2", "z w^2")
    assert compose_skew(f, f) == mk("z^4", "z^4 w^4")
    g = mk("z^2", "z w^3")
    assert compose_skew(g, g) == mk("z^4", "z^5 w^9")


def test_iterate_fiber_degree_is_d_to_the_n(mk):
    f = mk("z^2 + 1", "z w^2 + w + z")
    for n in range(1, 5):
        assert iterate_skew(f, n).d == 2 ** n


def test_term_budget_guard(mk):
    f = mk("z^2 + z + 1", "z w^3 + z^2 w^2 + w + 1")
    with pytest.raises(TermBudgetExceeded):
        iterate_skew(f, 4, budget=50)


def test_exact_arithmetic_survives_composition(mk):
    f = mk("z^2 + 1/3", "(1/2+1/5i) w^2 + z")
    g = iterate_skew(f, 3)
    assert g.is_exact()
    assert any(isinstance(c, QQi) for c in g.q.terms.values())


def test_normalize_monic_examples(mk):
    f = mk("z^2", "z w^2")
    g, (s, t) = normalize_monic(f)
    assert g == f and (s, t) == (1, 1)
    g, (s, t) = normalize_monic(mk("4 z^2", "z w^2"))
    assert s == Fraction(1, 4) and g.p == Poly1({2: 1})
    g, (s, t) = normalize_monic(mk("z^2", "2 z w^3"))
    assert abs(complex(t) ** 2 - 0.5) < 1e-15
    assert g.is_monic()


def test_normalize_monic_is_a_conjugacy(mk):
    f = mk("3 z^2 - 1", "(1+1i) z w^2 + w - z")
    g, (s, t) = normalize_monic(f)
    s, t = complex(s), complex(t)
    z, w = 0.3 - 0.2j, 0.7 + 0.1j
    fz, fw = apply(f, s * z, t * w)
    gz, gw = apply(g, z, w)
    assert abs(fz / s - gz) < 1e-12 and abs(fw / t - gw) < 1e-12


small = st.integers(min_value=-5, max_value=5)
rat = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@st.composite
def skews(draw):
    delta = draw(st.integers(2, 3))
    d = draw(st.integers(2, 3))
    p = {delta: 1}
    for k in range(delta):
        p[k] = draw(rat)
    q = {(draw(st.integers(0, 2)), d): 1}
    for _ in range(draw(st.integers(0, 3))):
        q[(draw(st.integers(0, 3)), draw(st.integers(0, d - 1)))] = draw(rat)
    return SkewProduct(Poly1(p), Poly2(q))


@settings(max_examples=40, deadline=None)
@given(skews(), skews(), st.fractions(-2, 2, max_denominator=5), st.fractions(-2, 2, max_denominator=5))
def test_composition_matches_pointwise_evaluation(f, g, z, w):
    h = compose_skew(f, g)
    assert apply(h, z, w) == apply(f, *apply(g, z, w))


@settings(max_examples=40, deadline=None)
@given(skews())
def test_composition_degrees_multiply(f):
    h = compose_skew(f, f)
    assert h.delta == f.delta ** 2 and h.d == f.d ** 2


@settings(max_examples=60)
@given(st.dictionaries(st.integers(0, 6), rat, max_size=5),
       st.dictionaries(st.integers(0, 6), rat, max_size=5))
def test_poly1_ring_laws(a, b):
    A, B = Poly1(a), Poly1(b)
    assert A * B == B * A
    assert (A + B) - B == A
    for x in (Fraction(1, 3), Fraction(-2)):
        assert (A * B)(x) == A(x) * B(x)
