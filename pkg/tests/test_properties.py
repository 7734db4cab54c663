"""Randomized properties over small rings (at most four variables, degree at most 6)."""

from math import comb

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from sghilb.groebner import GradedIdeal, groebner_basis, initial_ideal, normal_form
from sghilb.hilbert import lex_segment, regularity
from sghilb.monomial import MonomialIdeal, is_strongly_stable, saturate
from sghilb.ring import GREVLEX, LEX, Polynomial, RingContext, weight_order

RINGS = {n: RingContext(tuple("xyzt"[:n])) for n in (2, 3, 4)}
FAST = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
SLOW = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def monomial_ideals(draw, max_degree=6):
    n = draw(st.sampled_from([2, 3, 4]))
    k = draw(st.integers(1, 5))
    gens = []
    for _ in range(k):
        d = draw(st.integers(1, max_degree))
        cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
        bounds = [0] + cuts + [d]
        gens.append(tuple(bounds[i + 1] - bounds[i] for i in range(n)))
    return MonomialIdeal(RINGS[n], gens)


@st.composite
def graded_ideals(draw):
    n = draw(st.sampled_from([2, 3, 4]))
    ring = RINGS[n]
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(1, 3))
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            cuts = sorted(draw(st.lists(st.integers(0, d), min_size=n - 1, max_size=n - 1)))
            bounds = [0] + cuts + [d]
            u = tuple(bounds[i + 1] - bounds[i] for i in range(n))
            terms[u] = draw(st.integers(-5, 5).filter(bool))
        gens.append(Polynomial(ring, terms))
    gens = [g for g in gens if not g.is_zero()]
    return GradedIdeal(ring, gens or [ring.var(0)])


def _count(I: MonomialIdeal, d: int) -> int:
    n = I.ring.num_vars
    total = 0
    for u in _all_monomials(n, d):
        total += u in I
    return total


def _all_monomials(n, d):
    if n == 1:
        yield (d,)
        return
    for a in range(d + 1):
        for rest in _all_monomials(n - 1, d - a):
            yield (a,) + rest


@FAST
@given(monomial_ideals())
def test_numerator_matches_counting(I):
    n = I.ring.num_vars
    for d in range(8):
        assert I.count(d) == _count(I, d)
        assert I.quotient_dim(d) == comb(d + n - 1, n - 1) - _count(I, d)


@FAST
@given(monomial_ideals())
def test_saturation_properties(I):
    J = saturate(I)
    assert saturate(J) == J
    assert J.contains_ideal(I)
    big = max(I.max_degree(), 1) + 8
    assert J.quotient_dim(big) == I.quotient_dim(big)


@FAST
@given(monomial_ideals())
def test_lex_segment_has_same_hilbert_function(I):
    D = I.max_degree() + 1
    h = I.hilbert_prefix(D)
    L = lex_segment(I.ring, h, D)
    assert L.hilbert_prefix(D) == h
    assert is_strongly_stable(L)[0]


@SLOW
@given(graded_ideals())
def test_initial_ideals_are_flat(I):
    D = max(g.degree() for g in I.generators) + 3
    hs = {tuple(initial_ideal(I, o).hilbert_prefix(D)) for o in (GREVLEX, LEX, weight_order((1,) * I.ring.num_vars))}
    assert len(hs) == 1


@SLOW
@given(graded_ideals())
def test_groebner_basis_reduces_generators(I):
    gb = groebner_basis(I, GREVLEX)
    for g in I.generators:
        assert normal_form(g, gb).is_zero()
    assert groebner_basis(GradedIdeal(I.ring, list(gb.elements)), GREVLEX).elements == gb.elements


@SLOW
@given(monomial_ideals(max_degree=4))
def test_regularity_bounds_hilbert_polynomial_agreement(I):
    D = I.max_degree() + 1
    I = lex_segment(I.ring, I.hilbert_prefix(D), D)
    r = regularity(I)
    J = saturate(I)
    for d in range(r, r + 3):
        assert I.quotient_dim(d) == J.quotient_dim(d)
