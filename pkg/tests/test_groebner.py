import random
from fractions import Fraction

import pytest
import sympy

from sghilb.groebner import (
    CoordinateChange,
    GradedIdeal,
    apply_coordinate_change,
    divide,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    initial_ideal,
    is_groebner,
    normal_form,
    s_polynomial,
    schreyer_syzygies,
    syzygy_generators,
    taylor_syzygies,
)
from sghilb.parsing import parse_ideal_document, parse_polynomial
from sghilb.ring import GREVLEX, LEX, Polynomial, weight_order

from conftest import XYZ, XYZT, ideal, mono
from test_parsing import GAMMA_K2

W5111 = weight_order((5, 1, 1, 1))


def P(text, ring=XYZT):
    return parse_polynomial(ring, text)


def test_normal_form_examples():
    assert normal_form(P("x^2*t"), groebner_basis(ideal("x^2"))).is_zero()
    assert normal_form(P("y^5"), groebner_basis(ideal("x^2, xy, xz"))) == P("y^5")
    gb = groebner_basis(ideal("x^2, xy, xz, y^4z - xt^4, y^5"), GREVLEX)
    assert normal_form(P("x*y^4*z"), gb).is_zero()


def test_divide_identity():
    gb = groebner_basis(ideal("x^2 - x*t, x*y, x*z^2, y^4"), LEX)
    p = P("x^3*y + 3*y^4*t + x*z^3 - 2*z^4")
    q, r = divide(p, gb.elements, LEX)
    total = r
    for qi, g in zip(q, gb.elements):
        total = total + qi * g
    assert total == p
    lead = set(gb.leading_monomials())
    from sghilb.ring import divides

    assert not any(divides(m, u) for u in r.terms for m in lead)


def test_gb_examples():
    assert groebner_basis(ideal("x^2, xy"), LEX).elements == groebner_basis(ideal("x^2, xy"), GREVLEX).elements
    gb = groebner_basis(ideal("x^2, xy, xz, xt^4 - y^4z, y^5"), W5111)
    assert P("y^4*z^2") in gb.elements
    gk = parse_ideal_document(GAMMA_K2).ideal
    assert initial_ideal(gk, LEX) == mono("x^2, xy, xz^2, xzt^2, xt^4, y^5, y^4z^2")


def test_s_polynomial_trace():
    s = s_polynomial(P("x*z"), P("x*t^4 - y^4*z"), W5111)
    assert s.primitive() == P("y^4*z^2")


def test_gb_idempotent_and_reduced():
    for gens in ("x^2 - x*t, x*y, x*z^2, y^4", "x*z - y^2, x*t - y*z, y*t - z^2"):
        for order in (LEX, GREVLEX, W5111):
            gb = groebner_basis(ideal(gens), order)
            assert is_groebner(gb.elements, order)
            again = groebner_basis(GradedIdeal(XYZT, gb.elements), order)
            assert again.elements == gb.elements
            assert all(g.leading_coefficient(order) == 1 for g in gb.elements)


def test_initial_ideal_examples():
    assert initial_ideal(ideal("x^2 - xt, xy, xz, y^4z, y^5")) == mono("x^2, xy, xz, y^4z, y^5")
    assert initial_ideal(ideal("x^2, xy, xz^2 - y^3")) == mono("x^2, xy, y^3")
    I = mono("x^2, xy, xz")
    assert initial_ideal(I, LEX) == I


def test_membership_and_equality():
    I = ideal("x^2, xy, xz, xt^4 - y^4z, y^5")
    assert ideal_contains(I, P("y^4*z^2"))
    assert not ideal_contains(ideal("x^2, xy"), P("x"))
    assert ideal_equal(ideal("x^2, xy, xz^2 - y^3"), ideal("x^2, xy, xz^2 - y^3, y^4"))
    assert not ideal_equal(ideal("x^2, xy"), ideal("x^2, xy, y^2"))


def _random_ideal(rng, ring, k, dmax):
    from sghilb.ring import _exponents_of_degree

    gens = []
    for _ in range(k):
        d = rng.randint(1, dmax)
        mons = _exponents_of_degree(ring.num_vars, d)
        terms = {u: rng.randint(-3, 3) for u in rng.sample(mons, min(3, len(mons)))}
        p = Polynomial(ring, terms)
        if not p.is_zero():
            gens.append(p)
    return GradedIdeal(ring, gens or [ring.var(0)])


def _to_sympy(p, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** e for s, e in zip(syms, u)])
               for u, c in p.terms.items())


@pytest.mark.parametrize("order,sym_order", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_reduced_gb_against_sympy(order, sym_order):
    rng = random.Random(21)
    syms = sympy.symbols("x y z")
    for _ in range(12):
        I = _random_ideal(rng, XYZ, 3, 3)
        ours = {str(_to_sympy(g, syms).expand()) for g in groebner_basis(I, order).elements}
        G = sympy.groebner([_to_sympy(g, syms) for g in I.generators], *syms, order=sym_order)
        theirs = {str((g / sympy.Poly(g, *syms).LC(order=sym_order)).expand()) for g in G.exprs}
        assert ours == theirs


def test_normal_form_independent_of_insertion_order():
    rng = random.Random(4)
    gens = list(ideal("x^2 - x*t, x*y, x*z^2, y^4").generators)
    p = P("x^2*y*z + y^4*t + x*z^2*t - z^3*t + 5*t^4")
    ref = normal_form(p, groebner_basis(GradedIdeal(XYZT, gens)))
    for _ in range(5):
        rng.shuffle(gens)
        assert normal_form(p, groebner_basis(GradedIdeal(XYZT, list(gens)))) == ref


def test_syzygy_examples():
    x2, xy = P("x^2"), P("x*y")
    syz = taylor_syzygies([x2, xy])
    assert (P("y"), -P("x")) in syz or (-P("y"), P("x")) in syz
    assert len(syzygy_generators([x2])) == 0
    gens = mono("x^2, xy, y^2", "x y z").polynomials()
    t = syzygy_generators(gens, GREVLEX, "taylor")
    s = syzygy_generators(gens, GREVLEX, "schreyer")
    assert len(t) == 3 and t.source == "taylor" and s.source == "schreyer"


@pytest.mark.parametrize("gens", ["x^2 - x*t, x*y, x*z^2, y^4", "x*z - y^2, x*t - y*z, y*t - z^2", "x^2, x*y, x*z^2 - y^3"])
def test_syzygies_vanish(gens):
    I = ideal(gens)
    for G in (list(I.generators), list(groebner_basis(I).elements)):
        syz = syzygy_generators(G, GREVLEX)
        assert len(syz) > 0
        for vec in syz:
            total = Polynomial(XYZT)
            for a, g in zip(vec, G):
                total = total + a * g
            assert total.is_zero()


def test_schreyer_requires_nothing_of_taylor():
    with pytest.raises(ValueError):
        syzygy_generators(list(ideal("x^2 - x*t, x*y").generators), GREVLEX, "taylor")


def test_coordinate_change_examples():
    x, y, z, t = XYZT.gens()
    K2 = ideal("x^2 - x*t, x*y, x*z^2, y^4")
    gamma = CoordinateChange.from_images([x + t, x + y, x, z])
    gK2 = apply_coordinate_change(K2, gamma)
    assert ideal_equal(gK2, parse_ideal_document(GAMMA_K2).ideal)
    assert ideal_equal(apply_coordinate_change(K2, CoordinateChange.identity(4)), K2)
    scale = CoordinateChange.from_images([x * 2, y, z, t])
    assert ideal_equal(apply_coordinate_change(ideal("x"), scale), ideal("x"))
    assert ideal_equal(apply_coordinate_change(gK2, gamma.inverse()), K2)
    with pytest.raises(ValueError):
        CoordinateChange(((1, 1), (2, 2)))


def test_coordinate_change_round_trip_random():
    rng = random.Random(8)
    I = ideal("x^2, x*y, x*z^2 - y^3")
    for _ in range(3):
        m = tuple(tuple(rng.randint(-4, 4) for _ in range(4)) for _ in range(4))
        try:
            g = CoordinateChange(m)
        except ValueError:
            continue
        J = apply_coordinate_change(I, g)
        assert initial_ideal(J).hilbert_prefix(6) == initial_ideal(I).hilbert_prefix(6)
        assert ideal_equal(apply_coordinate_change(J, g.inverse()), I)
