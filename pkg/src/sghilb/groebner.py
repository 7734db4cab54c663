"""Buchberger's algorithm, normal forms, syzygies and linear coordinate changes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .monomial import MonomialIdeal
from .ring import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    RingContext,
    divides,
    mdiv,
    mlcm,
    mmul,
)

_KEY_CACHES: Dict[MonomialOrder, dict] = {}


def cached_key(order: MonomialOrder):
    """The order's sort key, memoized per monomial."""
    cache = _KEY_CACHES.setdefault(order, {})
    base = order.key

    def key(u):
        k = cache.get(u)
        if k is None:
            k = cache[u] = base(u)
        return k

    return key


class GradedIdeal:
    """A homogeneous ideal given by nonzero homogeneous generators."""

    __slots__ = ("ring", "generators")

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial]):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    @classmethod
    def from_monomial_ideal(cls, I: MonomialIdeal) -> "GradedIdeal":
        return cls(I.ring, I.polynomials())

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def as_monomial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_polynomials(self.ring, self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        return "<" + ", ".join(g.format() for g in self.generators) + ">"

    def __repr__(self):
        return f"GradedIdeal({self})"


def as_graded(I) -> GradedIdeal:
    if isinstance(I, GradedIdeal):
        return I
    if isinstance(I, MonomialIdeal):
        return GradedIdeal.from_monomial_ideal(I)
    raise TypeError(f"expected an ideal, got {type(I).__name__}")


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: Tuple[Polynomial, ...]
    reduced: bool = True
    ring: Optional[RingContext] = None

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


# ---------- integer-coefficient kernel used by Buchberger ----------

def _int_terms(p: Polynomial) -> Dict[Monomial, int]:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _content_free({u: int(c * den) for u, c in p.terms.items()})


def _content_free(p: Dict[Monomial, int]) -> Dict[Monomial, int]:
    g = 0
    for v in p.values():
        g = gcd(g, v)
        if g == 1:
            return p
    if g > 1:
        return {u: v // g for u, v in p.items()}
    return p


class _Elt:
    __slots__ = ("lm", "lc", "terms")

    def __init__(self, terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _reduce_int(p: Dict[Monomial, int], basis: Sequence[_Elt], key, tail: bool = True) -> Dict[Monomial, int]:
    """Fraction-free normal form of p (up to a nonzero scalar)."""
    p = dict(p)
    rem: Dict[Monomial, int] = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for e in basis:
            if divides(e.lm, m):
                break
        else:
            if not tail:
                rem.update(p)
                break
            rem[m] = c
            del p[m]
            continue
        q = mdiv(m, e.lm)
        g = gcd(e.lc, c)
        a, b = e.lc // g, c // g
        if a != 1:
            if a == -1:
                p = {u: -v for u, v in p.items()}
                rem = {u: -v for u, v in rem.items()}
            else:
                p = {u: a * v for u, v in p.items()}
                rem = {u: a * v for u, v in rem.items()}
        for u, v in e.terms.items():
            w = mmul(u, q)
            nv = p.get(w, 0) - b * v
            if nv:
                p[w] = nv
            else:
                p.pop(w, None)
        # keep coefficients small
        g = 0
        for v in p.values():
            g = gcd(g, v)
            if g == 1:
                break
        if g != 1:
            for v in rem.values():
                g = gcd(g, v)
                if g == 1:
                    break
        if g > 1:
            p = {u: v // g for u, v in p.items()}
            rem = {u: v // g for u, v in rem.items()}
    return _content_free(rem)


def _spoly_int(f: _Elt, g: _Elt) -> Dict[Monomial, int]:
    l = mlcm(f.lm, g.lm)
    qf, qg = mdiv(l, f.lm), mdiv(l, g.lm)
    a, b = g.lc, f.lc
    d = gcd(a, b)
    a, b = a // d, b // d
    out: Dict[Monomial, int] = {}
    for u, v in f.terms.items():
        w = mmul(u, qf)
        out[w] = out.get(w, 0) + a * v
    for u, v in g.terms.items():
        w = mmul(u, qg)
        nv = out.get(w, 0) - b * v
        if nv:
            out[w] = nv
        else:
            out.pop(w, None)
    return {u: v for u, v in out.items() if v}


def _pair_degree_key(G, key):
    def k(pair):
        l = mlcm(G[pair[0]].lm, G[pair[1]].lm)
        return (sum(l), key(l), pair)

    return k


def _buchberger(polys: Sequence[Dict[Monomial, int]], key) -> List[_Elt]:
    """Buchberger with normal selection and both of Buchberger's criteria."""
    G: List[_Elt] = []
    pending = set()
    for p in polys:
        if not p:
            continue
        r = _reduce_int(p, G, key) if G else _content_free(dict(p))
        if not r:
            continue
        G.append(_Elt(r, key))
        k = len(G) - 1
        pending.update((i, k) for i in range(k))
    pkey = _pair_degree_key(G, key)
    while pending:
        pair = min(pending, key=pkey)
        pending.discard(pair)
        i, j = pair
        fi, fj = G[i], G[j]
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue  # coprime leading monomials
        l = mlcm(fi.lm, fj.lm)
        skip = False
        for k, fk in enumerate(G):
            if k == i or k == j or not divides(fk.lm, l):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        r = _reduce_int(_spoly_int(fi, fj), G, key)
        if r:
            G.append(_Elt(r, key))
            k = len(G) - 1
            pending.update((a, k) for a in range(k))
    return G


def _reduced(G: List[_Elt], key) -> List[Dict[Monomial, int]]:
    minimal = []
    for idx, e in enumerate(G):
        dominated = False
        for jdx, f in enumerate(G):
            if jdx == idx:
                continue
            if divides(f.lm, e.lm) and (f.lm != e.lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append(e)
    out = []
    for e in minimal:
        others = [f for f in minimal if f is not e]
        out.append(_reduce_int(e.terms, others, key))
    return out


def _to_monic(ring: RingContext, terms: Dict[Monomial, int], key) -> Polynomial:
    lm = max(terms, key=key)
    lc = terms[lm]
    return Polynomial(ring, {u: Fraction(v, lc) for u, v in terms.items()})


@lru_cache(maxsize=2048)
def _gb_cached(ring: RingContext, gens: Tuple[Polynomial, ...], order: MonomialOrder) -> Tuple[Polynomial, ...]:
    key = cached_key(order)
    G = _buchberger([_int_terms(g) for g in gens], key)
    red = _reduced(G, key)
    polys = [_to_monic(ring, t, key) for t in red]
    polys.sort(key=lambda p: key(p.leading_monomial(order)))
    return tuple(polys)


def groebner_basis(I, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of I under ``order``, sorted by ascending leading monomial."""
    I = as_graded(I)
    if I.is_zero():
        raise ValueError("the zero ideal has an empty Groebner basis")
    return GroebnerBasis(order, _gb_cached(I.ring, I.generators, order), True, I.ring)


def initial_ideal(I, order: MonomialOrder = GREVLEX) -> MonomialIdeal:
    if isinstance(I, MonomialIdeal):
        return I
    I = as_graded(I)
    if I.is_monomial():
        return I.as_monomial_ideal()
    gb = groebner_basis(I, order)
    return MonomialIdeal(I.ring, gb.leading_monomials())


# ---------- division with exact rational coefficients ----------

def divide(p: Polynomial, elements: Sequence[Polynomial], order: MonomialOrder):
    """Multivariate division: return (quotients, remainder) with p = sum q_i g_i + r."""
    key = cached_key(order)
    ring = p.ring
    leads = [(g.leading_monomial(order), g.leading_coefficient(order), g.terms) for g in elements]
    quots: List[Dict[Monomial, Fraction]] = [{} for _ in elements]
    work = dict(p.terms)
    rem = {}
    while work:
        m = max(work, key=key)
        c = work[m]
        for idx, (lm, lc, terms) in enumerate(leads):
            if divides(lm, m):
                break
        else:
            rem[m] = c
            del work[m]
            continue
        q = mdiv(m, lm)
        f = c / lc
        quots[idx][q] = quots[idx].get(q, 0) + f
        for u, v in terms.items():
            w = mmul(u, q)
            nv = work.get(w, 0) - f * v
            if nv:
                work[w] = nv
            else:
                work.pop(w, None)
    return [Polynomial(ring, q) for q in quots], Polynomial(ring, rem)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of p on division by gb; no term is divisible by a leading monomial."""
    if gb.ring is not None and p.ring != gb.ring:
        raise ValueError("polynomial and basis live in different rings")
    if p.is_zero():
        return p
    return divide(p, gb.elements, gb.order)[1]


def ideal_contains(I, p: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
    if p.is_zero():
        return True
    return normal_form(p, groebner_basis(I, order)).is_zero()


def ideal_equal(I, J, order: MonomialOrder = GREVLEX) -> bool:
    I, J = as_graded(I), as_graded(J)
    return all(ideal_contains(J, g, order) for g in I.generators) and all(
        ideal_contains(I, g, order) for g in J.generators
    )


def is_groebner(gens: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not divide(s_polynomial(gens[i], gens[j], order), gens, order)[1].is_zero():
                return False
    return True


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    l = mlcm(lf, lg)
    return f.shift(mdiv(l, lf), 1 / f.leading_coefficient(order)) - g.shift(
        mdiv(l, lg), 1 / g.leading_coefficient(order)
    )


# ---------- syzygies ----------

@dataclass
class SyzygyList:
    """Generators of the first syzygy module of a list of polynomials."""

    generators: Tuple[Polynomial, ...]
    syzygies: List[Tuple[Polynomial, ...]] = field(default_factory=list)
    source: str = "taylor"

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def __len__(self):
        return len(self.syzygies)

    def __iter__(self):
        return iter(self.syzygies)


def _check_syzygy(gens, vec):
    ring = gens[0].ring
    total = Polynomial(ring)
    for a, g in zip(vec, gens):
        total = total + a * g
    if not total.is_zero():
        raise AssertionError("computed vector is not a syzygy")
    degs = {a.degree() + g.degree() for a, g in zip(vec, gens) if not a.is_zero()}
    if len(degs) > 1 or any(not a.is_homogeneous() for a in vec):
        raise AssertionError("computed syzygy is not homogeneous")


def taylor_syzygies(gens: Sequence[Polynomial]) -> List[Tuple[Polynomial, ...]]:
    """Pairwise lcm-exchange relations of a list of monomials (terms)."""
    ring = gens[0].ring
    out = []
    r = len(gens)
    for i in range(r):
        for j in range(i + 1, r):
            (ui, ci), = gens[i].terms.items()
            (uj, cj), = gens[j].terms.items()
            l = mlcm(ui, uj)
            vec = [Polynomial(ring)] * r
            vec[i] = Polynomial(ring, {mdiv(l, ui): 1 / ci})
            vec[j] = Polynomial(ring, {mdiv(l, uj): -1 / cj})
            out.append(tuple(vec))
    return out


def schreyer_syzygies(G: Sequence[Polynomial], order: MonomialOrder) -> List[Tuple[Polynomial, ...]]:
    """Syzygies of a Groebner basis from standard representations of its S-pairs."""
    ring = G[0].ring
    r = len(G)
    out = []
    for i in range(r):
        for j in range(i + 1, r):
            f, g = G[i], G[j]
            lf, lg = f.leading_monomial(order), g.leading_monomial(order)
            l = mlcm(lf, lg)
            af = Polynomial(ring, {mdiv(l, lf): 1 / f.leading_coefficient(order)})
            ag = Polynomial(ring, {mdiv(l, lg): 1 / g.leading_coefficient(order)})
            spoly = af * f - ag * g
            quots, rem = divide(spoly, G, order)
            if not rem.is_zero():
                raise ValueError("input is not a Groebner basis")
            vec = [-q for q in quots]
            vec[i] = vec[i] + af
            vec[j] = vec[j] - ag
            if any(not a.is_zero() for a in vec):
                out.append(tuple(vec))
    return out


def _groebner_with_cofactors(F: Sequence[Polynomial], order: MonomialOrder):
    """Plain Buchberger over Q tracking g_k = sum_i A[k][i] f_i."""
    ring = F[0].ring
    r = len(F)
    zero = Polynomial(ring)
    G: List[Polynomial] = []
    A: List[List[Polynomial]] = []
    for i, f in enumerate(F):
        row = [zero] * r
        row[i] = Polynomial.constant(ring, 1)
        G.append(f)
        A.append(row)
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        f, g = G[i], G[j]
        lf, lg = f.leading_monomial(order), g.leading_monomial(order)
        l = mlcm(lf, lg)
        af = Polynomial(ring, {mdiv(l, lf): 1 / f.leading_coefficient(order)})
        ag = Polynomial(ring, {mdiv(l, lg): 1 / g.leading_coefficient(order)})
        s = af * f - ag * g
        quots, rem = divide(s, G, order)
        if rem.is_zero():
            continue
        row = [zero] * r
        for k in range(r):
            row[k] = af * A[i][k] - ag * A[j][k]
            for t, q in enumerate(quots):
                if not q.is_zero():
                    row[k] = row[k] - q * A[t][k]
        G.append(rem)
        A.append(row)
        pairs.extend((t, len(G) - 1) for t in range(len(G) - 1))
    return G, A


def syzygy_generators(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX, method: Optional[str] = None) -> SyzygyList:
    """A generating set of the syzygies of ``gens``.

    Monomial inputs default to Taylor relations; ``method="schreyer"`` (or
    non-monomial input) uses S-pair cofactor tracking.
    """
    gens = tuple(gens)
    if any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    if len(gens) <= 1:
        return SyzygyList(gens, [], method or "taylor")
    monomial = all(g.is_monomial() for g in gens)
    if method is None:
        method = "taylor" if monomial else "schreyer"
    if method == "taylor":
        if not monomial:
            raise ValueError("Taylor relations need monomial generators")
        syz = taylor_syzygies(gens)
    elif method == "schreyer":
        if is_groebner(gens, order):
            syz = schreyer_syzygies(gens, order)
        else:
            syz = _syzygies_via_cofactors(gens, order)
    else:
        raise ValueError(f"unknown syzygy method {method!r}")
    for vec in syz:
        _check_syzygy(gens, vec)
    return SyzygyList(gens, syz, method)


def _syzygies_via_cofactors(F: Sequence[Polynomial], order: MonomialOrder):
    ring = F[0].ring
    r = len(F)
    G, A = _groebner_with_cofactors(F, order)
    out = []
    # Schreyer syzygies of G pulled back to F
    for s in schreyer_syzygies(G, order):
        vec = [Polynomial(ring)] * r
        for k, sk in enumerate(s):
            if sk.is_zero():
                continue
            for i in range(r):
                if not A[k][i].is_zero():
                    vec[i] = vec[i] + sk * A[k][i]
        if any(not v.is_zero() for v in vec):
            out.append(tuple(vec))
    # f_i minus its expression through G
    for i, f in enumerate(F):
        quots, rem = divide(f, G, order)
        assert rem.is_zero()
        vec = [Polynomial(ring)] * r
        vec[i] = Polynomial.constant(ring, 1)
        for k, q in enumerate(quots):
            if q.is_zero():
                continue
            for t in range(r):
                if not A[k][t].is_zero():
                    vec[t] = vec[t] - q * A[k][t]
        if any(not v.is_zero() for v in vec):
            out.append(tuple(vec))
    return out


# ---------- coordinate changes ----------

def _det(matrix) -> Fraction:
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _inverse(matrix):
    n = len(matrix)
    m = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [v / p for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class CoordinateChange:
    """gamma . x_j = sum_i matrix[i][j] x_i."""

    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("coordinate change must be square")
        object.__setattr__(self, "matrix", m)
        if _det(m) == 0:
            raise ValueError("coordinate change is singular")

    @classmethod
    def from_images(cls, images: Sequence[Polynomial]) -> "CoordinateChange":
        """Build from the linear forms gamma . x_0, ..., gamma . x_n."""
        ring = images[0].ring
        n = ring.num_vars
        cols = []
        for img in images:
            if img.homogeneous_degree not in (1,):
                raise ValueError(f"{img} is not a linear form")
            cols.append([img.coefficient(tuple(int(k == i) for k in range(n))) for i in range(n)])
        return cls(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @classmethod
    def identity(cls, n: int) -> "CoordinateChange":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def images(self, ring: RingContext) -> List[Polynomial]:
        n = len(self.matrix)
        if ring.num_vars != n:
            raise ValueError("coordinate change does not fit the ring")
        out = []
        for j in range(n):
            terms = {tuple(int(k == i) for k in range(n)): self.matrix[i][j] for i in range(n)}
            out.append(Polynomial(ring, terms))
        return out

    def inverse(self) -> "CoordinateChange":
        return CoordinateChange(tuple(tuple(r) for r in _inverse(self.matrix)))

    def determinant(self) -> Fraction:
        return _det(self.matrix)


def apply_coordinate_change(I, gamma: CoordinateChange) -> GradedIdeal:
    I = as_graded(I)
    imgs = gamma.images(I.ring)
    return GradedIdeal(I.ring, [g.substitute(imgs).primitive() for g in I.generators])
