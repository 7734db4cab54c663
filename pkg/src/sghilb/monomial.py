"""Monomial ideals, strong stability, saturation and Borel-fixed enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .ring import (
    GREVLEX,
    Monomial,
    Polynomial,
    RingContext,
    _exponents_of_degree,
    divides,
    mdiv,
    mgcd,
    mlcm,
)


def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Drop every monomial divisible by another one; sort canonically."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda u: (sum(u), u))
    kept: List[Monomial] = []
    for u in uniq:
        if not any(divides(v, u) for v in kept):
            kept.append(u)
    return tuple(sorted(kept, key=_canonical_key))


def _canonical_key(u: Monomial):
    # ascending degree, then descending lex
    return (sum(u), tuple(-e for e in u))


class MonomialIdeal:
    """A monomial ideal stored by its minimal generators."""

    __slots__ = ("ring", "gens", "_parts", "_hash")

    def __init__(self, ring: RingContext, gens: Iterable[Monomial] = ()):
        self.ring = ring
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != ring.num_vars:
                raise ValueError(f"monomial {g} does not fit {ring.num_vars} variables")
        self.gens = minimalize(gens)
        self._parts: Dict[int, FrozenSet[Monomial]] = {}
        self._hash = None

    @classmethod
    def from_polynomials(cls, ring: RingContext, polys: Iterable[Polynomial]) -> "MonomialIdeal":
        gens = []
        for p in polys:
            if not p.is_monomial():
                raise ValueError(f"{p} is not a monomial")
            gens.extend(p.terms)
        return cls(ring, gens)

    # basic queries
    def __contains__(self, u: Monomial) -> bool:
        return any(divides(g, u) for g in self.gens)

    contains = __contains__

    def is_zero(self) -> bool:
        return not self.gens

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def degree_part(self, d: int) -> FrozenSet[Monomial]:
        """Monomials of I_d."""
        part = self._parts.get(d)
        if part is None:
            part = frozenset(u for u in _exponents_of_degree(self.ring.num_vars, d) if u in self)
            self._parts[d] = part
        return part

    def count(self, d: int) -> int:
        """dim_K I_d, by direct enumeration of S_d."""
        if d < 0:
            return 0
        return len(self.degree_part(d))

    def hilbert_prefix(self, D: int) -> List[int]:
        return [self.count(d) for d in range(D + 1)]

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(g in self for g in other.gens)

    # arithmetic
    def colon_monomial(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal(self.ring, (mdiv(g, mgcd(g, m)) for g in self.gens))

    def colon_variable_power(self, i: int) -> "MonomialIdeal":
        """I : x_i^infinity."""
        out = []
        for g in self.gens:
            u = list(g)
            u[i] = 0
            out.append(tuple(u))
        return MonomialIdeal(self.ring, out)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, (mlcm(a, b) for a in self.gens for b in other.gens))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def polynomials(self) -> List[Polynomial]:
        return [Polynomial.monomial(self.ring, g) for g in self.gens]

    # Hilbert series numerator: HS(S/I) = N(t) / (1 - t)^(n+1)
    def hilbert_numerator(self) -> Dict[int, int]:
        return dict(_numerator(self.gens))

    def quotient_dim(self, d: int) -> int:
        """h_{S/I}(d) from the Hilbert series numerator."""
        n = self.ring.n
        return sum(c * comb(n + d - k, n) for k, c in _numerator(self.gens) if d - k >= 0)

    def hilbert_polynomial(self) -> List[Fraction]:
        """Coefficients [c_0, c_1, ...] of p_{S/I}(d) = sum c_i d^i."""
        n = self.ring.n
        total = [Fraction(0)] * (n + 1)
        for k, c in _numerator(self.gens):
            for i, a in enumerate(binomial_poly(n - k, n)):
                total[i] += c * a
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        if total == [0]:
            return []
        return total

    # comparison and display
    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring.num_vars == other.ring.num_vars and self.gens == other.gens

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.gens)
        return self._hash

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def generator_strings(self) -> List[str]:
        return [self.ring.format_monomial(g) for g in self.gens]

    def __str__(self):
        return "<" + ", ".join(self.generator_strings()) + ">"

    def __repr__(self):
        return f"MonomialIdeal({str(self)})"


def sort_key(I: MonomialIdeal):
    """Deterministic ordering of ideals by their sorted generator lists."""
    return tuple(_canonical_key(g) for g in I.gens)


def binomial_poly(shift: int, n: int) -> List[Fraction]:
    """Coefficients in d of C(d + shift, n) = prod_{j=1..n} (d + shift - n + j) / j."""
    coeffs = [Fraction(1)]
    for j in range(1, n + 1):
        a = shift - n + j
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * a
            new[i + 1] += c
        coeffs = [c / j for c in new]
    return coeffs


@lru_cache(maxsize=4096)
def _numerator(gens: Tuple[Monomial, ...]) -> Tuple[Tuple[int, int], ...]:
    if not gens:
        return ((0, 1),)
    if _pairwise_coprime(gens):
        poly = {0: 1}
        for g in gens:
            dg = sum(g)
            new = dict(poly)
            for k, c in poly.items():
                new[k + dg] = new.get(k + dg, 0) - c
            poly = {k: c for k, c in new.items() if c}
        return tuple(sorted(poly.items()))
    # N(J + (m)) = N(J) - t^deg(m) N(J : m)
    m = max(gens, key=lambda u: (sum(u), u))
    rest = minimalize(g for g in gens if g != m)
    colon = minimalize(mdiv(g, mgcd(g, m)) for g in rest)
    out = dict(_numerator(rest))
    dm = sum(m)
    for k, c in _numerator(colon):
        out[k + dm] = out.get(k + dm, 0) - c
    return tuple(sorted((k, c) for k, c in out.items() if c))


def _pairwise_coprime(gens) -> bool:
    seen = [0] * len(gens[0])
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if seen[i]:
                    return False
                seen[i] = 1
    return True


# ---------- strong stability and the Borel order ----------

def raising_moves(u: Monomial) -> Iterator[Monomial]:
    """All x_i * u / x_j with i < j and x_j | u."""
    for j, e in enumerate(u):
        if e and j:
            for i in range(j):
                v = list(u)
                v[j] -= 1
                v[i] += 1
                yield tuple(v)


def lowering_moves(u: Monomial) -> Iterator[Monomial]:
    """All x_j * u / x_i with i < j and x_i | u."""
    n = len(u)
    for i, e in enumerate(u):
        if e:
            for j in range(i + 1, n):
                v = list(u)
                v[i] -= 1
                v[j] += 1
                yield tuple(v)


def strong_stability_witness(I: MonomialIdeal) -> Optional[Monomial]:
    """A monomial forced into I by a Borel move but missing from it, or None."""
    for g in I.gens:
        for v in raising_moves(g):
            if v not in I:
                return v
    return None


def is_strongly_stable(I: MonomialIdeal) -> Tuple[bool, Optional[Monomial]]:
    w = strong_stability_witness(I)
    return w is None, w


def borel_leq(a: Monomial, b: Monomial) -> bool:
    """True when b is reachable from a by raising moves (a <= b in Borel order)."""
    if len(a) != len(b):
        raise ValueError("monomials in different rings")
    if sum(a) != sum(b):
        raise ValueError("Borel order compares monomials of equal degree")
    sa = sb = 0
    for ea, eb in zip(a, b):
        sa += ea
        sb += eb
        if sb < sa:
            return False
    return True


def is_borel_closed(B: Set[Monomial]) -> bool:
    return all(v in B for u in B for v in raising_moves(u))


# ---------- saturation ----------

def saturate(I: MonomialIdeal) -> MonomialIdeal:
    """I : m^infinity as the intersection of the I : x_i^infinity."""
    out = None
    for i in range(I.ring.num_vars):
        part = I.colon_variable_power(i)
        out = part if out is None else out.intersect(part)
    return out


def saturate_stable(I: MonomialIdeal) -> MonomialIdeal:
    """Saturation of a strongly stable ideal: I : x_n^infinity."""
    return I.colon_variable_power(I.ring.num_vars - 1)


def is_saturated(I: MonomialIdeal) -> bool:
    return saturate(I) == I


# ---------- Borel-closed extensions ----------

def s1_times(B: Iterable[Monomial], nvars: int) -> Set[Monomial]:
    out = set()
    for u in B:
        for i in range(nvars):
            v = list(u)
            v[i] += 1
            out.add(tuple(v))
    return out


def borel_closed_extensions(
    forced: Set[Monomial],
    candidates: Sequence[Monomial],
    lo: int,
    hi: int,
) -> Iterator[Set[Monomial]]:
    """Borel-closed sets B with forced <= B <= forced + candidates, lo <= |B| <= hi.

    ``forced`` must be Borel-closed and every raising move of a candidate must
    lie in forced or among the candidates.  Candidates are scanned in
    descending lex order, a linear extension of the Borel order, so each
    include decision only depends on earlier decisions.
    """
    cand = sorted(set(candidates) - forced, reverse=True)
    base = len(forced)
    if base > hi or base + len(cand) < lo:
        return
    chosen: Set[Monomial] = set(forced)
    ncand = len(cand)

    def rec(k: int):
        size = len(chosen)
        if size + (ncand - k) < lo:
            return
        if k == ncand or size == hi:
            if size >= lo:
                yield set(chosen)
            return
        u = cand[k]
        if all(v in chosen for v in raising_moves(u)):
            chosen.add(u)
            yield from rec(k + 1)
            chosen.discard(u)
        yield from rec(k + 1)

    yield from rec(0)


@dataclass
class BorelEnumeration:
    """Result of a bounded enumeration of Borel-fixed ideals."""

    ideals: List[MonomialIdeal]
    degree_bound: int
    complete: bool = True
    hilbert_function: Optional[List[int]] = None
    hilbert_polynomial: Optional[List[Fraction]] = None
    nodes: int = 0

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __getitem__(self, i):
        return self.ideals[i]


def _ideal_from_levels(ring: RingContext, levels: Sequence[Set[Monomial]], extra=()) -> MonomialIdeal:
    gens = []
    nv = ring.num_vars
    prev: Set[Monomial] = set()
    for B in levels:
        gens.extend(B - s1_times(prev, nv))
        prev = B
    gens.extend(extra)
    return MonomialIdeal(ring, gens)


def enumerate_borel_with_hf(
    ring: RingContext,
    h: Sequence[int],
    D: Optional[int] = None,
    hilbert_poly: Optional[Sequence[Fraction]] = None,
) -> BorelEnumeration:
    """All strongly stable ideals I generated in degrees <= D with dim I_d = h(d), d <= D.

    ``h`` lists dim I_d (ideal side).  With ``hilbert_poly`` (of S/I) the
    candidates are additionally required to have exactly that Hilbert
    polynomial.
    """
    from .hilbert import check_admissible, default_degree_bound, extend_hilbert

    if D is None:
        D = default_degree_bound(ring, h, hilbert_poly)
    h = list(h)
    if len(h) < D + 1:
        if hilbert_poly is None:
            raise ValueError(f"Hilbert function prefix has length {len(h)}, need {D + 1}")
        h = extend_hilbert(ring, h, hilbert_poly, D)
    h = h[: D + 1]
    check_admissible(ring, h)
    nv = ring.num_vars
    results = []
    nodes = 0

    def rec(d: int, levels: List[Set[Monomial]]):
        nonlocal nodes
        nodes += 1
        if d > D:
            I = _ideal_from_levels(ring, levels)
            if hilbert_poly is not None and _poly_ne(I.hilbert_polynomial(), hilbert_poly):
                return
            results.append(I)
            return
        forced = s1_times(levels[-1], nv) if levels else set()
        for B in borel_closed_extensions(forced, _exponents_of_degree(nv, d), h[d], h[d]):
            levels.append(B)
            rec(d + 1, levels)
            levels.pop()

    rec(0, [])
    results.sort(key=sort_key)
    return BorelEnumeration(results, D, True, h, list(hilbert_poly) if hilbert_poly else None, nodes)


def _poly_ne(a, b) -> bool:
    a = list(a)
    b = list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    return [Fraction(x) for x in a] != [Fraction(x) for x in b]


def nonsat_expansions(Isat: MonomialIdeal, target_h: Sequence[int], D: Optional[int] = None) -> List[MonomialIdeal]:
    """Strongly stable J with J^sat = Isat and dim J_d = target_h(d) for d <= D.

    Each J_d is a Borel-closed subset of Isat_d, i.e. Isat_d with
    Borel-minimal monomials removed, subject to S_1 J_d <= J_(d+1).  From
    degree D + 1 on J agrees with Isat.  Returns [] for an infeasible target.
    """
    ring = Isat.ring
    if D is None:
        D = len(target_h) - 1
    if len(target_h) < D + 1:
        raise ValueError("target prefix shorter than the degree bound")
    if target_h[D] != Isat.count(D):
        raise ValueError(f"target must agree with the saturated ideal in degree {D}")
    nv = ring.num_vars
    results = []

    def rec(d: int, levels):
        if d > D:
            tail = [u for u in _exponents_of_degree(nv, D + 1) if u in Isat]
            tail += [g for g in Isat.gens if sum(g) > D + 1]
            results.append(_ideal_from_levels(ring, levels, tail))
            return
        forced = s1_times(levels[-1], nv) if levels else set()
        allowed = Isat.degree_part(d)
        if not forced <= allowed:
            return
        for B in borel_closed_extensions(forced, allowed, target_h[d], target_h[d]):
            levels.append(B)
            rec(d + 1, levels)
            levels.pop()

    rec(0, [])
    results.sort(key=sort_key)
    return results


def enumerate_saturated_borel_with_hp(
    ring: RingContext,
    p: Sequence[Fraction],
    R: int,
    node_cap: int = 10**6,
) -> BorelEnumeration:
    """Saturated strongly stable ideals with Hilbert polynomial p, generated in degree <= R.

    A strongly stable ideal is saturated exactly when no minimal generator
    involves the last variable, so the search runs over strongly stable
    ideals of K[x_0..x_(n-1)] degree by degree.  When p has degree <= 1 the
    search is pruned using the quotient dimensions q_d of the smaller ring:
    once q_d <= d the values can never grow again (Macaulay), so q_d must
    stay at least the eventual slope c; and the excess sum(q_e - c) is then
    nondecreasing and must end at p(0) - c.
    """
    if R < 1:
        raise ValueError("degree bound must be at least 1")
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    if not p:
        unit = MonomialIdeal(ring, [(0,) * ring.num_vars])
        return BorelEnumeration([unit], R, True, None, [], 1)
    nv = ring.num_vars
    if nv < 2:
        raise ValueError("need at least two variables")
    small = nv - 1
    prunable = len(p) <= 2
    if prunable:
        c = p[1] if len(p) == 2 else Fraction(0)
        K = p[0] - c
        if c.denominator != 1 or K.denominator != 1:
            return BorelEnumeration([], R, True, None, p, 0)
        c, K = int(c), int(K)
    results = []
    nodes = 0
    complete = True

    def embed(levels) -> MonomialIdeal:
        gens = []
        prev: Set[Monomial] = set()
        for B in levels:
            gens.extend(B - s1_times(prev, small))
            prev = B
        return MonomialIdeal(ring, [g + (0,) for g in gens])

    def rec(d: int, levels, excess: int):
        nonlocal nodes, complete
        nodes += 1
        if nodes > node_cap:
            complete = False
            return
        if d > R:
            I = embed(levels)
            if not _poly_ne(I.hilbert_polynomial(), p):
                results.append(I)
            return
        forced = s1_times(levels[-1], small) if levels else set()
        total = comb(small - 1 + d, small - 1)
        lo_q, hi_q = 0, total
        if prunable:
            if d >= c:
                lo_q = max(lo_q, c)
            if d >= c - 1:
                hi_q = min(hi_q, K + c - excess)
        if lo_q > hi_q:
            return
        for B in borel_closed_extensions(forced, _exponents_of_degree(small, d), total - hi_q, total - lo_q):
            if not complete:
                return
            q = total - len(B)
            if prunable:
                if q < c and q <= d:
                    continue
                new_excess = excess + q - c
                if d >= c - 1 and new_excess > K:
                    continue
            else:
                new_excess = excess
            levels.append(B)
            rec(d + 1, levels, new_excess)
            levels.pop()

    rec(0, [], 0)
    results.sort(key=sort_key)
    return BorelEnumeration(results, R, complete, None, p, nodes)
