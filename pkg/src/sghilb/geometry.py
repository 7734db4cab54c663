"""Generic initial ideals, tangent spaces Hom(I, S/I)_0, weight degenerations."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    CoordinateChange,
    GradedIdeal,
    apply_coordinate_change,
    as_graded,
    divide,
    groebner_basis,
    initial_ideal,
    syzygy_generators,
)
from .linalg import EchelonForm
from .monomial import MonomialIdeal, is_strongly_stable
from .ring import GREVLEX, Monomial, MonomialOrder, Polynomial, _exponents_of_degree, mmul, weight_order


# ---------- generic initial ideals ----------

@dataclass
class GinResult:
    ideal: Optional[MonomialIdeal]
    order: MonomialOrder
    trials: int
    seed: int
    agreed: bool
    candidates: List[MonomialIdeal] = field(default_factory=list)


def random_coordinate_change(n: int, rng: random.Random, bound: int = 99) -> CoordinateChange:
    """Dense integer matrix with entries in [-bound, bound], redrawn until invertible."""
    while True:
        m = tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n))
        try:
            return CoordinateChange(m)
        except ValueError:
            continue


def gin(I, order: MonomialOrder = GREVLEX, seed: int = 0, trials: int = 3, bound: int = 99) -> GinResult:
    """Initial ideals of ``trials`` random coordinate changes of I.

    ``agreed`` is set only if every trial gave the same ideal and that ideal
    is strongly stable; otherwise ``ideal`` is None and the caller should
    retry with a different seed.
    """
    if trials < 2:
        raise ValueError("gin needs at least two trials to detect disagreement")
    I = as_graded(I)
    if I.is_zero():
        raise ValueError("gin of the zero ideal")
    rng = random.Random(seed)
    found = []
    for _ in range(trials):
        gamma = random_coordinate_change(I.ring.num_vars, rng, bound)
        found.append(initial_ideal(apply_coordinate_change(I, gamma), order))
    agreed = all(J == found[0] for J in found) and is_strongly_stable(found[0])[0]
    return GinResult(found[0] if agreed else None, order, trials, seed, agreed, found)


# ---------- tangent space ----------

@dataclass
class TangentReport:
    ideal: object
    dimension: int
    unknown_count: int
    constraint_rank: int
    syzygy_source: str
    generator_count: int = 0
    syzygy_count: int = 0

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "unknown_count": self.unknown_count,
            "constraint_rank": self.constraint_rank,
            "syzygy_source": self.syzygy_source,
            "generator_count": self.generator_count,
            "syzygy_count": self.syzygy_count,
        }


class _QuotientBasis:
    """Standard monomials of S/I and normal forms of monomials modulo I."""

    def __init__(self, I: GradedIdeal, mono: Optional[MonomialIdeal], gb=None):
        self.ring = I.ring
        self.gb = gb
        self.initial = mono if mono is not None else MonomialIdeal(I.ring, gb.leading_monomials())
        self._basis: Dict[int, Dict[Monomial, int]] = {}
        self._nf: Dict[Monomial, Dict[Monomial, Fraction]] = {}

    def basis(self, d: int) -> Dict[Monomial, int]:
        b = self._basis.get(d)
        if b is None:
            mons = [u for u in _exponents_of_degree(self.ring.num_vars, d) if u not in self.initial]
            b = {u: k for k, u in enumerate(mons)}
            self._basis[d] = b
        return b

    def nf(self, u: Monomial) -> Dict[Monomial, Fraction]:
        r = self._nf.get(u)
        if r is None:
            if u not in self.initial:
                r = {u: Fraction(1)}
            elif self.gb is None:
                r = {}
            else:
                rem = divide(Polynomial.monomial(self.ring, u), self.gb.elements, self.gb.order)[1]
                r = dict(rem.terms)
            self._nf[u] = r
        return r


def tangent_dimension(I, syzygy_source: Optional[str] = None) -> TangentReport:
    """dim_K Hom_S(I, S/I)_0 by exact linear algebra.

    A homomorphism is fixed by the images of generators g_i, written in the
    standard-monomial basis of (S/I)_{deg g_i}; each syzygy sum a_i g_i = 0
    forces sum a_i phi(g_i) = 0 in S/I.  Monomial ideals use their minimal
    generators, other ideals their reduced grevlex Groebner basis.
    """
    if isinstance(I, MonomialIdeal):
        mono = I
        G = as_graded(I)
    else:
        G = as_graded(I)
        mono = G.as_monomial_ideal() if G.is_monomial() else None
    if G.is_zero():
        raise ValueError("tangent space of the zero ideal")
    if mono is not None:
        gens = mono.polynomials()
        quotient = _QuotientBasis(G, mono)
    else:
        gb = groebner_basis(G, GREVLEX)
        gens = list(gb.elements)
        quotient = _QuotientBasis(G, None, gb)
    syz = syzygy_generators(gens, GREVLEX, syzygy_source)

    # unknowns: (generator index, standard monomial of degree deg g_i)
    col_of: Dict[Tuple[int, Monomial], int] = {}
    for i, g in enumerate(gens):
        for u in quotient.basis(g.homogeneous_degree):
            col_of[(i, u)] = len(col_of)
    unknowns = len(col_of)

    ech = EchelonForm()
    for vec in syz:
        rows: Dict[Monomial, Dict[int, Fraction]] = {}
        for i, a in enumerate(vec):
            if a.is_zero():
                continue
            for u in quotient.basis(gens[i].homogeneous_degree):
                col = col_of[(i, u)]
                for t, c in a.terms.items():
                    for v, cv in quotient.nf(mmul(t, u)).items():
                        row = rows.setdefault(v, {})
                        row[col] = row.get(col, 0) + c * cv
        for row in rows.values():
            row = {k: v for k, v in row.items() if v}
            if row:
                ech.add(row)
    rank = ech.rank
    return TangentReport(I, unknowns - rank, unknowns, rank, syz.source, len(gens), len(syz))


# ---------- weight degenerations ----------

@dataclass(frozen=True)
class WeightVector:
    weights: Tuple[int, ...]
    tie_break: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def order(self) -> MonomialOrder:
        return weight_order(self.weights, self.tie_break)

    def __str__(self):
        return "(" + ",".join(map(str, self.weights)) + ")"


def weight_initial_ideal(I, w) -> MonomialIdeal:
    """Initial ideal under the weight order refined by its tie-break.

    This is the special fibre of the family x_i -> a^(w_i) x_i as a -> 0.
    """
    if not isinstance(w, WeightVector):
        w = WeightVector(tuple(w))
    return initial_ideal(as_graded(I), w.order)


def weight_scan(nvars: int, max_entry: int):
    """All weight vectors with entries in [0, max_entry], smallest first."""
    vecs = itertools.product(range(max_entry + 1), repeat=nvars)
    return sorted(vecs, key=lambda w: (max(w), sum(w), tuple(-a for a in w)))


def _same_hilbert(I, target: MonomialIdeal, D: int) -> bool:
    return initial_ideal(as_graded(I), GREVLEX).hilbert_prefix(D) == target.hilbert_prefix(D)


def find_specialization_weight(I, target: MonomialIdeal, max_entry: int = 6) -> Optional[WeightVector]:
    """First weight vector (in scan order) whose initial ideal of I is ``target``."""
    I = as_graded(I)
    D = target.max_degree() + 1
    if not _same_hilbert(I, target, D):
        raise ValueError("ideal and target have different Hilbert functions")
    for w in weight_scan(I.ring.num_vars, max_entry):
        wv = WeightVector(w)
        if weight_initial_ideal(I, wv) == target:
            return wv
    return None


@dataclass
class SpecializationCheck:
    initial_matches: bool
    hilbert_matches: bool
    tangent_source: int
    tangent_target: int

    @property
    def semicontinuous(self) -> bool:
        return self.tangent_target >= self.tangent_source

    @property
    def ok(self) -> bool:
        return self.initial_matches and self.hilbert_matches and self.semicontinuous

    def __bool__(self):
        return self.ok


def verify_specialization(I, target: MonomialIdeal, w) -> SpecializationCheck:
    """Check in_w(I) = target, equal Hilbert functions, and tangent semicontinuity."""
    if not isinstance(w, WeightVector):
        w = WeightVector(tuple(w))
    I = as_graded(I)
    D = max(target.max_degree(), max(g.degree() for g in I.generators)) + 1
    return SpecializationCheck(
        weight_initial_ideal(I, w) == target,
        _same_hilbert(I, target, D),
        tangent_dimension(I).dimension,
        tangent_dimension(target).dimension,
    )
