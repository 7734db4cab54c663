"""Built-in verification cases and the engine that checks them.

Case data lives in ``data/cases.yaml``.  Random family members are built
from small templates: each family names some auxiliary forms with their
degrees, and generator expressions in those forms and the ring variables.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import yaml

from .geometry import find_specialization_weight, gin, tangent_dimension, verify_specialization
from .groebner import CoordinateChange, GradedIdeal, apply_coordinate_change, initial_ideal
from .hilbert import extend_hilbert, lex_segment, parse_poly, regularity
from .monomial import (
    MonomialIdeal,
    enumerate_borel_with_hf,
    enumerate_saturated_borel_with_hp,
    nonsat_expansions,
    saturate,
)
from .parsing import parse_generators
from .ring import GREVLEX, LEX, MonomialOrder, Polynomial, RingContext, _exponents_of_degree

DATA_FILE = Path(__file__).with_name("data") / "cases.yaml"
PARAM_BOUND = 9
SAMPLE_RETRIES = 25


@dataclass
class Family:
    id: str
    component: int
    gin: str
    forms: Dict[str, int] = field(default_factory=dict)
    generators: List[str] = field(default_factory=list)
    orbit: Optional[str] = None


@dataclass
class Specialization:
    source: str
    target: str
    component: Optional[int] = None
    weight: Optional[Tuple[int, ...]] = None
    order: Optional[str] = None


@dataclass
class ScenarioCase:
    id: str
    ring: RingContext
    hilbert_prefix: List[int]
    hilbert_polynomial: list
    ideals: Dict[str, GradedIdeal]
    expected_borel_ideals: List[str]
    saturated_bound: int
    expected_saturated: List[str]
    expected_regularities: List[int]
    expected_tangent: List[Tuple[str, int]]
    specializations: List[Specialization]
    expected_component_dims: List[int]
    expected_lex_components: int
    families: List[Family] = field(default_factory=list)
    sources: Dict[str, str] = field(default_factory=dict)

    def monomial(self, name: str) -> MonomialIdeal:
        return self.ideals[name].as_monomial_ideal()

    def name_of(self, I: MonomialIdeal) -> Optional[str]:
        for name, J in self.ideals.items():
            if J.is_monomial() and J.as_monomial_ideal() == I:
                return name
        return None

    def family(self, family_id: str) -> Family:
        for fam in self.families:
            if fam.id == family_id:
                return fam
        raise KeyError(f"case {self.id} has no family {family_id!r}")


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed, "pass": self.passed}


@dataclass
class VerificationReport:
    case: str
    checks: List[Check] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name, expected, computed, passed=None) -> Check:
        if passed is None:
            passed = expected == computed
        c = Check(name, expected, computed, bool(passed))
        self.checks.append(c)
        return c

    def as_dict(self, timing: bool = True) -> dict:
        out = {"case": self.case, "checks": [c.as_dict() for c in self.checks]}
        out["elapsed_ms"] = int(round(self.elapsed * 1000)) if timing else 0
        return out


# ---------- loading ----------

def _case_from_doc(doc: dict) -> ScenarioCase:
    ring = RingContext(tuple(doc["ring"]))
    ideals = {}
    for name, gens in doc["ideals"].items():
        polys = []
        for g in gens:
            polys.extend(parse_generators(ring, str(g)))
        ideals[name] = GradedIdeal(ring, polys)
    specs = [
        Specialization(
            s["source"], s["target"], s.get("component"),
            tuple(s["weight"]) if s.get("weight") else None, s.get("order"),
        )
        for s in doc.get("specializations", [])
    ]
    fams = [
        Family(f["id"], f["component"], f["gin"], dict(f.get("forms", {})),
               [str(g) for g in f.get("generators", [])], f.get("orbit"))
        for f in doc.get("families", [])
    ]
    sources = {"borel": doc["borel"]["source"], "saturated": doc["saturated"]["source"],
               "components": doc["components"]["source"], "lex_components": doc["lex_components"]["source"]}
    for t in doc["tangent"]:
        sources["tangent:" + t["ideal"]] = t["source"]
    sat = doc["saturated"]
    return ScenarioCase(
        id=doc["id"],
        ring=ring,
        hilbert_prefix=list(doc["hilbert_prefix"]),
        hilbert_polynomial=parse_poly(str(doc["hilbert_polynomial"])),
        ideals=ideals,
        expected_borel_ideals=list(doc["borel"]["names"]),
        saturated_bound=int(sat["bound"]),
        expected_saturated=list(sat["names"]),
        expected_regularities=[int(r) for r in sat["regularities"]],
        expected_tangent=[(t["ideal"], int(t["value"])) for t in doc["tangent"]],
        specializations=specs,
        expected_component_dims=list(doc["components"]["dims"]),
        expected_lex_components=int(doc["lex_components"]["value"]),
        families=fams,
        sources=sources,
    )


def load_cases(path=DATA_FILE) -> List[ScenarioCase]:
    with open(path, encoding="utf-8") as fh:
        return [_case_from_doc(doc) for doc in yaml.safe_load_all(fh) if doc]


@lru_cache(maxsize=1)
def _builtin():
    return tuple(load_cases())


def builtin_cases() -> List[ScenarioCase]:
    return list(_builtin())


def get_case(case_id: str) -> ScenarioCase:
    for case in _builtin():
        if case.id == case_id:
            return case
    raise KeyError(f"unknown case {case_id!r}; known: {', '.join(c.id for c in _builtin())}")


# ---------- family sampling ----------

def _random_form(ring: RingContext, degree: int, rng: random.Random) -> Polynomial:
    terms = {u: rng.randint(-PARAM_BOUND, PARAM_BOUND) for u in _exponents_of_degree(ring.num_vars, degree)}
    return Polynomial(ring, terms)


def _random_change(n: int, rng: random.Random) -> CoordinateChange:
    while True:
        m = tuple(tuple(rng.randint(-PARAM_BOUND, PARAM_BOUND) for _ in range(n)) for _ in range(n))
        try:
            return CoordinateChange(m)
        except ValueError:
            continue


def _instantiate(case: ScenarioCase, fam: Family, rng: random.Random) -> GradedIdeal:
    ring = case.ring
    if fam.orbit is not None:
        return apply_coordinate_change(case.ideals[fam.orbit], _random_change(ring.num_vars, rng))
    names = tuple(ring.variable_names) + tuple(fam.forms)
    big = RingContext(names)
    images = list(ring.gens()) + [_random_form(ring, d, rng) for d in fam.forms.values()]
    gens = []
    for text in fam.generators:
        for g in parse_generators(big, text, homogeneous=False):
            gens.append(g.substitute(images))
    return GradedIdeal(ring, [g for g in gens if not g.is_zero()])


def case_hilbert(case: ScenarioCase, D: int) -> List[int]:
    return extend_hilbert(case.ring, case.hilbert_prefix, case.hilbert_polynomial, D)


def sample_family_member(case: ScenarioCase, family_id: str, seed: int = 0) -> GradedIdeal:
    """A random member of the family, retried until its Hilbert function matches the case."""
    fam = case.family(family_id)
    rng = random.Random(f"{case.id}/{family_id}/{seed}")
    D = max(len(case.hilbert_prefix) - 1, max(case.monomial(n).max_degree() for n in case.expected_borel_ideals) + 1)
    want = case_hilbert(case, D)
    for _ in range(SAMPLE_RETRIES):
        J = _instantiate(case, fam, rng)
        if any(not g.is_homogeneous() for g in J.generators):
            continue
        if initial_ideal(J, GREVLEX).hilbert_prefix(D) == want:
            return J
    raise RuntimeError(f"no generic member of {case.id}/{family_id} after {SAMPLE_RETRIES} attempts")


# ---------- verification ----------

def _names(case: ScenarioCase, ideals) -> List[str]:
    return [case.name_of(I) or str(I) for I in ideals]


def run_case(case: ScenarioCase, seed: int = 0, samples: int = 1, gin_trials: int = 3) -> VerificationReport:
    start = time.perf_counter()
    rep = VerificationReport(case.id)
    ring = case.ring
    p = case.hilbert_polynomial

    # Borel-fixed ideals with the given Hilbert function
    enum = enumerate_borel_with_hf(ring, case.hilbert_prefix, hilbert_poly=p)
    rep.add("borel-list", list(case.expected_borel_ideals), _names(case, enum.ideals))

    lex_name = case.expected_borel_ideals[0]
    lex = case.monomial(lex_name)
    L = lex_segment(ring, case_hilbert(case, max(enum.degree_bound, len(case.hilbert_prefix) - 1)))
    rep.add("lex-segment", str(lex), str(L))

    # saturated Borel-fixed ideals with the same Hilbert polynomial
    sat_enum = enumerate_saturated_borel_with_hp(ring, p, case.saturated_bound)
    rep.add("saturated-list", list(case.expected_saturated), _names(case, sat_enum.ideals),
            sat_enum.complete and _names(case, sat_enum.ideals) == case.expected_saturated)
    for name, reg in zip(case.expected_saturated, case.expected_regularities):
        rep.add(f"regularity:{name}", reg, regularity(case.monomial(name)))

    # each Borel ideal comes back from its saturation
    for name in case.expected_borel_ideals:
        J = case.monomial(name)
        Jsat = saturate(J)
        D = J.max_degree()
        expansions = nonsat_expansions(Jsat, case_hilbert(case, D), D)
        sat_name = case.name_of(Jsat) or str(Jsat)
        rep.add(f"saturation:{name}", True, sat_name in case.expected_saturated and J in expansions)

    # tangent spaces
    tangents: Dict[str, int] = {}
    for name, value in case.expected_tangent:
        tangents[name] = tangent_dimension(case.ideals[name]).dimension
        rep.add(f"tangent:{name}", value, tangents[name])

    # specialization witnesses
    lex_components = set()
    for sp in case.specializations:
        src = case.ideals[sp.source]
        target = case.monomial(sp.target)
        label = f"specialization:{sp.source}->{sp.target}"
        if sp.order is not None:
            got = initial_ideal(src, MonomialOrder.parse(sp.order))
            ok = got == target
            rep.add(label, f"in_{sp.order} = {target}", f"in_{sp.order} = {got}", ok)
        else:
            w = sp.weight
            if w is None:
                found = find_specialization_weight(src, target)
                w = found.weights if found is not None else None
            if w is None:
                rep.add(label, "weight found", "no weight with entries <= 6", False)
                continue
            check = verify_specialization(src, target, w)
            ok = check.ok
            computed = {"weight": list(w), "initial_matches": check.initial_matches,
                        "hilbert_matches": check.hilbert_matches,
                        "tangent": [check.tangent_source, check.tangent_target]}
            rep.add(label, "verified", computed if not ok else "verified", ok)
        if ok and sp.target == lex_name and sp.component is not None:
            lex_components.add(sp.component)

    # gin of random family members
    borel = {str(case.monomial(n)): n for n in case.expected_borel_ideals}
    for fam in case.families:
        for k in range(samples):
            J = sample_family_member(case, fam.id, seed + k)
            res = gin(J, GREVLEX, seed=seed + k, trials=gin_trials)
            got = borel.get(str(res.ideal)) if res.agreed else None
            rep.add(f"gin:{fam.id}" + (f"#{k}" if samples > 1 else ""), fam.gin,
                    got if got is not None else str(res.ideal), got is not None and got == fam.gin)
            if got == lex_name:
                lex_components.add(fam.component)
    rep.add("lex-components", case.expected_lex_components, len(lex_components))

    # the lex point is singular
    t_lex = tangents.get(lex_name)
    if t_lex is None:
        t_lex = tangent_dimension(lex).dimension
    bound = max(case.expected_component_dims)
    rep.add("singular-lex", f"> {bound}", t_lex, t_lex > bound)

    rep.elapsed = time.perf_counter() - start
    return rep


def corrupt(case: ScenarioCase, ideal: str, delta: int = 1) -> ScenarioCase:
    """Copy of ``case`` with one expected tangent value shifted (harness self-test)."""
    tangent = [(n, v + delta if n == ideal else v) for n, v in case.expected_tangent]
    return replace(case, expected_tangent=tangent)


def run_all(cases: Optional[Sequence[ScenarioCase]] = None, **kw) -> List[VerificationReport]:
    return [run_case(c, **kw) for c in (cases if cases is not None else builtin_cases())]
