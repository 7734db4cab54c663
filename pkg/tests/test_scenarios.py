import pytest

from sghilb.groebner import initial_ideal
from sghilb.monomial import is_strongly_stable
from sghilb.ring import GREVLEX
from sghilb.scenarios import (
    builtin_cases,
    case_hilbert,
    corrupt,
    get_case,
    load_cases,
    run_case,
    sample_family_member,
)

CASE_IDS = ["gotzmann-h1", "gotzmann-h2", "plane-h1", "curves-4d-minus-1-h1", "twisted-h1"]


@pytest.fixture(scope="module")
def reports():
    return {c.id: run_case(c) for c in builtin_cases()}


def test_builtin_case_ids():
    assert [c.id for c in builtin_cases()] == CASE_IDS
    with pytest.raises(KeyError):
        get_case("no-such-case")


def test_every_expected_value_is_tagged():
    for c in builtin_cases():
        assert set(c.sources.values()) <= {"literature", "regression"}
        assert c.sources


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_case_passes(reports, case_id):
    rep = reports[case_id]
    assert rep.passed, [c.as_dict() for c in rep.failures]
    names = [c.name for c in rep.checks]
    assert names[:3] == ["borel-list", "lex-segment", "saturated-list"]
    assert "lex-components" in names and names[-1] == "singular-lex"


def test_report_checks_cover_case(reports):
    c = get_case("gotzmann-h2")
    names = {ch.name for ch in reports[c.id].checks}
    for ideal_name, _ in c.expected_tangent:
        assert f"tangent:{ideal_name}" in names
    for sp in c.specializations:
        assert f"specialization:{sp.source}->{sp.target}" in names
    for fam in c.families:
        assert f"gin:{fam.id}" in names


def test_corrupted_case_fails_one_check():
    c = get_case("plane-h1")
    rep = run_case(corrupt(c, "I1"))
    assert [f.name for f in rep.failures] == ["tangent:I1"]
    assert rep.failures[0].expected == 9 and rep.failures[0].computed == 8


def test_report_dict_timing_switch(reports):
    rep = reports["plane-h1"]
    assert rep.as_dict(timing=False)["elapsed_ms"] == 0
    d = rep.as_dict()
    assert set(d) == {"case", "checks", "elapsed_ms"}
    assert set(d["checks"][0]) == {"name", "expected", "computed", "pass"}


def test_sampler_is_deterministic():
    c = get_case("twisted-h1")
    a = sample_family_member(c, "component-1", seed=3)
    b = sample_family_member(c, "component-1", seed=3)
    assert a.generators == b.generators
    d = sample_family_member(c, "component-1", seed=4)
    assert a.generators != d.generators


@pytest.mark.parametrize("case_id", CASE_IDS)
def test_samples_have_case_hilbert_function(case_id):
    c = get_case(case_id)
    for fam in c.families:
        J = sample_family_member(c, fam.id, seed=1)
        D = len(c.hilbert_prefix) + 1
        assert initial_ideal(J, GREVLEX).hilbert_prefix(D) == case_hilbert(c, D)


def test_case_hilbert_extends_prefix():
    c = get_case("gotzmann-h1")
    h = case_hilbert(c, 9)
    assert h[: len(c.hilbert_prefix)] == c.hilbert_prefix
    # dim S_d - 4d for d past the regularity
    from math import comb

    assert h[9] == comb(12, 3) - 36


def test_expected_ideals_are_strongly_stable():
    for c in builtin_cases():
        for name in c.expected_borel_ideals:
            assert is_strongly_stable(c.monomial(name))[0]


def test_load_cases_from_file(tmp_path):
    from sghilb.scenarios import DATA_FILE

    text = open(DATA_FILE).read()
    path = tmp_path / "cases.yaml"
    path.write_text(text)
    assert [c.id for c in load_cases(path)] == CASE_IDS
