import pytest

from sghilb.parsing import parse_ideal_document
from sghilb.ring import RingContext

XYZT = RingContext(("x", "y", "z", "t"))
XYZ = RingContext(("x", "y", "z"))


def ideal(gens: str, ring: str = "x y z t"):
    """GradedIdeal from a comma-separated generator string."""
    return parse_ideal_document(f"ring {ring}\nideal {gens}").ideal


def mono(gens: str, ring: str = "x y z t"):
    return ideal(gens, ring).as_monomial_ideal()


@pytest.fixture
def xyzt():
    return XYZT


# acceptance criterion -> (description, passed); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        label, ok = ACCEPTANCE[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {label}")
