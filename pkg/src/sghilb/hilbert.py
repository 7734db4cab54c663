"""Hilbert functions and polynomials, lex-segment ideals, regularity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .monomial import MonomialIdeal, binomial_poly, is_strongly_stable, s1_times
from .ring import GREVLEX, RingContext, _exponents_of_degree


class InadmissibleError(ValueError):
    """The given values are not the Hilbert function of any homogeneous ideal."""


@dataclass
class HilbertData:
    """h_I(d) = dim I_d for d = 0..D, plus optional stabilization data."""

    ring: RingContext
    h_ideal: List[int]
    polynomial: Optional[List[Fraction]] = None
    stable_from: Optional[int] = None
    regularity: Optional[int] = None

    @property
    def D(self) -> int:
        return len(self.h_ideal) - 1

    @property
    def h_quotient(self) -> List[int]:
        return [self.ring.dim(d) - v for d, v in enumerate(self.h_ideal)]


# ---------- polynomials in one variable d, as coefficient lists ----------

def poly_eval(p: Sequence, d) -> Fraction:
    out = Fraction(0)
    for c in reversed(list(p)):
        out = out * d + c
    return out


def poly_trim(p: Sequence) -> List[Fraction]:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_sub(a: Sequence, b: Sequence) -> List[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return poly_trim(out)


def format_poly(p: Sequence, var: str = "d") -> str:
    p = poly_trim(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, var: str = "d") -> List[Fraction]:
    """Parse a univariate polynomial like ``4d``, ``3*d + 1`` or ``d^2/2 + 1``."""
    import re

    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    coeffs = {}
    for m in re.finditer(r"([+-])([^+-]+)", s):
        sign, body = m.group(1), m.group(2)
        term = re.fullmatch(
            rf"(\d+(?:/\d+)?)?\*?(?:({var})(?:\^(\d+))?)?(?:/(\d+))?", body
        )
        if term is None or not body:
            raise ValueError(f"cannot parse term {body!r} of {text!r}")
        num, v, exp, den = term.groups()
        c = Fraction(num) if num else Fraction(1)
        if den:
            c /= int(den)
        if v is None:
            if num is None:
                raise ValueError(f"cannot parse term {body!r} of {text!r}")
            k = 0
        else:
            k = int(exp) if exp else 1
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, 0) + c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] += c
    return poly_trim(out)


def _interpolate(points) -> List[Fraction]:
    """Power-basis coefficients of the polynomial through (d, value) points."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] -= c * xj
                new[k + 1] += c
            basis = new
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return poly_trim(coeffs)


# ---------- Hilbert functions ----------

def hilbert_function(I, D: int) -> HilbertData:
    """dim I_d for d <= D, counted on the grevlex initial ideal."""
    if D < 0:
        raise ValueError("degree bound must be nonnegative")
    if isinstance(I, MonomialIdeal):
        mono = I
    else:
        from .groebner import initial_ideal

        mono = initial_ideal(I, GREVLEX)
    return HilbertData(mono.ring, mono.hilbert_prefix(D))


def hilbert_polynomial(hd: HilbertData, extra: int = 2) -> List[Fraction]:
    """Interpolate p_{S/I} from the top of the prefix and record stable_from.

    The lowest degree k <= n whose interpolant through the last k + 1 values
    also matches ``extra`` further values is accepted.
    """
    q = hd.h_quotient
    D = hd.D
    n = hd.ring.n
    for k in range(-1, n + 1):
        need = k + 1 + extra
        if need > D + 1:
            break
        if k < 0:
            if all(v == 0 for v in q[D - extra:]):
                poly: List[Fraction] = []
            else:
                continue
        else:
            pts = [(d, q[d]) for d in range(D - k, D + 1)]
            poly = _interpolate(pts)
            if any(poly_eval(poly, d) != q[d] for d in range(D - k - extra, D - k)):
                continue
        start = D
        while start > 0 and poly_eval(poly, start - 1) == q[start - 1]:
            start -= 1
        hd.polynomial = poly
        hd.stable_from = start
        return poly
    raise ValueError("Hilbert function prefix too short to certify the Hilbert polynomial")


def extend_hilbert(ring: RingContext, h: Sequence[int], p: Sequence, D: int) -> List[int]:
    """Extend an ideal-side prefix to degree D using h_I(d) = dim S_d - p(d)."""
    out = list(h)
    for d in range(len(out), D + 1):
        v = ring.dim(d) - poly_eval(p, d)
        if v.denominator != 1:
            raise ValueError("Hilbert polynomial takes a non-integer value")
        out.append(int(v))
    return out[: max(D + 1, 0)] if len(out) > D + 1 else out


def lex_segment(ring: RingContext, h: Sequence[int], D: Optional[int] = None) -> MonomialIdeal:
    """The lex-segment ideal: L_d spanned by the h(d) lex-greatest monomials of S_d.

    Generators are read off up to degree D (default: the prefix length).
    Raises InadmissibleError when S_1 L_(d-1) is not contained in L_d.
    """
    if D is None:
        D = len(h) - 1
    if len(h) < D + 1:
        raise ValueError("prefix shorter than the degree bound")
    nv = ring.num_vars
    gens = []
    prev: set = set()
    for d in range(D + 1):
        mons = _exponents_of_degree(nv, d)  # lex descending
        if not 0 <= h[d] <= len(mons):
            raise InadmissibleError(f"h({d}) = {h[d]} outside [0, {len(mons)}]")
        L = set(mons[: h[d]])
        grown = s1_times(prev, nv)
        if not grown <= L:
            raise InadmissibleError(
                f"h is not admissible: S_1 L_{d - 1} has {len(grown)} monomials but h({d}) = {h[d]}"
            )
        gens.extend(L - grown)
        prev = L
    return MonomialIdeal(ring, gens)


def check_admissible(ring: RingContext, h: Sequence[int]) -> MonomialIdeal:
    return lex_segment(ring, h)


def default_degree_bound(ring: RingContext, h: Sequence[int], p: Optional[Sequence] = None) -> int:
    """(max generator degree of the lex-segment ideal) + 1."""
    h = list(h)
    if p is not None:
        reach = max(len(h) - 1, gotzmann_bound(p) if poly_trim(p) else 0) + 2
        h = extend_hilbert(ring, h, p, reach)
        return lex_segment(ring, h).max_degree() + 1
    return min(lex_segment(ring, h).max_degree() + 1, len(h) - 1)


# ---------- regularity and the Gotzmann number ----------

def regularity(I) -> int:
    """Regularity: max generator degree for strongly stable ideals, else via gin."""
    if isinstance(I, MonomialIdeal):
        ok, witness = is_strongly_stable(I)
        if not ok:
            raise ValueError(
                f"monomial ideal is not strongly stable (missing {I.ring.format_monomial(witness)}); "
                "compute the regularity of its generic initial ideal instead"
            )
        return I.max_degree()
    from .geometry import gin

    res = gin(I, GREVLEX)
    if not res.agreed:
        raise RuntimeError("generic initial ideal did not stabilize; retry with another seed")
    return res.ideal.max_degree()


def gotzmann_representation(p: Sequence, max_terms: int = 10_000) -> List[int]:
    """Exponents a_1 >= ... >= a_s with p(d) = sum_i C(d + a_i - i + 1, a_i)."""
    rem = poly_trim(p)
    out: List[int] = []
    i = 0
    while rem:
        a = len(rem) - 1
        if rem[-1] <= 0:
            raise InadmissibleError(f"{format_poly(p)} is not an admissible Hilbert polynomial")
        if out and a > out[-1]:
            raise InadmissibleError(f"{format_poly(p)} is not an admissible Hilbert polynomial")
        out.append(a)
        rem = poly_sub(rem, binomial_poly(a - i, a))
        i += 1
        if i > max_terms:
            raise InadmissibleError("Gotzmann expansion does not terminate")
    return out


def gotzmann_bound(p: Sequence) -> int:
    """Number of terms in the Gotzmann expansion of p."""
    return len(gotzmann_representation(p))
