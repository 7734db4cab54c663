"""Graded polynomial ring with exact rational coefficients.

Monomials are plain exponent tuples ``(u_0, ..., u_n)``.  Variables are
ordered ``x_0 > x_1 > ... > x_n`` in every monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, gcd
from operator import add
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]

DEFAULT_MAX_DEGREE = 16


@dataclass(frozen=True)
class RingContext:
    """The ring K[x_0, ..., x_n] with named variables."""

    variable_names: Tuple[str, ...] = ("x", "y", "z", "t")
    max_degree: int = DEFAULT_MAX_DEGREE

    def __post_init__(self):
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @property
    def num_vars(self) -> int:
        return len(self.variable_names)

    @property
    def n(self) -> int:
        """Projective dimension: the ring has n + 1 variables."""
        return len(self.variable_names) - 1

    def var(self, i: int) -> "Polynomial":
        u = [0] * self.num_vars
        u[i] = 1
        return Polynomial(self, {tuple(u): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.num_vars))

    def dim(self, d: int) -> int:
        """dim_K S_d."""
        if d < 0:
            return 0
        return comb(self.n + d, self.n)

    def monomial(self, *exps: int) -> Monomial:
        if len(exps) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} exponents, got {len(exps)}")
        return tuple(exps)

    def format_monomial(self, u: Monomial) -> str:
        parts = []
        for name, e in zip(self.variable_names, u):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def mdeg(u: Monomial) -> int:
    return sum(u)


def mmul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mdiv(u: Monomial, v: Monomial) -> Monomial:
    """u / v, assuming v divides u."""
    return tuple(a - b for a, b in zip(u, v))


def divides(v: Monomial, u: Monomial) -> bool:
    return all(b <= a for a, b in zip(u, v))


def mlcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def mgcd(u: Monomial, v: Monomial) -> Monomial:
    return tuple(min(a, b) for a, b in zip(u, v))


# ---------- monomial orders ----------

def _lex_key(u):
    return u


def _grevlex_key(u):
    return (sum(u),) + tuple(-e for e in reversed(u))


@dataclass(frozen=True)
class MonomialOrder:
    """lex, grevlex, or a weight order refined by a tie-break order."""

    kind: str = "grevlex"
    weight: Optional[Tuple[int, ...]] = None
    tie_break: Optional["MonomialOrder"] = None
    _key: Callable = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == "lex":
            key = _lex_key
        elif self.kind == "grevlex":
            key = _grevlex_key
        elif self.kind == "weight":
            if self.weight is None:
                raise ValueError("weight order needs a weight vector")
            w = tuple(int(a) for a in self.weight)
            object.__setattr__(self, "weight", w)
            tb = self.tie_break if self.tie_break is not None else GREVLEX
            if tb.kind == "weight":
                raise ValueError("tie-break must be lex or grevlex")
            object.__setattr__(self, "tie_break", tb)
            tb_key = tb.key

            def key(u, w=w, tb_key=tb_key):
                return (sum(a * b for a, b in zip(w, u)), tb_key(u))
        else:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "_key", key)

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        """Sort key: larger key means larger monomial."""
        return self._key

    def __str__(self):
        if self.kind == "weight":
            return "weight:" + ",".join(map(str, self.weight)) + f"/{self.tie_break.kind}"
        return self.kind

    @classmethod
    def parse(cls, spec: str) -> "MonomialOrder":
        """Parse ``lex``, ``grevlex`` or ``weight:w0,w1,...[/lex|/grevlex]``."""
        spec = spec.strip()
        if spec in ("lex", "grevlex"):
            return cls(spec)
        if spec.startswith("weight:"):
            body = spec[len("weight:"):]
            tie = GREVLEX
            if "/" in body:
                body, tb = body.split("/", 1)
                tie = cls(tb.strip())
            try:
                w = tuple(int(a) for a in body.split(","))
            except ValueError:
                raise ValueError(f"bad weight vector in {spec!r}") from None
            return cls("weight", w, tie)
        raise ValueError(f"unknown monomial order {spec!r}")


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def weight_order(w: Sequence[int], tie_break: MonomialOrder = GREVLEX) -> MonomialOrder:
    return MonomialOrder("weight", tuple(w), tie_break)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as a is less than, equal to or greater than b."""
    if len(a) != len(b):
        raise ValueError("monomials live in rings with different numbers of variables")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


@lru_cache(maxsize=None)
def _exponents_of_degree(nvars: int, d: int) -> Tuple[Monomial, ...]:
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        u = [0] * nvars
        for i in combo:
            u[i] += 1
        out.append(tuple(u))
    out.sort(reverse=True)  # lex descending
    return tuple(out)


def monomials_of_degree(ctx: RingContext, d: int, order: MonomialOrder = LEX) -> list:
    """All C(n+d, n) monomials of degree d, sorted descending under ``order``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d > ctx.max_degree:
        raise ValueError(f"degree {d} exceeds the ring's cap {ctx.max_degree}")
    mons = _exponents_of_degree(ctx.num_vars, d)
    if order.kind == "lex":
        return list(mons)
    return sorted(mons, key=order.key, reverse=True)


# ---------- polynomials ----------

def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, object] = None):
        self.ring = ring
        clean = {}
        nv = ring.num_vars
        for u, c in (terms or {}).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            u = tuple(u)
            if len(u) != nv:
                raise ValueError(f"exponent vector {u} does not fit {nv} variables")
            if any(e < 0 for e in u):
                raise ValueError(f"negative exponent in {u}")
            if sum(u) > ring.max_degree:
                raise ValueError(f"degree {sum(u)} exceeds the ring's cap {ring.max_degree}")
            clean[u] = clean.get(u, 0) + c
            if clean[u] == 0:
                del clean[u]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, ring: RingContext, u: Monomial, c=1) -> "Polynomial":
        return cls(ring, {tuple(u): c})

    @classmethod
    def constant(cls, ring: RingContext, c) -> "Polynomial":
        return cls(ring, {(0,) * ring.num_vars: c})

    @property
    def terms(self) -> dict:
        """Read-only view intent: do not mutate."""
        return self._terms

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list:
        """[(coefficient, monomial), ...] sorted descending under ``order``."""
        key = order.key
        return [(self._terms[u], u) for u in sorted(self._terms, key=key, reverse=True)]

    def monomials(self) -> list:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(u) for u in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(u) for u in self._terms}
        return len(degs) <= 1

    @property
    def homogeneous_degree(self) -> Optional[int]:
        degs = {sum(u) for u in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def coefficient(self, u: Monomial) -> Fraction:
        return self._terms.get(tuple(u), Fraction(0))

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial.constant(self.ring, other)
        if other.ring != self.ring:
            raise ValueError("polynomials over different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for u, c in other._terms.items():
            out[u] = out.get(u, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {u: -c for u, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = mmul(u, v)
                out[w] = out.get(w, 0) + a * b
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Polynomial.constant(self.ring, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        return Polynomial(self.ring, {u: c * a for u, a in self._terms.items()})

    def shift(self, u: Monomial, c=1) -> "Polynomial":
        """Multiply by the term c * x^u."""
        c = _as_fraction(c)
        return Polynomial(self.ring, {mmul(v, u): c * a for v, a in self._terms.items()})

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Integer coefficients with content 1 and positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {u: int(c * den) for u, c in self._terms.items()}
        g = 0
        for c in ints.values():
            g = gcd(g, c)
        if ints[self.leading_monomial(order)] < 0:
            g = -g
        return Polynomial(self.ring, {u: Fraction(c // g) for u, c in ints.items()})

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace x_i by images[i]."""
        if len(images) != self.ring.num_vars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        # work with integer images and one global denominator
        dens = [_lcm_denominators(img._terms.values()) for img in images]
        int_imgs = [{u: int(c * d) for u, c in img._terms.items()} for img, d in zip(images, dens)]
        scalars = {}
        for u, c in self._terms.items():
            s = c
            for e, d in zip(u, dens):
                if e:
                    s /= d ** e
            scalars[u] = s
        M = _lcm_denominators(scalars.values())
        powers = {}
        one = {(0,) * target.num_vars: 1}
        out: dict = {}
        for u, s in scalars.items():
            term = one
            for i, e in enumerate(u):
                if e:
                    pw = powers.get((i, e))
                    if pw is None:
                        pw = powers[(i, e)] = _int_pow(int_imgs[i], e, one)
                    term = _int_mul(term, pw)
            k = int(s * M)
            for w, a in term.items():
                out[w] = out.get(w, 0) + k * a
        return Polynomial(target, {w: Fraction(a, M) for w, a in out.items() if a})

    # comparison and display
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def format(self, order: MonomialOrder = GREVLEX) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, (c, u) in enumerate(self.sorted_terms(order)):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mon = self.ring.format_monomial(u)
            if mon == "1":
                body = str(a)
            elif a == 1:
                body = mon
            else:
                body = f"{a}*{mon}"
            if i == 0:
                pieces.append(("-" if sign == "-" else "") + body)
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r})"


def _lcm_denominators(coeffs) -> int:
    m = 1
    for c in coeffs:
        d = Fraction(c).denominator
        m = m * d // gcd(m, d)
    return m


def _int_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            w = tuple(map(add, u, v))
            out[w] = out.get(w, 0) + x * y
    return {w: c for w, c in out.items() if c}


def _int_pow(a: dict, k: int, one: dict) -> dict:
    out, base = one, a
    while k:
        if k & 1:
            out = _int_mul(out, base)
        k >>= 1
        if k:
            base = _int_mul(base, base)
    return out


def poly_arith(p: Polynomial, q, op: str) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (q a rational scalar)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def iter_monomials_upto(nvars: int, dmax: int) -> Iterator[Monomial]:
    for d in range(dmax + 1):
        yield from _exponents_of_degree(nvars, d)


def linear_form(ctx: RingContext, coeffs: Iterable) -> Polynomial:
    terms = {}
    for i, c in enumerate(coeffs):
        u = [0] * ctx.num_vars
        u[i] = 1
        terms[tuple(u)] = c
    return Polynomial(ctx, terms)
