"""Text format for rings and ideals.

A document looks like::

    # comment
    ring x y z t
    order grevlex          (optional)
    ideal x^2, x*y - x*t,
          y^4

Expressions allow rational coefficients, ``+ - * ^``, parentheses and
implicit multiplication (``3xz^2`` or ``y^3t``) whenever a run of letters
splits uniquely into declared variable names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .groebner import GradedIdeal
from .monomial import MonomialIdeal
from .ring import GREVLEX, MonomialOrder, Polynomial, RingContext


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        loc = f"line {line}, column {column}: " if line else ""
        super().__init__(loc + message)


@dataclass
class IdealDocument:
    ring: RingContext
    generators: List[Polynomial]
    order: Optional[MonomialOrder] = None

    @property
    def ideal(self) -> GradedIdeal:
        return GradedIdeal(self.ring, self.generators)

    def monomial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_polynomials(self.ring, self.generators)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _ExprParser:
    def __init__(self, ring: RingContext, text: str, line: int, col0: int):
        self.ring = ring
        self.line = line
        self.col0 = col0
        self.tokens: List[Tuple[str, str, int]] = []
        self._lex(text)
        self.pos = 0

    def _lex(self, text):
        names = sorted(self.ring.variable_names, key=len, reverse=True)
        i = 0
        while i < len(text):
            m = _TOKEN.match(text, i)
            if m is None or m.end() == i:
                break
            num, ident, sym = m.groups()
            start = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", num, start))
            elif ident is not None:
                for part, off in self._split_ident(ident, names, start):
                    if part.isdigit():
                        self.tokens.append(("num", part, start + off))
                    else:
                        self.tokens.append(("var", part, start + off))
            else:
                self.tokens.append(("sym", sym, start))
            i = m.end()

    def _split_ident(self, ident, names, start):
        if ident in self.ring.variable_names:
            return [(ident, 0)]
        out = []
        k = 0
        while k < len(ident):
            if ident[k].isdigit():
                j = k
                while j < len(ident) and ident[j].isdigit():
                    j += 1
                out.append((ident[k:j], k))
                k = j
                continue
            for name in names:
                if ident.startswith(name, k):
                    out.append((name, k))
                    k += len(name)
                    break
            else:
                raise self.error(f"unknown variable in {ident!r}", start + k)
        return out

    def error(self, msg, offset):
        return ParseError(msg, self.line, self.col0 + offset + 1)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression", self.line, self.col0 + 1)
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        tok = self.peek()
        sign = 1
        if tok and tok[0] == "sym" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term().scale(sign)
        while True:
            tok = self.peek()
            if tok and tok[0] == "sym" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.power()
        while True:
            tok = self.peek()
            if tok is None:
                return p
            if tok[0] == "sym" and tok[1] == "*":
                self.take()
                p = p * self.power()
            elif tok[0] in ("num", "var") or tok[1] == "(":
                p = p * self.power()  # implicit multiplication
            else:
                return p

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "sym" and tok[1] == "^":
            self.take()
            e = self.take()
            if e is None or e[0] != "num":
                raise self.error("expected an integer exponent", tok[2] + 1)
            return base ** int(e[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of expression", self.line, self.col0 + 1)
        kind, val, off = tok
        if kind == "num":
            c = Fraction(int(val))
            nxt = self.peek()
            if nxt and nxt[0] == "sym" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den is None or den[0] != "num":
                    raise self.error("expected a denominator", nxt[2] + 1)
                if int(den[1]) == 0:
                    raise self.error("division by zero", den[2])
                c /= int(den[1])
            return Polynomial.constant(self.ring, c)
        if kind == "var":
            return self.ring.var(self.ring.variable_names.index(val))
        if val == "(":
            p = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                raise self.error("missing ')'", off)
            return p
        raise self.error(f"unexpected {val!r}", off)


def parse_polynomial(ring: RingContext, text: str, line: int = 0, col0: int = 0) -> Polynomial:
    return _ExprParser(ring, text, line, col0).parse()


def _split_top_level(text: str) -> List[Tuple[str, int]]:
    out = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def parse_generators(ring: RingContext, text: str, line: int = 0, col0: int = 0, homogeneous: bool = True) -> List[Polynomial]:
    gens = []
    for piece, off in _split_top_level(text):
        if not piece.strip():
            raise ParseError("empty generator", line, col0 + off + 1)
        lead = len(piece) - len(piece.lstrip())
        p = parse_polynomial(ring, piece, line, col0 + off)
        if homogeneous and not p.is_homogeneous():
            raise ParseError(f"generator {piece.strip()!r} is not homogeneous", line, col0 + off + lead + 1)
        gens.append(p)
    return gens


def parse_ideal_document(text: str, default_ring: Optional[RingContext] = None) -> IdealDocument:
    ring = default_ring
    order = None
    ideal_chunks: List[Tuple[str, int, int]] = []
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip())
        word = stripped.split(None, 1)[0]
        rest = stripped[len(word):]
        if word == "ring":
            if ideal_chunks:
                raise ParseError("ring declared after the ideal", lineno, col + 1)
            names = rest.replace(",", " ").split()
            if not names:
                raise ParseError("ring needs variable names", lineno, col + 1)
            for k, name in enumerate(names):
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                    raise ParseError(f"bad variable name {name!r}", lineno, col + 1)
            try:
                ring = RingContext(tuple(names))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + 1) from None
            in_ideal = False
        elif word == "order":
            try:
                order = MonomialOrder.parse(rest.strip())
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col + 1) from None
            in_ideal = False
        elif word == "ideal":
            in_ideal = True
            ideal_chunks.append((rest, lineno, col + len(word)))
        elif in_ideal:
            ideal_chunks.append((line, lineno, 0))
        else:
            raise ParseError(f"expected 'ring', 'order' or 'ideal', found {word!r}", lineno, col + 1)
    if ring is None:
        ring = RingContext()
    if not ideal_chunks:
        raise ParseError("no ideal given", 1, 1)
    # glue continuation lines, remembering where each character came from
    body, where = "", []
    for chunk, lineno, col in ideal_chunks:
        body += chunk + " "
        where.extend((lineno, col + k) for k in range(len(chunk) + 1))
    pieces = _split_top_level(body)
    gens: List[Polynomial] = []
    for k, (piece, off) in enumerate(pieces):
        if not piece.strip():
            if k == len(pieces) - 1 and k > 0:
                continue  # tolerate a trailing comma
            lineno, col = where[min(off, len(where) - 1)]
            raise ParseError("empty generator", lineno, col + 1)
        lead = off + len(piece) - len(piece.lstrip())
        lineno, col = where[lead]
        text = piece.strip()
        try:
            p = parse_polynomial(ring, text)
        except ParseError as exc:
            # map the offset inside the stripped piece back to the document
            pos = min(lead + max(exc.column - 1, 0), len(where) - 1)
            raise ParseError(exc.message, *_one_based(where[pos])) from None
        if not p.is_homogeneous():
            raise ParseError(f"generator {text!r} is not homogeneous", lineno, col + 1)
        if not p.is_zero():
            gens.append(p)
    if not gens:
        raise ParseError("ideal has no nonzero generators", ideal_chunks[0][1], 1)
    return IdealDocument(ring, gens, order)


def _one_based(pos):
    return pos[0], pos[1] + 1


def canonical_generators(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> List[Polynomial]:
    """Integer-primitive generators, by ascending degree then descending leading monomial."""
    prim = [g.primitive(order) for g in gens if not g.is_zero()]
    key = order.key
    return sorted(prim, key=lambda g: (g.degree(), tuple(-e for e in key(g.leading_monomial(order)))))


def format_ideal(I, order: MonomialOrder = GREVLEX) -> List[str]:
    if isinstance(I, MonomialIdeal):
        return I.generator_strings()
    return [g.format(GREVLEX) for g in canonical_generators(I.generators)]


def format_document(I) -> str:
    ring = I.ring
    gens = format_ideal(I)
    return "ring " + " ".join(ring.variable_names) + "\nideal " + ",\n      ".join(gens) + "\n"
