"""
Recursive-descent parser for generator expressions.

Grammar (whitespace-insensitive)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := [rational] gen* ['w']          -- at least one gen or the 'w'
    gen     := 'L(' int ')' | 'G(' halfint ')' | 'C'
    rational:= INT ['/' INT]
    halfint := ['-'] INT ['/2']

A trailing ``w`` marks a term as a module vector: the word applied to w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Generator, LieElement, Sector, format_terms
from .module_action import ModuleVector, WhittakerData, act_word


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    word: tuple[Generator, ...]
    has_w: bool

    def label(self) -> str:
        return "".join(str(g) for g in self.word) + ("w" if self.has_w else "")


@dataclass(frozen=True)
class Expression:
    sector: Sector
    terms: tuple[Term, ...]

    @property
    def is_vector(self) -> bool:
        return all(t.has_w for t in self.terms)

    def __str__(self) -> str:
        return format_terms([(t.coeff, t.label()) for t in self.terms])


class _Parser:
    def __init__(self, text: str, sector: Sector):
        self.text = text
        self.sector = sector
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def signed_integer(self) -> int:
        if self.peek() == "-":
            self.pos += 1
            return -self.integer()
        return self.integer()

    def rational(self) -> Fraction:
        start = self.pos
        p = self.integer()
        if self.peek() == "/":
            self.pos += 1
            q = self.integer()
            if q == 0:
                self.error("zero denominator", start)
            return Fraction(p, q)
        return Fraction(p)

    def gen(self) -> Generator:
        self.skip()
        start = self.pos
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "C":
            return Generator("C", 0, self.sector)
        self.expect("(")
        num = self.signed_integer()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den = self.integer()
            if den != 2:
                self.error("index denominator must be 2")
        self.expect(")")
        d = 2 * num if den == 1 else num
        if ch == "L" and den != 1:
            self.error("L index must be an integer", start)
        if ch == "G" and d % 2 != self.sector.eps2:
            want = "a half-integer" if self.sector is Sector.NS else "an integer"
            self.error(f"G index must be {want} in the {self.sector} sector", start)
        return Generator(ch, d, self.sector)

    def term(self, sign: int) -> Term:
        start = self.pos
        coeff = Fraction(1)
        if self.peek().isdigit():
            coeff = self.rational()
        word = []
        while self.peek() in ("L", "G", "C"):
            word.append(self.gen())
        has_w = False
        if self.peek() == "w":
            self.pos += 1
            has_w = True
        if not word and not has_w:
            self.error("expected a generator or 'w'", start)
        return Term(sign * coeff, tuple(word), has_w)

    def expr(self) -> Expression:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        terms = [self.term(sign)]
        while self.peek() in ("+", "-"):
            sign = 1 if self.peek() == "+" else -1
            self.pos += 1
            terms.append(self.term(sign))
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return Expression(self.sector, tuple(terms))


def parse(text: str, sector: Sector) -> Expression:
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    return _Parser(text, sector).expr()


def to_lie(expr: Expression) -> LieElement:
    """Read a sum of single generators as a LieElement."""
    out = LieElement()
    for t in expr.terms:
        if t.has_w or len(t.word) != 1:
            raise ValueError(f"term {t.label()!r} is not a single generator")
        out = out + LieElement.of(t.word[0], t.coeff)
    return out


def to_vector(expr: Expression, W: WhittakerData) -> ModuleVector:
    """Evaluate every term ``q x_1...x_k w`` in W."""
    out = ModuleVector.zero(W.sector)
    w = ModuleVector.w(W.sector)
    for t in expr.terms:
        if not t.has_w:
            raise ValueError(f"term {t.label()!r} does not end in w")
        out = out + t.coeff * act_word(t.word, w, W)
    return out
