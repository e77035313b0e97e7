"""
The N=1 super-Virasoro algebras SVir_eps.

Generators are L_m (even), G_r (odd) and the central element C.  The
Neveu-Schwarz sector has r in Z + 1/2, the Ramond sector r in Z.  Every index
is stored doubled (``d = 2 * index``) so that all bookkeeping stays in the
integers; coefficients are exact ``Fraction`` values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Sector",
    "Generator",
    "LieElement",
    "L",
    "G",
    "C",
    "parity",
    "weight",
    "bracket",
    "bracket_elements",
    "half",
]


class Sector(enum.Enum):
    NS = "NS"
    R = "R"

    @property
    def eps2(self) -> int:
        """Doubled epsilon: 1 for Neveu-Schwarz, 0 for Ramond."""
        return 1 if self is Sector.NS else 0

    @property
    def eps(self) -> Fraction:
        return Fraction(self.eps2, 2)

    @classmethod
    def parse(cls, text: str) -> "Sector":
        key = text.strip().upper()
        if key in ("NS", "NEVEU-SCHWARZ", "1/2"):
            return cls.NS
        if key in ("R", "RAMOND", "0"):
            return cls.R
        raise ValueError(f"unknown sector {text!r} (expected 'ns' or 'r')")

    def __str__(self) -> str:
        return self.value


def half(d: int) -> str:
    """Render a doubled index as "n" or "n/2"."""
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


@dataclass(frozen=True, order=True)
class Generator:
    """One basis element of SVir_eps: ``kind`` is "L", "G" or "C", ``d`` the doubled index."""

    kind: str
    d: int
    sector: Sector

    def __post_init__(self):
        if self.kind == "L":
            if self.d % 2:
                raise ValueError(f"L index must be an integer, got {half(self.d)}")
        elif self.kind == "G":
            if self.d % 2 != self.sector.eps2:
                want = "Z + 1/2" if self.sector is Sector.NS else "Z"
                raise ValueError(
                    f"G index {half(self.d)} is not in {want} ({self.sector} sector)"
                )
        elif self.kind == "C":
            if self.d != 0:
                raise ValueError("C carries no index")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def index(self) -> Fraction:
        return Fraction(self.d, 2)

    @property
    def is_odd(self) -> bool:
        return self.kind == "G"

    def __str__(self) -> str:
        if self.kind == "C":
            return "C"
        return f"{self.kind}({half(self.d)})"

    def math_str(self) -> str:
        if self.kind == "C":
            return "C"
        return f"{self.kind}_{{{half(self.d)}}}"

    def __repr__(self) -> str:
        return f"<{self} {self.sector}>"


def L(m: int, sector: Sector = Sector.NS) -> Generator:
    return Generator("L", 2 * m, sector)


def G(r, sector: Sector = Sector.NS) -> Generator:
    """G_r; ``r`` may be an int, a Fraction or a string such as "3/2"."""
    r = Fraction(r)
    if r.denominator not in (1, 2):
        raise ValueError(f"G index must be a half-integer, got {r}")
    return Generator("G", int(2 * r), sector)


def C(sector: Sector = Sector.NS) -> Generator:
    return Generator("C", 0, sector)


def parity(g: Generator) -> int:
    """0 for even (L, C), 1 for odd (G)."""
    return 1 if g.kind == "G" else 0


def weight(g: Generator) -> int:
    """Doubled ad(L_0)-weight: [L_0, X] = -weight(X)/2 * X."""
    return g.d


class LieElement:
    """Finite exact linear combination of generators of one sector."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Generator, Fraction] | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        clean: dict[Generator, Fraction] = {}
        for g, x in items:
            x = Fraction(x)
            if x:
                clean[g] = clean.get(g, 0) + x
                if not clean[g]:
                    del clean[g]
        sectors = {g.sector for g in clean}
        if len(sectors) > 1:
            raise ValueError("mixed sectors in a LieElement")
        self.terms = clean

    @classmethod
    def of(cls, g: Generator, coeff=1) -> "LieElement":
        return cls({g: Fraction(coeff)})

    def __iter__(self) -> Iterator[tuple[Generator, Fraction]]:
        return iter(sorted(self.terms.items(), key=_display_key))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, g: Generator) -> Fraction:
        return self.terms.get(g, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for g, x in other.terms.items():
            out[g] = out.get(g, 0) + x
        return LieElement(out)

    def __neg__(self):
        return LieElement({g: -x for g, x in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Fraction(k)
        return LieElement({g: k * x for g, x in self.terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_terms([(x, str(g)) for g, x in self])

    def __repr__(self) -> str:
        return f"LieElement({self})"

    def math_str(self) -> str:
        return format_terms([(x, g.math_str()) for g, x in self])


def _display_key(item):
    g, _ = item
    return ({"L": 0, "G": 1, "C": 2}[g.kind], g.d)


def format_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Render ``[(coeff, label), ...]`` as "4 L(0) + 1/2 C"; the empty sum is "0"."""
    if not terms:
        return "0"
    parts = []
    for i, (x, label) in enumerate(terms):
        sign = "-" if x < 0 else "+"
        x = abs(x)
        body = label if x == 1 else f"{x} {label}"
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def bracket(x: Generator, y: Generator) -> LieElement:
    """The super-bracket [x, y] of two generators."""
    if x.sector is not y.sector:
        raise ValueError(f"sector mismatch: {x!r} vs {y!r}")
    s = x.sector
    if x.kind == "C" or y.kind == "C":
        return LieElement()
    if x.kind == "L" and y.kind == "L":
        m, n = x.d // 2, y.d // 2
        terms = {L(m + n, s): Fraction(m - n)}
        if m == -n:
            terms[C(s)] = Fraction(m**3 - m, 12)
        return LieElement(terms)
    if x.kind == "L" and y.kind == "G":
        # (m/2 - r) G_{m+r} with doubled indices
        return LieElement({Generator("G", x.d + y.d, s): Fraction(x.d - 2 * y.d, 4)})
    if x.kind == "G" and y.kind == "L":
        return -bracket(y, x)
    # [G_r, G_s] = 2 L_{r+s} + 1/3 delta_{r+s,0} (r^2 - 1/4) C
    total = x.d + y.d
    terms = {Generator("L", total, s): Fraction(2)}
    if total == 0:
        terms[C(s)] = Fraction(x.d * x.d - 1, 12)
    return LieElement(terms)


def bracket_elements(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of ``bracket``."""
    out: dict[Generator, Fraction] = {}
    for g, p in x.terms.items():
        for h, q in y.terms.items():
            for k, r in bracket(g, h).terms.items():
                out[k] = out.get(k, 0) + p * q * r
    return LieElement(out)
