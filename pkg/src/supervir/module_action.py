"""
Whittaker modules W_eps(psi, c) and the straightening action on their PBW basis.

A basis vector is ``L_{-lam} G_{eps-mu} w`` where ``lam`` is a pseudopartition
(non-decreasing parts >= 0) and ``mu`` a strict pseudopartition.  Internally a
monomial is its factor sequence, a tuple of ``(kind, d)`` pairs with kind 0 for
L and 1 for G, written left to right in canonical order: all L factors (index
ascending) followed by all G factors (index strictly ascending).

The creation generators are L_m with m <= 0 and G_r with r <= 1 - eps.  In the
Ramond sector this includes G_1, which is neither in p_0 nor of the form
G_{-k}; it is encoded as the strict part mu_i = -1.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import Generator, LieElement, Sector, bracket, format_terms, half

__all__ = [
    "BasisMonomial",
    "ModuleVector",
    "WhittakerData",
    "Straightener",
    "psi_value",
    "act_generator",
    "act_word",
    "act_lie",
    "whittaker_defect",
    "maxdeg",
    "fdeg",
    "p_generators",
    "is_creation",
    "in_p",
    "mu_floor",
    "kill_bound",
]

Factor = tuple[int, int]
Factors = tuple[Factor, ...]

_KIND = {"L": 0, "G": 1, "C": 2}
_NAME = ("L", "G", "C")


def mu_floor(sector: Sector) -> int:
    """Smallest allowed strict part: G_{eps - mu} must have index <= 1 - eps."""
    return 0 if sector is Sector.NS else -1


def is_creation(g: Generator) -> bool:
    if g.kind == "L":
        return g.d <= 0
    if g.kind == "G":
        return g.d <= 2 - g.sector.eps2
    return False


def in_p(g: Generator) -> bool:
    """Membership in p_eps = span{L_n : n >= 1} + span{G_{n-eps} : n >= 2}."""
    if g.kind == "L":
        return g.d >= 2
    if g.kind == "G":
        return g.d >= 4 - g.sector.eps2
    return False


@dataclass(frozen=True)
class BasisMonomial:
    """The PBW vector L_{-lam} G_{eps-mu} w."""

    sector: Sector
    lam: tuple[int, ...] = ()
    mu: tuple[int, ...] = ()

    def __post_init__(self):
        lam, mu = tuple(self.lam), tuple(self.mu)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)
        if any(k < 0 for k in lam) or any(x > y for x, y in zip(lam, lam[1:])):
            raise ValueError(f"lambda must be non-decreasing and >= 0: {lam}")
        if any(x >= y for x, y in zip(mu, mu[1:])):
            raise ValueError(f"mu must be strictly increasing: {mu}")
        if mu and mu[0] < mu_floor(self.sector):
            raise ValueError(f"mu part {mu[0]} below {mu_floor(self.sector)} in {self.sector}")

    @cached_property
    def factors(self) -> Factors:
        e = self.sector.eps2
        return tuple((0, -2 * k) for k in reversed(self.lam)) + tuple(
            (1, e - 2 * m) for m in reversed(self.mu)
        )

    @classmethod
    def from_factors(cls, factors: Factors, sector: Sector) -> "BasisMonomial":
        return _from_factors(factors, sector)

    @property
    def parity(self) -> int:
        """Parity relative to w."""
        return len(self.mu) % 2

    @property
    def size(self) -> int:
        return sum(self.lam)

    def multiplicity(self, k: int) -> int:
        return self.lam.count(k)

    @property
    def exponents(self) -> tuple[int, ...]:
        """(lam(0), lam(1), ...) up to the largest part."""
        if not self.lam:
            return ()
        return tuple(self.lam.count(k) for k in range(self.lam[-1] + 1))

    @property
    def deg2(self) -> int:
        """Doubled |lam| + |mu - eps|."""
        e = self.sector.eps2
        return 2 * sum(self.lam) + sum(2 * m - e for m in self.mu)

    @property
    def fdeg2(self) -> int:
        """Doubled |lam| + |mu - eps| + lam(0)."""
        return self.deg2 + 2 * self.lam.count(0)

    @property
    def degplus2(self) -> int:
        """Doubled degree counting only factors of positive degree."""
        e = self.sector.eps2
        return 2 * sum(self.lam) + sum(max(0, 2 * m - e) for m in self.mu)

    @property
    def weight2(self) -> int:
        return -self.deg2

    def sort_key(self):
        return (self.fdeg2, self.deg2, self.exponents, self.mu)

    def __lt__(self, other: "BasisMonomial"):
        return self.sort_key() < other.sort_key()

    def generators(self) -> list[Generator]:
        return [Generator(_NAME[k], d, self.sector) for k, d in self.factors]

    def __str__(self) -> str:
        return "".join(str(g) for g in self.generators()) + "w"

    def math_str(self) -> str:
        return "".join(g.math_str() for g in self.generators()) + "w"

    def __repr__(self) -> str:
        return f"BasisMonomial({self})"


@lru_cache(maxsize=None)
def _from_factors(factors: Factors, sector: Sector) -> BasisMonomial:
    e = sector.eps2
    lam = sorted(-d // 2 for k, d in factors if k == 0)
    mu = sorted((e - d) // 2 for k, d in factors if k == 1)
    mono = BasisMonomial(sector, tuple(lam), tuple(mu))
    if mono.factors != factors:
        raise ValueError(f"factor sequence {factors} is not in canonical order")
    return mono


class ModuleVector:
    """Sparse exact combination of basis monomials of one sector."""

    __slots__ = ("sector", "terms")

    def __init__(self, sector: Sector, terms: Mapping[BasisMonomial, Fraction] | Iterable = ()):
        self.sector = sector
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[BasisMonomial, Fraction] = {}
        for m, x in items:
            if m.sector is not sector:
                raise ValueError("monomial sector differs from vector sector")
            x = Fraction(x)
            if x:
                y = clean.get(m, 0) + x
                if y:
                    clean[m] = y
                else:
                    del clean[m]
        self.terms = clean

    @classmethod
    def w(cls, sector: Sector, coeff=1) -> "ModuleVector":
        return cls(sector, {BasisMonomial(sector): Fraction(coeff)})

    @classmethod
    def monomial(cls, sector: Sector, lam=(), mu=(), coeff=1) -> "ModuleVector":
        return cls(sector, {BasisMonomial(sector, tuple(lam), tuple(mu)): Fraction(coeff)})

    @classmethod
    def zero(cls, sector: Sector) -> "ModuleVector":
        return cls(sector)

    @classmethod
    def _from_codes(cls, sector: Sector, codes: Mapping[Factors, Fraction]) -> "ModuleVector":
        v = cls(sector)
        v.terms = {_from_factors(f, sector): x for f, x in codes.items() if x}
        return v

    def _codes(self) -> dict[Factors, Fraction]:
        return {m.factors: x for m, x in self.terms.items()}

    def __iter__(self) -> Iterator[tuple[BasisMonomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].sort_key()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, m: BasisMonomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def coefficient_of_w(self) -> Fraction:
        return self[BasisMonomial(self.sector)]

    def __eq__(self, other):
        if isinstance(other, ModuleVector):
            return self.sector is other.sector and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.sector, frozenset(self.terms.items())))

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if other.sector is not self.sector:
            raise ValueError("sector mismatch")
        out = dict(self.terms)
        for m, x in other.terms.items():
            out[m] = out.get(m, 0) + x
        return ModuleVector(self.sector, out)

    def __neg__(self):
        return ModuleVector(self.sector, {m: -x for m, x in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = Fraction(k)
        return ModuleVector(self.sector, {m: k * x for m, x in self.terms.items()})

    __rmul__ = __mul__

    @property
    def parity(self) -> int | None:
        """Parity relative to w, or None for zero / inhomogeneous vectors."""
        ps = {m.parity for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def __str__(self) -> str:
        return format_terms([(x, str(m)) for m, x in self])

    def math_str(self) -> str:
        return format_terms([(x, m.math_str()) for m, x in self])

    def __repr__(self) -> str:
        return f"ModuleVector({self.sector}: {self})"


@dataclass(frozen=True)
class WhittakerData:
    """(sector, psi(L_1) = a, psi(L_2) = b, central charge c).

    ``w_parity`` = 1 relabels w as odd, i.e. the parity-changed module.
    """

    sector: Sector
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    w_parity: int = field(default=0, compare=True)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.w_parity not in (0, 1):
            raise ValueError("w_parity must be 0 or 1")

    @property
    def is_trivial(self) -> bool:
        return self.a == 0 and self.b == 0

    def parity_changed(self) -> "WhittakerData":
        return WhittakerData(self.sector, self.a, self.b, self.c, 1 - self.w_parity)

    def absolute_parity(self, v: ModuleVector) -> int | None:
        p = v.parity
        return None if p is None else (p + self.w_parity) % 2


def psi_value(W: WhittakerData, g: Generator) -> Fraction | None:
    """psi(g) on p_eps, c on C, None outside the domain."""
    if g.kind == "C":
        return W.c
    if not in_p(g):
        return None
    if g.kind == "L":
        return {2: W.a, 4: W.b}.get(g.d, Fraction(0))
    return Fraction(0)


@lru_cache(maxsize=None)
def _bracket_codes(x: Factor, y: Factor, sector: Sector) -> tuple[tuple[Factor, Fraction], ...]:
    gx = Generator(_NAME[x[0]], x[1], sector)
    gy = Generator(_NAME[y[0]], y[1], sector)
    return tuple((( _KIND[g.kind], g.d), q) for g, q in bracket(gx, gy).terms.items())


class Straightener:
    """Memoized action of generators on PBW monomials of one W_eps(psi, c).

    ``act(g, m)`` returns a fresh-or-shared read-only dict ``{factors: coeff}``;
    callers never mutate returned dicts.
    """

    def __init__(self, W: WhittakerData):
        self.W = W
        self.sector = W.sector
        self.eps2 = W.sector.eps2
        self._memo: dict[tuple[Factor, Factors], dict[Factors, Fraction]] = {}
        self._psi = {(0, 2): W.a, (0, 4): W.b}

    def creation(self, g: Factor) -> bool:
        k, d = g
        return d <= 0 if k == 0 else (k == 1 and d <= 2 - self.eps2)

    def psi(self, g: Factor) -> Fraction:
        return self._psi.get(g, Fraction(0))

    def act(self, g: Factor, m: Factors) -> dict[Factors, Fraction]:
        key = (g, m)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._act(g, m)
        self._memo[key] = res
        return res

    def _act(self, g: Factor, m: Factors) -> dict[Factors, Fraction]:
        if g[0] == 2:
            c = self.W.c
            return {m: c} if c else {}
        if not m:
            if self.creation(g):
                return {(g,): Fraction(1)}
            x = self.psi(g)
            return {(): x} if x else {}
        f = m[0]
        if self.creation(g):
            if g < f or (g == f and g[0] == 0):
                return {(g,) + m: Fraction(1)}
            if g == f:
                # odd square: G_r G_r = [G_r, G_r] / 2
                return self._act_bracket(g, g, m[1:], Fraction(1, 2))
        rest = m[1:]
        out: dict[Factors, Fraction] = defaultdict(Fraction)
        sign = -1 if (g[0] == 1 and f[0] == 1) else 1
        for m2, x in self.act(g, rest).items():
            for m3, y in self.act(f, m2).items():
                out[m3] += sign * x * y
        for m3, y in self._act_bracket(g, f, rest, Fraction(1)).items():
            out[m3] += y
        return {k: v for k, v in out.items() if v}

    def _act_bracket(self, g: Factor, f: Factor, m: Factors, scale: Fraction) -> dict[Factors, Fraction]:
        out: dict[Factors, Fraction] = defaultdict(Fraction)
        for h, z in _bracket_codes(g, f, self.sector):
            for m3, y in self.act(h, m).items():
                out[m3] += scale * z * y
        return {k: v for k, v in out.items() if v}

    def act_vector(self, g: Factor, v: Mapping[Factors, Fraction]) -> dict[Factors, Fraction]:
        out: dict[Factors, Fraction] = defaultdict(Fraction)
        for m, x in v.items():
            for m2, y in self.act(g, m).items():
                out[m2] += x * y
        return {k: val for k, val in out.items() if val}

    def shifted(self, g: Factor, v: Mapping[Factors, Fraction]) -> dict[Factors, Fraction]:
        """(g - psi(g)) v for g in p_eps."""
        out = dict(self.act_vector(g, v))
        x = self.psi(g)
        if x:
            for m, y in v.items():
                z = out.get(m, 0) - x * y
                if z:
                    out[m] = z
                else:
                    out.pop(m, None)
        return out


@lru_cache(maxsize=64)
def straightener(W: WhittakerData) -> Straightener:
    return Straightener(W)


def _code(g: Generator) -> Factor:
    return (_KIND[g.kind], g.d)


def _check(g: Generator, v: ModuleVector, W: WhittakerData):
    if g.sector is not W.sector or v.sector is not W.sector:
        raise ValueError(f"sector mismatch: {g!r}, vector in {v.sector}, module in {W.sector}")


def act_generator(g: Generator, v: ModuleVector, W: WhittakerData) -> ModuleVector:
    """The action g . v in W_eps(psi, c), expressed in the PBW basis."""
    _check(g, v, W)
    eng = straightener(W)
    return ModuleVector._from_codes(W.sector, eng.act_vector(_code(g), v._codes()))


def act_word(word: Sequence[Generator], v: ModuleVector, W: WhittakerData) -> ModuleVector:
    """Apply ``word`` to ``v``, rightmost factor first."""
    for g in reversed(list(word)):
        v = act_generator(g, v, W)
    return v


def act_lie(x: LieElement, v: ModuleVector, W: WhittakerData) -> ModuleVector:
    out = ModuleVector.zero(W.sector)
    for g, q in x.terms.items():
        out = out + q * act_generator(g, v, W)
    return out


def _require_nonzero(v: ModuleVector):
    if not v:
        raise ValueError("the zero vector has no degree")


def maxdeg(v: ModuleVector) -> int:
    """Doubled maxdeg."""
    _require_nonzero(v)
    return max(m.deg2 for m in v.terms)


def fdeg(v: ModuleVector) -> int:
    """Doubled filtration degree max(|lam| + |mu - eps| + lam(0))."""
    _require_nonzero(v)
    return max(m.fdeg2 for m in v.terms)


def kill_bound(v: ModuleVector) -> int:
    """Largest integer n for which some (E_n - psi(E_n)) may act nontrivially on v.

    Beyond it every L_n and G_r (r > n) of p_eps acts on v by psi.  The bound
    uses the positive-degree part of each monomial: factors G_{1/2} (NS) and
    G_1 (R) carry negative degree but cannot absorb weight from E_n.
    """
    _require_nonzero(v)
    top = max(m.degplus2 for m in v.terms)
    return math.ceil(Fraction(top, 2)) + 2


def p_generators(sector: Sector, n_max: int) -> list[Generator]:
    """L_n (1 <= n <= n_max) and G_r (2 - eps <= r <= n_max), ordered by index."""
    gens = [Generator("L", 2 * n, sector) for n in range(1, n_max + 1)]
    d = 4 - sector.eps2
    while d <= 2 * n_max:
        gens.append(Generator("G", d, sector))
        d += 2
    return sorted(gens, key=lambda g: (g.d, g.kind))


def whittaker_defect(v: ModuleVector, W: WhittakerData) -> list[tuple[Generator, ModuleVector]]:
    """Nonzero values of (E - psi(E)) v over p_eps; empty iff v is a Whittaker vector."""
    _require_nonzero(v)
    if v.sector is not W.sector:
        raise ValueError("sector mismatch")
    eng = straightener(W)
    codes = v._codes()
    out = []
    for g in p_generators(W.sector, kill_bound(v)):
        r = eng.shifted(_code(g), codes)
        if r:
            out.append((g, ModuleVector._from_codes(W.sector, r)))
    return out
