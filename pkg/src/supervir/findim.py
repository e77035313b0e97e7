"""
The (1|1)-dimensional SVir_eps^+ modules A_eps(psi) = C w + C u.

Only x w = psi(x) w (x in p_eps) and G_{1-eps} w = u are given; the action on
u is derived from the bracket, so the table cannot drift from the algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .algebra import Generator, LieElement, Sector, bracket
from .module_action import WhittakerData, in_p, psi_value

Matrix = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
ZERO = Fraction(0)

SPAN_W = "span{w}"
SPAN_U = "span{u}"


def positive_generators(sector: Sector, index_bound: int) -> list[Generator]:
    """Generators of SVir_eps^+ (L_n, n >= 1; G_r, r > 0) with index <= index_bound."""
    gens = []
    for d in range(1, 2 * index_bound + 1):
        if d % 2 == 0:
            gens.append(Generator("L", d, sector))
        if d % 2 == sector.eps2:
            gens.append(Generator("G", d, sector))
    return gens


def _mat(ww, uw, wu, uu) -> Matrix:
    """Columns are images: x w = ww w + uw u, x u = wu w + uu u."""
    return ((Fraction(ww), Fraction(wu)), (Fraction(uw), Fraction(uu)))


@dataclass
class TwoDimModule:
    sector: Sector
    psi: WhittakerData
    action: dict[Generator, Matrix] = field(default_factory=dict)

    @property
    def creator(self) -> Generator:
        """G_{1-eps}, the generator sending w to u."""
        return Generator("G", 2 - self.sector.eps2, self.sector)

    def derived(self, g: Generator) -> Matrix:
        if g.kind == "C" or g.d <= 0:
            raise ValueError(f"{g} is not in SVir^+")
        if g == self.creator:
            # G u = G G w = [G, G] w / 2
            return _mat(0, 1, _on_w(bracket(g, g) * Fraction(1, 2), self.psi), 0)
        x = psi_value(self.psi, g)
        assert x is not None and in_p(g)
        # x u = [x, G] w + (-1)^{|x|} G (x w); the bracket lies in p_eps
        wu = _on_w(bracket(g, self.creator), self.psi)
        sign = -1 if g.is_odd else 1
        return _mat(x, 0, wu, sign * x)

    def matrix(self, g: Generator) -> Matrix:
        m = self.action.get(g)
        if m is None:
            m = self.derived(g)
        return m

    def apply(self, g: Generator, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        m = self.matrix(g)
        return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])

    def apply_lie(self, x: LieElement, v):
        out = (ZERO, ZERO)
        for g, q in x.terms.items():
            if g.kind == "C":
                continue  # C acts by 0 on SVir^+ modules
            y = self.apply(g, v)
            out = (out[0] + q * y[0], out[1] + q * y[1])
        return out


def _on_w(x: LieElement, psi: WhittakerData) -> Fraction:
    """Scalar by which an element of p_eps acts on w."""
    total = ZERO
    for g, q in x.terms.items():
        if g.kind == "C":
            continue
        val = psi_value(psi, g)
        if val is None:
            raise ValueError(f"{g} is outside p_eps")
        total += q * val
    return total


def build_A(sector: Sector, psi: WhittakerData, index_bound: int = 8) -> TwoDimModule:
    if psi.sector is not sector:
        raise ValueError("sector mismatch")
    M = TwoDimModule(sector, psi)
    for g in positive_generators(sector, index_bound):
        M.action[g] = M.derived(g)
    return M


@dataclass(frozen=True)
class Counterexample:
    x: Generator
    y: Generator
    vector: str
    lhs: tuple[Fraction, Fraction]
    rhs: tuple[Fraction, Fraction]


def verify_axioms(M: TwoDimModule, index_bound: int = 8) -> Union[bool, Counterexample]:
    """x(yv) - (-1)^{|x||y|} y(xv) == [x, y] v on w and u; True or the first failure."""
    if index_bound < 2:
        raise ValueError("index_bound must be at least 2")
    gens = positive_generators(M.sector, index_bound)
    basis = {"w": (Fraction(1), ZERO), "u": (ZERO, Fraction(1))}
    for x in gens:
        for y in gens:
            s = -1 if (x.is_odd and y.is_odd) else 1
            br = bracket(x, y)
            for name, v in basis.items():
                a = M.apply(x, M.apply(y, v))
                b = M.apply(y, M.apply(x, v))
                lhs = (a[0] - s * b[0], a[1] - s * b[1])
                rhs = M.apply_lie(br, v)
                if lhs != rhs:
                    return Counterexample(x, y, name, lhs, rhs)
    return True


def invariant_subspaces(M: TwoDimModule, index_bound: int = 8) -> list[str]:
    """Proper nonzero graded subspaces stable under every generator of index <= index_bound."""
    if index_bound < 2:
        raise ValueError("index_bound must be at least 2")
    gens = positive_generators(M.sector, index_bound)
    found = []
    if all(M.apply(g, (Fraction(1), ZERO))[1] == 0 for g in gens):
        found.append(SPAN_W)
    if all(M.apply(g, (ZERO, Fraction(1)))[0] == 0 for g in gens):
        found.append(SPAN_U)
    return found
