"""Exhaustive and seeded identity checks backing the ``selfcheck`` command."""

from __future__ import annotations

import random
from itertools import product

from .algebra import Generator, LieElement, Sector, bracket, bracket_elements
from .module_action import ModuleVector, WhittakerData, act_generator, act_lie
from .solver import enumerate_truncation


def generators(sector: Sector, dmax: int, with_c: bool = True) -> list[Generator]:
    """Every generator whose doubled index lies in [-dmax, dmax]."""
    gens = []
    for d in range(-dmax, dmax + 1):
        if d % 2 == 0:
            gens.append(Generator("L", d, sector))
        if d % 2 == sector.eps2:
            gens.append(Generator("G", d, sector))
    if with_c:
        gens.append(Generator("C", 0, sector))
    return gens


def _sign(x: Generator, y: Generator) -> int:
    return -1 if (x.is_odd and y.is_odd) else 1


def antisymmetry_failures(sector: Sector, dmax: int = 12) -> list[tuple[Generator, Generator]]:
    gens = generators(sector, dmax)
    return [
        (x, y)
        for x, y in product(gens, repeat=2)
        if bracket(x, y) + bracket(y, x) * _sign(x, y)
    ]


def jacobi_failures(sector: Sector, dmax: int = 12) -> list[tuple[Generator, Generator, Generator]]:
    gens = generators(sector, dmax)
    lie = {g: LieElement.of(g) for g in gens}
    inner = {(y, z): bracket(y, z) for y, z in product(gens, repeat=2)}
    bad = []
    for x, y, z in product(gens, repeat=3):
        total = (
            bracket_elements(lie[x], inner[y, z]) * _sign(x, z)
            + bracket_elements(lie[y], inner[z, x]) * _sign(y, x)
            + bracket_elements(lie[z], inner[x, y]) * _sign(z, y)
        )
        if total:
            bad.append((x, y, z))
    return bad


def leibniz_failures(W: WhittakerData, samples: int, seed: int, dmax: int = 8, fdeg_max: int = 8):
    """x(yv) - (-1)^{|x||y|} y(xv) == [x, y] v on random generators and basis monomials."""
    rng = random.Random(seed)
    gens = generators(W.sector, dmax)
    basis = enumerate_truncation(W.sector, fdeg_max).basis
    bad = []
    for _ in range(samples):
        x, y = rng.choice(gens), rng.choice(gens)
        v = ModuleVector(W.sector, {rng.choice(basis): 1})
        lhs = act_generator(x, act_generator(y, v, W), W) - _sign(x, y) * act_generator(
            y, act_generator(x, v, W), W
        )
        if lhs != act_lie(bracket(x, y), v, W):
            bad.append((x, y, v))
    return bad
