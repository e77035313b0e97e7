"""
Finite truncations of W_eps(psi, c): Whittaker vectors and cyclicity probes.

All degrees are doubled integers.  A truncation keeps every basis monomial
whose filtration degree fdeg = |lam| + |mu - eps| + lam(0) is at most the
bound; fixing fdeg (not deg) is what makes the basis finite, since L_0 has
degree zero.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Generator, Sector
from .linalg import SparseEchelon, kernel, rref
from .module_action import (
    BasisMonomial,
    ModuleVector,
    WhittakerData,
    _code,
    act_word,
    kill_bound,
    mu_floor,
    p_generators,
    straightener,
    whittaker_defect,
)

DEFAULT_BUDGET = 4000

CONSISTENT = "consistent-with-simple"
PROPER = "proper-submodule-witness"
INCONCLUSIVE = "inconclusive"


def min_fdeg(sector: Sector) -> int:
    """Smallest doubled fdeg of any basis monomial (G_{1/2} w in NS, G_1 w in R)."""
    return 2 * mu_floor(sector) - sector.eps2


@dataclass(frozen=True)
class Truncation:
    sector: Sector
    fdeg_max: int
    basis: tuple[BasisMonomial, ...]

    def __len__(self):
        return len(self.basis)

    def index(self) -> dict[BasisMonomial, int]:
        return {m: i for i, m in enumerate(self.basis)}


def _strict_parts(sector: Sector, budget: int):
    """Strict pseudopartitions mu with sum(2*mu_i - 2*eps) <= budget, with that sum."""
    e = sector.eps2
    top = (budget - min_fdeg(sector) + e) // 2
    parts = list(range(mu_floor(sector), top + 1))

    def rec(i, chosen, total):
        if total <= budget:
            yield tuple(chosen), total
        for j in range(i, len(parts)):
            cost = 2 * parts[j] - e
            if cost >= 0 and total + cost > budget:
                break
            chosen.append(parts[j])
            yield from rec(j + 1, chosen, total + cost)
            chosen.pop()

    yield from rec(0, [], 0)


def _pseudopartitions(budget: int, smallest: int = 0):
    """Non-decreasing part tuples with sum of 2*max(k, 1) at most ``budget``."""
    yield ()
    k = smallest
    while 2 * max(k, 1) <= budget:
        for rest in _pseudopartitions(budget - 2 * max(k, 1), k):
            yield (k,) + rest
        k += 1


def enumerate_truncation(sector: Sector, fdeg_max: int) -> Truncation:
    """All basis monomials with doubled fdeg <= ``fdeg_max``, sorted by (fdeg, deg, lam, mu)."""
    lo = min_fdeg(sector)
    if fdeg_max < lo:
        raise ValueError(f"fdeg_max {fdeg_max} below the minimum {lo} for {sector}")
    basis = []
    for mu, cost in _strict_parts(sector, fdeg_max):
        for lam in _pseudopartitions(fdeg_max - cost):
            basis.append(BasisMonomial(sector, lam, mu))
    basis = [m for m in basis if m.fdeg2 <= fdeg_max]
    basis.sort(key=BasisMonomial.sort_key)
    return Truncation(sector, fdeg_max, tuple(basis))


@dataclass
class KernelReport:
    truncation: Truncation
    kernel_basis: list[ModuleVector]
    generators_checked: list[Generator]
    n_max: int
    codomain_size: int
    verified: bool

    @property
    def dimension(self) -> int:
        return len(self.kernel_basis)


def kernel_n_max(trunc: Truncation) -> int:
    """Generator cutoff: max over the basis of the sound kill bound, never below ceil(fdeg_max)+2."""
    nominal = math.ceil(Fraction(trunc.fdeg_max, 2)) + 2
    sound = max(kill_bound(ModuleVector(trunc.sector, {m: 1})) for m in trunc.basis)
    return max(nominal, sound)


def whittaker_kernel(W: WhittakerData, fdeg_max: int) -> KernelReport:
    """All Whittaker vectors of W supported on the truncation, as an RREF basis."""
    trunc = enumerate_truncation(W.sector, fdeg_max)
    if not trunc.basis:
        raise ValueError("empty truncation")
    eng = straightener(W)
    n_max = kernel_n_max(trunc)
    gens = p_generators(W.sector, n_max)
    codes = [(_code(g), g) for g in gens]
    columns = []
    hit = set()
    for m in trunc.basis:
        bound = kill_bound(ModuleVector(W.sector, {m: 1}))
        col = {}
        for code, g in codes:
            if g.index > bound:
                continue
            for mono, x in eng.shifted(code, {m.factors: Fraction(1)}).items():
                col[(code, mono)] = x
        hit.update(col)
        columns.append(col)
    basis_vectors = []
    for vec in kernel(columns):
        basis_vectors.append(ModuleVector(W.sector, {trunc.basis[j]: x for j, x in vec.items()}))
    verified = all(not whittaker_defect(v, W) for v in basis_vectors)
    if not verified:
        raise RuntimeError("kernel vector failed the direct Whittaker check")
    return KernelReport(trunc, basis_vectors, gens, n_max, len(hit), verified)


def canonical_span(vectors: Sequence[ModuleVector], sector: Sector) -> list[ModuleVector]:
    """RREF of ``vectors`` with respect to the global basis order."""
    rows = rref([{m.sort_key(): x for m, x in v.terms.items()} for v in vectors])
    lookup = {m.sort_key(): m for v in vectors for m in v.terms}
    return [ModuleVector(sector, {lookup[k]: x for k, x in r.items()}) for r in rows]


@dataclass
class CyclicityReport:
    start: ModuleVector
    reached_w: bool
    witness: list[Generator]
    combination: list[tuple[Fraction, list[Generator]]]
    residual_coefficient: Fraction | None
    span_dimension_trace: list[int]
    budget_spent: int
    closed: bool

    def replay(self, W: WhittakerData) -> bool:
        """Re-derive the certificate: witness image minus the combination is a nonzero multiple of w."""
        if not self.reached_w:
            return False
        v = act_word(self.witness, self.start, W)
        for q, word in self.combination:
            v = v - q * act_word(word, self.start, W)
        k = self.residual_coefficient
        return bool(k) and v == ModuleVector.w(W.sector, k)


def probe_generators(sector: Sector, deg_cap: int, include_lowering: bool = False) -> list[Generator]:
    """Positive-index generators with doubled index <= deg_cap; optionally the rest down to -deg_cap."""
    gens = []
    lo = -deg_cap if include_lowering else 1
    for d in range(lo, deg_cap + 1):
        if d % 2 == 0:
            gens.append(Generator("L", d, sector))
        if d % 2 == sector.eps2:
            gens.append(Generator("G", d, sector))
    if not include_lowering:
        gens = [g for g in gens if g.d > 0]
    return sorted(gens, key=lambda g: (abs(g.d), g.d, g.kind))


def cyclicity_probe(
    start: ModuleVector,
    W: WhittakerData,
    deg_cap: int | None = None,
    step_budget: int = DEFAULT_BUDGET,
    include_lowering: bool = False,
    fdeg_cap: int | None = None,
    on_insert: Callable[[ModuleVector], None] | None = None,
) -> CyclicityReport:
    """Grow the span of generator-words applied to ``start`` until it contains w.

    Each span element is the image of a recorded word, so a success comes with
    a replayable certificate.  ``fdeg_cap`` discards images leaving the
    truncation (only meaningful with ``include_lowering``).  ``on_insert``
    sees every vector that enlarges the span.
    """
    if not start:
        raise ValueError("cyclicity probe needs a nonzero start vector")
    if start.sector is not W.sector:
        raise ValueError("sector mismatch")
    if deg_cap is None:
        deg_cap = max(2 * kill_bound(start), 4)
    sector = W.sector
    eng = straightener(W)
    gens = [(g, _code(g)) for g in probe_generators(sector, deg_cap, include_lowering)]
    w_key = ()
    words: list[list[Generator]] = [[]]
    vecs = [start._codes()]
    span = SparseEchelon()
    span.insert(vecs[0], 0)
    trace = [1]
    steps = 0

    def certificate(last: int):
        beta = span.express({w_key: Fraction(1)})
        lead = beta[last]
        combo = [(-beta[j] / lead, words[j]) for j in sorted(beta) if j != last]
        return CyclicityReport(start, True, words[last], combo, 1 / lead, trace, steps, False)

    if span.contains({w_key: Fraction(1)}):
        return certificate(0)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g, code in gens:
            if steps >= step_budget:
                return CyclicityReport(start, False, [], [], None, trace, steps, False)
            steps += 1
            y = eng.act_vector(code, vecs[i])
            if not y:
                continue
            if fdeg_cap is not None and any(
                BasisMonomial.from_factors(m, sector).fdeg2 > fdeg_cap for m in y
            ):
                continue
            j = len(vecs)
            fresh, _ = span.insert(y, j)
            if not fresh:
                continue
            words.append([g] + words[i])
            vecs.append(y)
            if on_insert is not None:
                on_insert(ModuleVector._from_codes(sector, y))
            queue.append(j)
            trace.append(len(span))
            if span.contains({w_key: Fraction(1)}):
                return certificate(j)
    return CyclicityReport(start, False, [], [], None, trace, steps, True)


def p_orbit_dimension(v: ModuleVector, W: WhittakerData, limit: int = 10_000) -> int:
    """dim U(p_eps) v, which is finite; generators beyond the kill bound act by scalars."""
    eng = straightener(W)
    gens = [_code(g) for g in p_generators(W.sector, kill_bound(v))]
    span = SparseEchelon()
    span.insert(v._codes(), 0)
    queue = deque([v._codes()])
    while queue:
        x = queue.popleft()
        for code in gens:
            y = eng.act_vector(code, x)
            if y and span.insert(y, len(span))[0]:
                queue.append(y)
                if len(span) > limit:
                    raise RuntimeError("p-orbit exceeded the dimension limit")
    return len(span)


@dataclass
class DegenerateReport:
    is_whittaker: bool
    w_excluded: bool
    span_dim: int
    span_dimension_trace: list[int]
    inside_g1_sector: bool
    budget_spent: int
    fdeg_max: int
    label: str = "evidence at truncation"


def degenerate_submodule_probe(
    W: WhittakerData, fdeg_max: int = 8, step_budget: int = DEFAULT_BUDGET
) -> DegenerateReport:
    """Evidence that G_1 w generates a proper submodule of the Ramond module with psi(L_2) = 0."""
    if W.sector is not Sector.R or W.b != 0 or W.a == 0:
        raise ValueError("degenerate probe needs the Ramond sector with b = 0 and a != 0")
    g1w = ModuleVector.monomial(Sector.R, (), (-1,))
    is_wh = not whittaker_defect(g1w, W)
    outside = []

    def watch(v: ModuleVector):
        if any(-1 not in m.mu for m in v.terms):
            outside.append(v)

    rep = cyclicity_probe(
        g1w, W, deg_cap=fdeg_max + 4, step_budget=step_budget,
        include_lowering=True, fdeg_cap=fdeg_max, on_insert=watch,
    )
    return DegenerateReport(
        is_whittaker=is_wh,
        w_excluded=not rep.reached_w,
        span_dim=rep.span_dimension_trace[-1],
        span_dimension_trace=rep.span_dimension_trace,
        inside_g1_sector=not outside,
        budget_spent=rep.budget_spent,
        fdeg_max=fdeg_max,
    )


@dataclass
class ProbeOutcome:
    start: ModuleVector
    is_whittaker: bool
    report: CyclicityReport


@dataclass
class SimplicityReport:
    verdict: str
    kernel: KernelReport
    probes: list[ProbeOutcome]
    failures: list[ProbeOutcome]
    degenerate: bool
    note: str = "consistency check at a finite truncation, not a proof"

    @property
    def witness(self) -> ModuleVector | None:
        for p in self.failures:
            if p.is_whittaker:
                return p.start
        return None


def simplicity_report(
    W: WhittakerData, fdeg_max: int = 4, step_budget: int = DEFAULT_BUDGET
) -> SimplicityReport:
    """Probe whether every Whittaker vector and every small monomial regenerates w."""
    if W.is_trivial:
        raise ValueError(
            "trivial psi: W(0, c) has Verma-type quotients, outside the scope of this probe"
        )
    kr = whittaker_kernel(W, fdeg_max)
    probes = []
    for v in kr.kernel_basis:
        probes.append(ProbeOutcome(v, True, cyclicity_probe(v, W, step_budget=step_budget)))
    for m in kr.truncation.basis:
        v = ModuleVector(W.sector, {m: 1})
        probes.append(ProbeOutcome(v, False, cyclicity_probe(v, W, step_budget=step_budget)))
    failures = [p for p in probes if not p.report.reached_w]
    degenerate = W.sector is Sector.R and W.b == 0 and W.a != 0
    if not failures:
        verdict = CONSISTENT
    elif any(p.is_whittaker and p.report.closed for p in failures):
        verdict = PROPER
    else:
        verdict = INCONCLUSIVE
    return SimplicityReport(verdict, kr, probes, failures, degenerate)
