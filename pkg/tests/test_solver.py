from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from naive_rewriter import brute_force_basis
from supervir.algebra import G, Sector
from supervir.module_action import BasisMonomial, ModuleVector, WhittakerData, whittaker_defect
from supervir.solver import (
    CONSISTENT,
    PROPER,
    canonical_span,
    cyclicity_probe,
    degenerate_submodule_probe,
    enumerate_truncation,
    min_fdeg,
    p_orbit_dimension,
    simplicity_report,
    whittaker_kernel,
)

NS, R = Sector.NS, Sector.R


def w(s):
    return ModuleVector.w(s)


def g_one(s):
    return ModuleVector.monomial(s, (), (0,) if s is NS else (-1,))


def test_min_fdeg():
    assert min_fdeg(NS) == -1 and min_fdeg(R) == -2


@pytest.mark.parametrize("sector", list(Sector))
@pytest.mark.parametrize("fdeg_max", [-2, -1, 0, 1, 2, 5, 8])
def test_truncation_matches_brute_force(sector, fdeg_max):
    if fdeg_max < min_fdeg(sector):
        with pytest.raises(ValueError):
            enumerate_truncation(sector, fdeg_max)
        return
    t = enumerate_truncation(sector, fdeg_max)
    assert set(t.basis) == brute_force_basis(sector, fdeg_max, cap=10)
    assert len(set(t.basis)) == len(t.basis)
    assert list(t.basis) == sorted(t.basis, key=BasisMonomial.sort_key)


def test_truncation_small_cases():
    assert [str(m) for m in enumerate_truncation(NS, -1).basis] == ["G(1/2)w"]
    ns0 = [str(m) for m in enumerate_truncation(NS, 0).basis]
    assert ns0 == ["G(1/2)w", "w", "G(-1/2)G(1/2)w"]
    r0 = {str(m) for m in enumerate_truncation(R, 0).basis}
    assert {"w", "G(0)w", "G(1)w"} <= r0 and len(r0) == 10


def test_truncation_sizes():
    assert len(enumerate_truncation(NS, 12)) == 559
    assert len(enumerate_truncation(R, 12)) == 1118


@pytest.mark.parametrize(
    "W,expected",
    [
        (WhittakerData(NS, 1, 1, Q(1, 2)), [w(NS)]),
        (WhittakerData(NS, 1, 0, 0), [w(NS), g_one(NS)]),
        (WhittakerData(R, 1, 1, 1), [w(R), g_one(R)]),
    ],
    ids=["ns-generic", "ns-b0", "r-generic"],
)
def test_kernel_examples(W, expected):
    rep = whittaker_kernel(W, 6)
    assert rep.verified
    assert canonical_span(rep.kernel_basis, W.sector) == canonical_span(expected, W.sector)
    for v in rep.kernel_basis:
        assert whittaker_defect(v, W) == []


def test_ramond_b0_kernel_is_larger():
    rep = whittaker_kernel(WhittakerData(R, 1, 0, 0), 4)
    assert rep.dimension == 4
    extra = ModuleVector.monomial(R, (0,), (-1,)) - ModuleVector.monomial(R, (), (0,), 2)
    assert extra in rep.kernel_basis
    assert whittaker_defect(extra, WhittakerData(R, 1, 0, 0)) == []


@pytest.mark.parametrize(
    "W,dim",
    [(WhittakerData(NS, 2, -1, 0), 1), (WhittakerData(NS, Q(1, 3), 0, 1), 2), (WhittakerData(R, 0, 2, 0), 2)],
)
def test_kernel_monotone_and_stable(W, dim):
    dims = [whittaker_kernel(W, f).dimension for f in range(0, 11, 2)]
    assert dims == sorted(dims)
    assert dims[2:] == [dim] * len(dims[2:])


def test_kernel_echelon_canonical_across_truncations():
    W = WhittakerData(R, 1, 1, 0)
    small = whittaker_kernel(W, 4).kernel_basis
    big = whittaker_kernel(W, 8).kernel_basis
    assert canonical_span(small, R) == canonical_span(big, R) == small


def test_kernel_deterministic():
    W = WhittakerData(NS, 1, 0, 26)
    a = [str(v) for v in whittaker_kernel(W, 6).kernel_basis]
    b = [str(v) for v in whittaker_kernel(W, 6).kernel_basis]
    assert a == b


def test_cyclicity_examples():
    W = WhittakerData(NS, 1, 0)
    rep = cyclicity_probe(g_one(NS), W)
    assert rep.reached_w and rep.witness == [G("1/2")] and rep.replay(W)
    W = WhittakerData(R, 1, 1)
    rep = cyclicity_probe(g_one(R), W)
    assert rep.reached_w and rep.witness == [G(1, R)]
    assert rep.residual_coefficient == 1 and rep.replay(W)
    rep = cyclicity_probe(w(NS), WhittakerData(NS, 1, 1))
    assert rep.reached_w and rep.witness == [] and rep.replay(WhittakerData(NS, 1, 1))


def test_cyclicity_rejects_zero():
    with pytest.raises(ValueError):
        cyclicity_probe(ModuleVector.zero(NS), WhittakerData(NS, 1, 1))


def test_tampered_certificate_fails_replay():
    W = WhittakerData(NS, 1, 1)
    rep = cyclicity_probe(ModuleVector.monomial(NS, (1,)), W)
    assert rep.replay(W)
    rep.residual_coefficient += 1
    assert not rep.replay(W)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_certificates_replay(data):
    s = data.draw(st.sampled_from(list(Sector)))
    a = data.draw(st.sampled_from([Q(1), Q(-2), Q(1, 2)]))
    b = data.draw(st.sampled_from([Q(1), Q(3, 2), Q(-1)]))
    W = WhittakerData(s, a, b, 0)
    m = data.draw(st.sampled_from(enumerate_truncation(s, 4).basis))
    rep = cyclicity_probe(ModuleVector(s, {m: 1}), W)
    assert rep.reached_w and rep.replay(W)


def test_degenerate_probe():
    rep = degenerate_submodule_probe(WhittakerData(R, 1, 0, 0), fdeg_max=4)
    assert rep.is_whittaker and rep.w_excluded and rep.inside_g1_sector
    assert rep.label == "evidence at truncation"
    with pytest.raises(ValueError):
        degenerate_submodule_probe(WhittakerData(R, 1, 1, 0))
    with pytest.raises(ValueError):
        degenerate_submodule_probe(WhittakerData(NS, 1, 0, 0))


@pytest.mark.parametrize(
    "W,verdict",
    [
        (WhittakerData(NS, 0, 1), CONSISTENT),
        (WhittakerData(R, 1, 1), CONSISTENT),
        (WhittakerData(R, 1, 0), PROPER),
    ],
)
def test_simplicity_examples(W, verdict):
    rep = simplicity_report(W, fdeg_max=2)
    assert rep.verdict == verdict
    if verdict == PROPER:
        assert rep.witness == g_one(R)


def test_simplicity_rejects_trivial_psi():
    with pytest.raises(ValueError, match="Verma"):
        simplicity_report(WhittakerData(NS, 0, 0))


@pytest.mark.parametrize("sector", list(Sector))
def test_p_orbits_are_finite(sector):
    W = WhittakerData(sector, Q(1, 2), 3, 0)
    for m in enumerate_truncation(sector, 4).basis:
        assert p_orbit_dimension(ModuleVector(sector, {m: 1}), W) <= 60
