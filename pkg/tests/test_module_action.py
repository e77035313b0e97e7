from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from naive_rewriter import naive_act_word
from supervir.algebra import C, G, L, LieElement, Sector, bracket
from supervir.checks import generators, leibniz_failures
from supervir.module_action import (
    BasisMonomial,
    ModuleVector,
    WhittakerData,
    act_generator,
    act_lie,
    act_word,
    fdeg,
    in_p,
    is_creation,
    kill_bound,
    maxdeg,
    p_generators,
    psi_value,
    whittaker_defect,
)
from supervir.solver import enumerate_truncation

NS, R = Sector.NS, Sector.R
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def mono(s, lam=(), mu=(), k=1):
    return ModuleVector.monomial(s, lam, mu, k)


def w(s=NS):
    return ModuleVector.w(s)


def test_psi_value():
    W = WhittakerData(NS, 1, 2)
    assert psi_value(W, L(2)) == 2
    assert psi_value(W, L(7)) == 0
    assert psi_value(W, G("1/2")) is None
    assert psi_value(W, G("3/2")) == 0
    assert psi_value(WhittakerData(R, 1, 2), G(1, R)) is None
    assert psi_value(WhittakerData(NS, 0, 0, 5), C()) == 5


def test_l3_kills_w():
    assert not act_generator(L(3), w(), WhittakerData(NS, 1, 2))


def test_g32_g12_w_is_2b_w():
    for a, b in [(1, 2), (Q(1, 3), Q(-7, 2))]:
        W = WhittakerData(NS, a, b)
        assert act_generator(G("3/2"), mono(NS, (), (0,)), W) == w() * (2 * W.b)
        assert act_word([G("3/2"), G("1/2")], w(), W) == w() * (2 * W.b)


def test_l1_l0_w():
    a, b = Q(5, 3), Q(2)
    W = WhittakerData(NS, a, b)
    out = act_generator(L(1), mono(NS, (0,)), W)
    assert out == mono(NS, (0,), (), a) + w() * a
    assert out == naive_act_word([L(1), L(0)], W)


def test_l2_lminus2_w():
    a, b, c = Q(1), Q(3), Q(7, 5)
    W = WhittakerData(NS, a, b, c)
    out = act_generator(L(2), mono(NS, (2,)), W)
    assert out == mono(NS, (2,), (), b) + mono(NS, (0,), (), 4) + w() * (c / 2)
    assert out == naive_act_word([L(2), L(-2)], W)


def test_g12_squared_is_a():
    W = WhittakerData(NS, Q(4, 7), 1)
    assert act_word([G("1/2"), G("1/2")], w(), W) == w() * Q(4, 7)


def test_act_word_examples():
    a = Q(2, 3)
    W = WhittakerData(NS, a, 1)
    assert act_word([], w(), W) == w()
    assert act_word([L(1), L(-1)], w(), W) == mono(NS, (1,), (), a) + mono(NS, (0,), (), 2)


def test_defect_examples():
    assert whittaker_defect(w(), WhittakerData(NS, 1, 1)) == []
    for a, b in [(1, 1), (0, 1), (1, 0), (0, 0), (Q(-2, 3), Q(5))]:
        assert whittaker_defect(mono(R, (), (-1,)), WhittakerData(R, a, b)) == []
    d = dict(whittaker_defect(mono(NS, (1,)), WhittakerData(NS, 1, 1)))
    assert d[L(1)] == mono(NS, (0,), (), 2)


def test_zero_vector_rejected():
    z = ModuleVector.zero(NS)
    for f in (maxdeg, fdeg, kill_bound):
        with pytest.raises(ValueError):
            f(z)
    with pytest.raises(ValueError):
        whittaker_defect(z, WhittakerData(NS, 1, 1))


def test_degrees():
    assert maxdeg(w()) == 0 and fdeg(w()) == 0
    assert maxdeg(mono(NS, (), (0,))) == -1
    v = mono(NS, (1, 1), (2,))
    assert str(v) == "L(-1)L(-1)G(-3/2)w"
    assert maxdeg(v) == 7 and fdeg(v) == 7
    assert fdeg(mono(NS, (0, 0, 1))) == 6 and maxdeg(mono(NS, (0, 0, 1))) == 2


@pytest.mark.parametrize(
    "sector,lam,mu",
    [(NS, (2, 1), ()), (NS, (-1,), ()), (NS, (), (1, 1)), (NS, (), (-1,)), (R, (), (-2,))],
)
def test_invalid_monomials(sector, lam, mu):
    with pytest.raises(ValueError):
        BasisMonomial(sector, lam, mu)


def test_ramond_g1_is_creation_not_in_p():
    g = G(1, R)
    assert is_creation(g) and not in_p(g)
    assert act_generator(g, w(R), WhittakerData(R, 1, 1)) == mono(R, (), (-1,))
    assert act_generator(G("1/2"), w(), WhittakerData(NS, 1, 1)) == mono(NS, (), (0,))


def test_factor_order_largest_part_leftmost():
    v = act_word([L(-2), L(-1), G("-5/2"), G("-1/2")], w(), WhittakerData(NS, 1, 1))
    assert str(v) == "L(-2)L(-1)G(-5/2)G(-1/2)w"
    m = BasisMonomial(NS, (1, 2), (1, 3))
    assert m.math_str() == "L_{-2}L_{-1}G_{-5/2}G_{-1/2}w"


def test_pbw_freeness():
    W = WhittakerData(NS, 1, 1)
    for k in range(0, 30):
        assert act_generator(L(-k), w(), W) == mono(NS, (k,))


def test_parity_flag():
    W = WhittakerData(NS, 1, 1)
    P = W.parity_changed()
    v = mono(NS, (), (0,))
    assert W.absolute_parity(v) == 1 and P.absolute_parity(v) == 0
    assert act_generator(G("3/2"), v, W) == act_generator(G("3/2"), v, P)


@st.composite
def random_word(draw, sector):
    return draw(st.lists(st.sampled_from(generators(sector, 8)), max_size=5))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_confluence_against_naive_rewriter(data):
    s = data.draw(st.sampled_from(list(Sector)))
    W = WhittakerData(s, data.draw(rationals), data.draw(rationals), data.draw(rationals))
    word = data.draw(random_word(s))
    assert act_word(word, w(s), W) == naive_act_word(word, W)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_weight_additivity(data):
    s = data.draw(st.sampled_from(list(Sector)))
    basis = enumerate_truncation(s, 6).basis
    m = data.draw(st.sampled_from(basis))
    g = data.draw(st.sampled_from(generators(s, 8, with_c=False)))
    a, b = data.draw(rationals), data.draw(rationals)
    out = act_generator(g, ModuleVector(s, {m: 1}), WhittakerData(s, a, b))
    for o, _ in out:
        if a == 0 and b == 0:
            assert o.weight2 == m.weight2 + g.d
        else:
            # psi lowers weight by 2 (L_1) or 4 (L_2) at each use
            gap = m.weight2 + g.d - o.weight2
            assert gap >= 0 and gap % 2 == 0


@pytest.mark.parametrize("sector", list(Sector))
def test_leibniz_seeded(sector):
    W = WhittakerData(sector, Q(3, 2), Q(-2, 3), Q(5))
    assert leibniz_failures(W, 150, seed=11) == []


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_act_lie_matches_bracket(data):
    s = data.draw(st.sampled_from(list(Sector)))
    W = WhittakerData(s, data.draw(rationals), data.draw(rationals), data.draw(rationals))
    x = data.draw(st.sampled_from(generators(s, 6)))
    y = data.draw(st.sampled_from(generators(s, 6)))
    sign = -1 if x.is_odd and y.is_odd else 1
    v = w(s)
    lhs = act_word([x, y], v, W) - act_word([y, x], v, W) * sign
    assert lhs == act_lie(bracket(x, y), v, W)


@pytest.mark.parametrize("sector", list(Sector))
def test_sound_kill_bound(sector):
    """Beyond kill_bound every p-generator acts on a monomial by psi."""
    W = WhittakerData(sector, Q(2, 3), Q(-1, 2), 1)
    for m in enumerate_truncation(sector, 8).basis:
        v = ModuleVector(sector, {m: 1})
        n = kill_bound(v)
        for g in p_generators(sector, n + 4):
            if g.d > 2 * n:
                assert act_generator(g, v, W) == v * psi_value(W, g)


def test_vector_arithmetic_and_rendering():
    v = mono(NS, (1,)) * 2 - w() * Q(1, 2)
    assert str(v) == "-1/2 w + 2 L(-1)w"
    assert v.coefficient_of_w() == Q(-1, 2)
    assert not (v - v)
    assert ModuleVector.zero(NS).parity is None
