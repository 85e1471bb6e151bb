from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prymtheta import f2theta as f2
from prymtheta import hyperelliptic as hyp
from prymtheta.f2theta import Parity
from prymtheta.hyperelliptic import DivisorKind, ThetaSubset, TwoTorsionSubset


@st.composite
def torsion(draw, g: int | None = None):
    g = g or draw(st.integers(1, 7))
    return TwoTorsionSubset.from_index(g, draw(st.integers(0, (1 << 2 * g) - 1)))


@st.composite
def theta(draw, g: int):
    n = 2 * g + 2
    mask = draw(st.integers(0, (1 << n) - 1))
    if (mask.bit_count() - g - 1) % 2:
        mask ^= 1
    return ThetaSubset(g, mask)


def test_group_law_examples():
    u = TwoTorsionSubset.of(3, [1, 2])
    assert (u + u).is_trivial()
    assert str(u + TwoTorsionSubset.of(3, [2, 3])) == "{1,3}"
    assert str(u + TwoTorsionSubset.of(3, [3, 4, 5, 6])) == "{7,8}"


def test_pairing_examples():
    a, b, c = (TwoTorsionSubset.of(3, s) for s in ([1, 2], [2, 3], [3, 4]))
    assert hyp.pairing(a, b) == 1
    assert hyp.pairing(a, c) == 0


def test_h0_and_parity_genus3():
    assert hyp.h0(ThetaSubset(3, 0)) == 2
    assert hyp.h0(ThetaSubset.of(3, [1, 2])) == 1
    assert hyp.h0(ThetaSubset.of(3, [1, 2, 3, 4])) == 0
    assert hyp.parity(ThetaSubset(3, 0)) is Parity.EVEN
    assert hyp.parity(ThetaSubset.of(3, [5, 8])) is Parity.ODD


def test_twist_examples():
    empty = ThetaSubset(3, 0)
    t = hyp.twist_theta(empty, TwoTorsionSubset.of(3, [1, 2]))
    assert t.members == (1, 2) and hyp.parity(t) is Parity.ODD
    t = hyp.twist_theta(empty, TwoTorsionSubset.of(3, [1, 2, 3, 4]))
    assert hyp.h0(t) == 0 and hyp.parity(t) is Parity.EVEN


def test_classify_genus3():
    assert hyp.classify_genus3(TwoTorsionSubset.of(3, [1, 2])) is DivisorKind.ODD_DIVISOR
    assert hyp.classify_genus3(TwoTorsionSubset.of(3, [1, 2, 3, 4])) is DivisorKind.EVEN_DIVISOR
    with pytest.raises(ValueError):
        hyp.classify_genus3(TwoTorsionSubset.identity(3))
    with pytest.raises(ValueError):
        hyp.classify_genus3(TwoTorsionSubset.of(4, [1, 2]))


def test_validation():
    with pytest.raises(ValueError):
        TwoTorsionSubset.of(3, [1, 2, 3])
    with pytest.raises(ValueError):
        ThetaSubset.of(3, [1])
    with pytest.raises(ValueError):
        TwoTorsionSubset.of(3, [1, 9])
    with pytest.raises(f2.GenusMismatch):
        hyp.add(TwoTorsionSubset.of(3, [1, 2]), TwoTorsionSubset.of(4, [1, 2]))


def test_canonical_tie_contains_label_one():
    u = TwoTorsionSubset.of(3, [5, 6, 7, 8])
    assert u.members == (1, 2, 3, 4)
    assert TwoTorsionSubset.of(3, [1, 2, 3, 4, 5, 6]).members == (7, 8)


@pytest.mark.parametrize("g", range(1, 6))
def test_enumeration_sizes(g):
    assert sum(1 for _ in hyp.enumerate_two_torsion(g)) == 4**g
    assert sum(1 for _ in hyp.enumerate_two_torsion(g, nontrivial=True)) == 4**g - 1
    thetas = list(hyp.enumerate_theta(g))
    assert len(thetas) == len(set(thetas)) == 4**g


def test_enumeration_order_is_size_then_lex():
    first = [str(u) for u in hyp.enumerate_two_torsion(3, nontrivial=True)][:3]
    assert first == ["{1,2}", "{1,3}", "{1,4}"]


@pytest.mark.parametrize("g", range(1, 7))
def test_theta_census_matches_abstract(g):
    tally = {Parity.EVEN: 0, Parity.ODD: 0}
    for t in hyp.enumerate_theta(g):
        tally[hyp.parity(t)] += 1
    assert tally == f2.census(g)


@pytest.mark.parametrize("g", range(1, 6))
def test_dimension_strata(g):
    strata: dict[int, int] = {}
    for t in hyp.enumerate_theta(g):
        strata[t.dimension] = strata.get(t.dimension, 0) + 1
    for r in range(0, (g - 1) // 2 + 1):
        assert strata[r] == comb(2 * g + 2, g - 1 - 2 * r)
    assert strata[-1] == comb(2 * g + 2, g + 1) // 2


def test_semicanonical_pencils():
    assert [str(t) for t in hyp.semicanonical_pencils(3)] == ["{}"]
    assert len(hyp.semicanonical_pencils(4)) == 10
    assert len(hyp.semicanonical_pencils(5)) == 66
    with pytest.raises(ValueError):
        hyp.semicanonical_pencils(2)


def test_genus3_split():
    kinds = [hyp.classify_genus3(u) for u in hyp.enumerate_two_torsion(3, nontrivial=True)]
    assert len(kinds) == 63
    assert kinds.count(DivisorKind.ODD_DIVISOR) == 28
    assert kinds.count(DivisorKind.EVEN_DIVISOR) == 35


@pytest.mark.parametrize("g", range(1, 5))
def test_theta_form_arf_is_parity(g):
    for t in hyp.enumerate_theta(g):
        q = hyp.form_from_subset(t)
        assert q(TwoTorsionSubset.identity(g)) == 0
        assert q.arf() is hyp.parity(t)


@pytest.mark.parametrize("g", range(1, 5))
def test_flip_rule_exhaustive(g):
    for t in hyp.enumerate_theta(g):
        for i in range(1, 2 * g + 3):
            for j in range(i + 1, 2 * g + 3):
                u = TwoTorsionSubset.of(g, [i, j])
                flipped = hyp.parity(hyp.twist_theta(t, u)) is not hyp.parity(t)
                assert flipped == hyp.flips_by_rule(t, i, j)


def test_cap_applies(monkeypatch):
    monkeypatch.setenv("PRYMTHETA_ENUM_CAP", "3")
    with pytest.raises(ValueError):
        list(hyp.enumerate_theta(4))


# ---------- properties


@given(torsion())
def test_index_round_trip(u):
    assert TwoTorsionSubset.from_index(u.genus, u.index) == u


@given(st.integers(1, 7).flatmap(lambda g: st.tuples(torsion(g), torsion(g))))
def test_index_is_additive(pair):
    u, v = pair
    assert (u + v).index == u.index ^ v.index


@given(st.integers(1, 7).flatmap(lambda g: st.tuples(torsion(g), torsion(g), torsion(g))))
def test_pairing_bilinear_alternating(triple):
    u, v, w = triple
    assert hyp.pairing(u, u) == 0
    assert hyp.pairing(u + v, w) == hyp.pairing(u, w) ^ hyp.pairing(v, w)


@given(st.integers(1, 6).flatmap(lambda g: st.tuples(theta(g), torsion(g), torsion(g))))
def test_theta_form_is_refinement(triple):
    t, u, v = triple
    q = hyp.ThetaForm(t)
    assert q(u + v) == q(u) ^ q(v) ^ hyp.pairing(u, v)


@given(st.integers(1, 6).flatmap(lambda g: st.tuples(theta(g), torsion(g))))
def test_twist_round_trip(pair):
    t, u = pair
    assert hyp.twist_theta(hyp.twist_theta(t, u), u) == t


@given(st.integers(1, 7).flatmap(lambda g: st.tuples(theta(g), st.integers(1, 2 * g + 2), st.integers(1, 2 * g + 2))))
def test_flip_rule_random(data):
    t, i, j = data
    if i == j:
        return
    u = TwoTorsionSubset.of(t.genus, [i, j])
    assert (hyp.parity(hyp.twist_theta(t, u)) is not hyp.parity(t)) == hyp.flips_by_rule(t, i, j)
