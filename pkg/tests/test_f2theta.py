from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prymtheta import f2theta as f2
from prymtheta._config import EnumerationCapExceeded
from prymtheta.f2theta import F2Vector, Parity, QuadraticForm


@st.composite
def genus_and_vectors(draw, n: int, max_genus: int = 8):
    g = draw(st.integers(1, max_genus))
    vecs = [F2Vector(g, draw(st.integers(0, (1 << 2 * g) - 1))) for _ in range(n)]
    return g, vecs


@st.composite
def form_and_vectors(draw, n: int, max_genus: int = 8):
    g, vecs = draw(genus_and_vectors(n, max_genus))
    q = QuadraticForm(g, draw(st.integers(0, (1 << 2 * g) - 1)))
    return q, vecs


def test_pairing_on_basis():
    g = 3
    assert f2.weil_pairing(F2Vector.e(g, 1), F2Vector.f(g, 1)) == 1
    assert f2.weil_pairing(F2Vector.e(g, 1), F2Vector.e(g, 2)) == 0
    assert f2.weil_pairing(F2Vector.e(g, 1), F2Vector.f(g, 2)) == 0


def test_evaluate_zero_form():
    q = QuadraticForm(2, 0)
    assert f2.evaluate(q, F2Vector.e(2, 1)) == 0
    assert f2.evaluate(q, F2Vector.e(2, 1) + F2Vector.f(2, 1)) == 1


def test_arf_small_cases():
    assert f2.arf(QuadraticForm(4, 0)) is Parity.EVEN
    odd = QuadraticForm.from_basis_values([1], [1])
    assert f2.arf(odd) is Parity.ODD
    assert [f2.arf(q) for q in f2.enumerate_forms(1)].count(Parity.ODD) == 1


def test_twist_by_zero_is_identity():
    q = QuadraticForm(3, 0b101101)
    assert f2.twist(q, F2Vector.zero(3)) == q


@pytest.mark.parametrize("g, even, odd", [(1, 3, 1), (2, 10, 6), (3, 36, 28), (4, 136, 120)])
def test_counts_known_values(g, even, odd):
    assert (f2.count_even(g), f2.count_odd(g)) == (even, odd)
    assert f2.census(g) == {Parity.EVEN: even, Parity.ODD: odd}


@pytest.mark.parametrize("g", range(1, 7))
def test_census_matches_closed_form(g):
    assert f2.census(g) == {Parity.EVEN: f2.count_even(g), Parity.ODD: f2.count_odd(g)}


def test_odd_preserving_values():
    assert f2.count_odd_preserving(1) == 0
    assert f2.count_odd_preserving(3) == 12
    assert f2.count_odd_preserving(5) == 240
    with pytest.raises(ValueError):
        f2.count_odd_preserving(3, F2Vector.zero(3))


@pytest.mark.parametrize("g", range(1, 5))
def test_odd_preserving_every_eta(g):
    want = f2.count_odd_preserving(g)
    for eta in f2.enumerate_vectors(g):
        if not eta.is_zero():
            assert f2.brute_odd_preserving(g, eta) == want
            assert f2.count_odd_preserving(g, eta, verify=True) == want


@pytest.mark.parametrize("g", range(1, 5))
def test_difference_fibers_uniform(g):
    fibers = f2.difference_fiber_counts(g)
    assert len(fibers) == 4**g - 1
    assert set(fibers.values()) == {f2.count_odd_preserving(g)}


def test_boundary_pairs():
    assert f2.count_boundary_pairs(5, 2, "ee") == 360
    assert f2.count_boundary_pairs(5, 2, "oo") == 168
    for g in range(2, 7):
        for i in range(1, g):
            for kind in ("ee", "oo"):
                assert f2.count_boundary_pairs(g, i, kind) == f2.brute_boundary_pairs(g, i, kind)
    with pytest.raises(ValueError):
        f2.count_boundary_pairs(5, 0, "ee")


def test_degree_over_teixidor():
    assert f2.degree_over_teixidor(3, "even") == 35
    assert f2.degree_over_teixidor(3, Parity.ODD) == 28
    for g in range(3, 6):
        for p in Parity:
            assert f2.brute_degree_over_teixidor(g, p) == f2.degree_over_teixidor(g, p)
    with pytest.raises(ValueError):
        f2.degree_over_teixidor(2, "even")


def test_degree_independent_of_even_base():
    g = 3
    for base in f2.enumerate_forms(g):
        if f2.arf(base) is Parity.EVEN:
            assert f2.brute_degree_over_teixidor(g, Parity.ODD, base) == 28


def test_enumeration_sizes_and_cap(monkeypatch):
    assert len(list(f2.enumerate_forms(1))) == 4
    assert len(list(f2.enumerate_forms(3))) == 64
    with pytest.raises(EnumerationCapExceeded):
        list(f2.enumerate_forms(20))
    monkeypatch.setenv("PRYMTHETA_ENUM_CAP", "2")
    with pytest.raises(EnumerationCapExceeded):
        f2.census(3)


def test_genus_mismatch():
    with pytest.raises(f2.GenusMismatch):
        f2.weil_pairing(F2Vector.e(2, 1), F2Vector.e(3, 1))


def test_arf_from_table_rejects_bad_tables():
    with pytest.raises(ValueError):
        f2.arf_from_table([0, 1, 0])


def test_sampling_is_seeded():
    a = f2.sample_nonzero_vectors(6, 10, seed=7)
    assert a == f2.sample_nonzero_vectors(6, 10, seed=7)
    assert all(not v.is_zero() for v in a)


# ---------- properties


@given(genus_and_vectors(1))
def test_pairing_alternating(data):
    _, (u,) = data
    assert f2.weil_pairing(u, u) == 0


@given(genus_and_vectors(3))
def test_pairing_bilinear_symmetric(data):
    _, (u, v, w) = data
    assert f2.weil_pairing(u, v) == f2.weil_pairing(v, u)
    assert f2.weil_pairing(u + v, w) == f2.weil_pairing(u, w) ^ f2.weil_pairing(v, w)


@given(form_and_vectors(2))
def test_refinement_identity(data):
    q, (u, v) = data
    assert f2.evaluate(q, u + v) == f2.evaluate(q, u) ^ f2.evaluate(q, v) ^ f2.weil_pairing(u, v)


@given(form_and_vectors(2))
def test_twist_is_group_action(data):
    q, (a, b) = data
    assert f2.twist(q, a + b) == f2.twist(f2.twist(q, a), b)


@given(form_and_vectors(2))
def test_twist_shifts_values_by_pairing(data):
    q, (eta, v) = data
    assert f2.evaluate(f2.twist(q, eta), v) == f2.evaluate(q, v) ^ f2.weil_pairing(eta, v)


@given(form_and_vectors(1))
def test_arf_change_under_twist(data):
    # Arf(q + eta) = Arf(q) + q(eta)
    q, (eta,) = data
    flipped = f2.arf(f2.twist(q, eta)) is not f2.arf(q)
    assert flipped == bool(f2.evaluate(q, eta))


@settings(max_examples=40)
@given(form_and_vectors(0, max_genus=4))
def test_arf_matches_majority(data):
    q, _ = data
    table = [f2.evaluate(q, v) for v in f2.enumerate_vectors(q.genus)]
    assert f2.arf_from_table(table) is f2.arf(q)


@given(st.integers(1, 40))
def test_counts_partition(g):
    assert f2.count_even(g) + f2.count_odd(g) == 4**g
    # every odd form is either preserved or flipped by a fixed eta
    assert f2.count_odd_preserving(g) <= f2.count_odd(g)
