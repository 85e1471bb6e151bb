"""Invariant suite behind ``prymtheta verify``.

Each check returns a :class:`CheckResult`; exhaustive oracles are bounded by
fixed genus limits so the suite stays at desk scale whatever ``max_genus`` is.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

from . import f2theta as f2
from . import hyperelliptic as hyp
from . import picard as pic
from ._config import DEFAULT_SEED
from .derivation import derive_classes
from .f2theta import Parity

CENSUS_MAX = 6
ODDTC_EXHAUSTIVE_MAX = 5
ODDTC_SAMPLED_GENUS = 6
ODDTC_SAMPLES = 50
REFINEMENT_MAX = 4
FLIP_RULE_MAX = 5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 4)}


# ---------- f2-theta-core


def theta_census(g: int) -> tuple[bool, str]:
    got = f2.census(g)
    want = {Parity.EVEN: f2.count_even(g), Parity.ODD: f2.count_odd(g)}
    return got == want, f"g={g}: even {got[Parity.EVEN]}, odd {got[Parity.ODD]}"


def odd_preserving(g: int, samples: int | None = None, seed: int = DEFAULT_SEED) -> tuple[bool, str]:
    if samples is None:
        etas = [v for v in f2.enumerate_vectors(g) if not v.is_zero()]
    else:
        etas = f2.sample_nonzero_vectors(g, samples, seed)
    seen = {f2.brute_odd_preserving(g, eta) for eta in etas}
    want = f2.count_odd_preserving(g)
    return seen == {want}, f"g={g}: {len(etas)} eta, counts {sorted(seen)}, closed form {want}"


def refinement_identity(g: int) -> tuple[bool, str]:
    """q(u+v) = q(u) + q(v) + <u,v> for every form and every pair, vectorized over pairs."""
    vecs = list(f2.enumerate_vectors(g))
    n = len(vecs)
    pair = np.array([[f2.weil_pairing(u, v) for v in vecs] for u in vecs], dtype=np.uint8)
    sums = np.array([[(u + v).bits for v in vecs] for u in vecs], dtype=np.int64)
    bad = 0
    for q in f2.enumerate_forms(g):
        vals = np.array([f2.evaluate(q, v) for v in vecs], dtype=np.uint8)
        bad += int(np.count_nonzero(vals[sums] ^ vals[:, None] ^ vals[None, :] ^ pair))
    return bad == 0, f"g={g}: {n ** 3} (q,u,v) triples, {bad} failures"


def difference_fibers(g: int) -> tuple[bool, str]:
    s = f2.count_odd(g)
    total = s * (s - 1)
    nonzero = 2 ** (2 * g) - 1
    integral = total % nonzero == 0
    fibers = set(f2.difference_fiber_counts(g).values())
    want = f2.count_odd_preserving(g)
    ok = integral and total // nonzero == want and fibers == {want}
    return ok, f"g={g}: S(S-1)/(2^2g-1) = {Fraction(total, nonzero)}, fibers {sorted(fibers)}"


def twist_action(g: int) -> tuple[bool, str]:
    vecs = list(f2.enumerate_vectors(g))
    bad = 0
    for q in f2.enumerate_forms(g):
        for a in vecs:
            for b in vecs:
                if f2.twist(q, a + b) != f2.twist(f2.twist(q, a), b):
                    bad += 1
    return bad == 0, f"g={g}: {bad} failures"


def teixidor_degree_oracle(g: int) -> tuple[bool, str]:
    got = {p: f2.brute_degree_over_teixidor(g, p) for p in Parity}
    want = {p: f2.degree_over_teixidor(g, p) for p in Parity}
    return got == want, f"g={g}: brute {got[Parity.EVEN]}/{got[Parity.ODD]}"


# ---------- hyperelliptic-model


def g3_example() -> tuple[bool, str]:
    classes = list(hyp.enumerate_two_torsion(3, nontrivial=True))
    empty = hyp.ThetaSubset(3, 0)
    kinds = [hyp.classify_genus3(u) for u in classes]
    agree = all(
        (k is hyp.DivisorKind.ODD_DIVISOR) == (hyp.parity(hyp.twist_theta(empty, u)) is Parity.ODD)
        for u, k in zip(classes, kinds)
    )
    n_odd = kinds.count(hyp.DivisorKind.ODD_DIVISOR)
    n_even = kinds.count(hyp.DivisorKind.EVEN_DIVISOR)
    ok = len(classes) == 63 and n_odd == 28 and n_even == 35 and agree
    return ok, f"{len(classes)} classes: {n_odd} odd-divisor, {n_even} even-divisor, twist agreement {agree}"


def bridge(g: int) -> tuple[bool, str]:
    """q_T is a quadratic refinement of the subset pairing, and the Arf census
    of the q_T matches the abstract model."""
    n = 1 << (2 * g)
    us = [hyp.TwoTorsionSubset.from_index(g, k) for k in range(n)]
    idx = np.arange(n)
    sums = np.bitwise_xor.outer(idx, idx)
    group_ok = all(hyp.add(us[a], us[b]).index == a ^ b for a in range(n) for b in range(n))
    pair = np.array([[hyp.pairing(u, v) for v in us] for u in us], dtype=np.uint8)
    bad = 0
    tally = {Parity.EVEN: 0, Parity.ODD: 0}
    for t in hyp.enumerate_theta(g):
        q = hyp.ThetaForm(t)
        vals = np.array([q(u) for u in us], dtype=np.uint8)
        bad += int(np.count_nonzero(vals[sums] ^ vals[:, None] ^ vals[None, :] ^ pair))
        tally[f2.arf_from_table(vals.tolist())] += 1
    abstract = f2.census(g)
    ok = group_ok and bad == 0 and tally == abstract
    return ok, (
        f"g={g}: refinement failures {bad}, Arf census {tally[Parity.EVEN]}/{tally[Parity.ODD]}"
        f" vs abstract {abstract[Parity.EVEN]}/{abstract[Parity.ODD]}"
    )


def flip_rule(g: int) -> tuple[bool, str]:
    bad = checked = 0
    for t in hyp.enumerate_theta(g):
        for i in range(1, 2 * g + 3):
            for j in range(i + 1, 2 * g + 3):
                u = hyp.TwoTorsionSubset.of(g, (i, j))
                flipped = hyp.parity(hyp.twist_theta(t, u)) is not hyp.parity(t)
                checked += 1
                bad += flipped != hyp.flips_by_rule(t, i, j)
    return bad == 0, f"g={g}: {checked} (T, R_i-R_j) pairs, {bad} disagreements"


def class_counts(g: int) -> tuple[bool, str]:
    thetas = list(hyp.enumerate_theta(g))
    nontrivial = sum(1 for _ in hyp.enumerate_two_torsion(g, nontrivial=True))
    strata: dict[int, int] = {}
    for t in thetas:
        strata[t.dimension] = strata.get(t.dimension, 0) + 1
    want = {r: comb(2 * g + 2, g - 1 - 2 * r) for r in range(0, (g - 1) // 2 + 1)}
    want[-1] = comb(2 * g + 2, g + 1) // 2
    ok = len(thetas) == 4**g and nontrivial == 4**g - 1 and strata == want
    return ok, f"g={g}: {len(thetas)} theta classes, strata {dict(sorted(strata.items()))}"


def subset_odd_preserving(g: int) -> tuple[bool, str]:
    thetas = [t for t in hyp.enumerate_theta(g) if hyp.parity(t) is Parity.ODD]
    want = f2.count_odd_preserving(g)
    seen = set()
    for u in hyp.enumerate_two_torsion(g, nontrivial=True):
        seen.add(sum(1 for t in thetas if hyp.parity(hyp.twist_theta(t, u)) is Parity.ODD))
    return seen == {want}, f"g={g}: counts {sorted(seen)}, closed form {want}"


# ---------- picard-ledger and derivation


def sum_identity(g: int) -> tuple[bool, str]:
    ok = pic.theorem_a_class(g, Parity.EVEN) + pic.theorem_a_class(g, Parity.ODD) == pic.pullback(pic.teixidor_class(g))
    return ok, f"g={g}"


def boundary_identity(g: int) -> tuple[bool, str]:
    bad = [
        i
        for i in range(1, g)
        if f2.count_boundary_pairs(g, i, "ee") + f2.count_boundary_pairs(g, i, "oo") - 1
        != f2.degree_over_teixidor(g, Parity.EVEN)
    ]
    return not bad, f"g={g}: failing i {bad}"


def pushforward_bookkeeping(g: int) -> tuple[bool, str]:
    n = pic.covering_degree(g)
    d0 = pic.MBarClass.from_mapping(g, {pic.D0: 1})
    ok = pic.pushforward(pic.pullback(d0)) == d0 * n
    lam = pic.MBarClass.from_mapping(g, {pic.LAMBDA: 1})
    ok &= pic.pushforward(pic.pullback(lam)) == lam * n
    for i in range(1, g // 2 + 1):
        di = pic.MBarClass.from_mapping(g, {pic.delta(i): 1})
        ok &= pic.pushforward(pic.pullback(di)) == di * n
        ok &= (4**i - 1) + (4 ** (g - i) - 1) + (4**i - 1) * (4 ** (g - i) - 1) == n
    return ok, f"g={g}: deg pi = {n}"


def pushforward_consistency(g: int) -> tuple[bool, str]:
    even = pic.pushforward(pic.theorem_a_class(g, Parity.EVEN))
    deg = f2.degree_over_teixidor(g, Parity.EVEN)
    ok = even[pic.D0] == Fraction(2) ** (2 * g - 6) * deg
    ok &= even[pic.LAMBDA] == deg * Fraction(2) ** (g - 3) * (2**g + 1)
    return ok, f"g={g}"


def g_curve_identities(g: int) -> tuple[bool, str]:
    teix = pic.teixidor_class(g)
    g_dot_t = pic.intersect(pic.g_curve_row_mbar(g), teix)
    closed = Fraction(2) ** (g - 3) * ((g - 3) * 2 ** (g - 2) + 1)
    even, odd = pic.theorem_a_class(g, Parity.EVEN), pic.theorem_a_class(g, Parity.ODD)
    wirt = pic.g_curve_row(g, pic.GVariant.WIRTINGER)
    nonadm = pic.g_curve_row(g, pic.GVariant.NONADMISSIBLE)
    half = (2 ** (2 * g - 2) - 1) * closed
    ok = g_dot_t == closed
    ok &= pic.intersect(wirt, odd) == closed
    ok &= pic.intersect(nonadm, odd) == half == pic.intersect(nonadm, even)
    ok &= closed + Fraction(2) ** (g - 3) * (2 ** (g - 1) - 1) == (2 * g - 2) * Fraction(2) ** (2 * g - 6)
    return ok, f"g={g}: G.[T_g] = {g_dot_t}"


def derivation(g: int) -> tuple[bool, str]:
    report = derive_classes(g)
    return report.ok, f"g={g}: match={report.match}, nonzero residues {len(report.nonzero_residues())}"


def run_suite(max_genus: int, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    if max_genus < 3:
        raise ValueError(f"max_genus must be at least 3, got {max_genus}")
    plan: list[tuple[str, Callable[[], tuple[bool, str]]]] = []

    def add(name: str, fn: Callable[[], tuple[bool, str]]) -> None:
        plan.append((name, fn))

    for g in range(1, min(CENSUS_MAX, max_genus) + 1):
        add(f"theta census g={g}", lambda g=g: theta_census(g))
    for g in range(1, min(ODDTC_EXHAUSTIVE_MAX, max_genus) + 1):
        add(f"odd-preserving count g={g}", lambda g=g: odd_preserving(g))
    if max_genus >= ODDTC_SAMPLED_GENUS:
        add(
            f"odd-preserving count g={ODDTC_SAMPLED_GENUS} (sampled)",
            lambda: odd_preserving(ODDTC_SAMPLED_GENUS, ODDTC_SAMPLES, seed),
        )
    for g in range(1, min(REFINEMENT_MAX, max_genus) + 1):
        add(f"refinement identity g={g}", lambda g=g: refinement_identity(g))
        add(f"difference-map fibers g={g}", lambda g=g: difference_fibers(g))
        add(f"hyperelliptic bridge g={g}", lambda g=g: bridge(g))
    for g in range(1, 3):
        add(f"twist is a group action g={g}", lambda g=g: twist_action(g))
    for g in range(3, min(ODDTC_EXHAUSTIVE_MAX, max_genus) + 1):
        add(f"degree over T_g by enumeration g={g}", lambda g=g: teixidor_degree_oracle(g))
    add("genus-3 example 28/35", g3_example)
    for g in range(1, min(FLIP_RULE_MAX, max_genus) + 1):
        add(f"parity-flip rule g={g}", lambda g=g: flip_rule(g))
        add(f"subset-model odd-preserving g={g}", lambda g=g: subset_odd_preserving(g))
    for g in range(1, min(CENSUS_MAX, max_genus) + 1):
        add(f"class counts and strata g={g}", lambda g=g: class_counts(g))
    for g in range(3, max_genus + 1):
        add(f"boundary-pair identity g={g}", lambda g=g: boundary_identity(g))
    for g in range(3, max_genus + 1):
        add(f"sum identity g={g}", lambda g=g: sum_identity(g))
        add(f"pushforward bookkeeping g={g}", lambda g=g: pushforward_bookkeeping(g))
        add(f"pushforward of closed form g={g}", lambda g=g: pushforward_consistency(g))
        add(f"G-curve equations g={g}", lambda g=g: g_curve_identities(g))
        add(f"derivation g={g}", lambda g=g: derivation(g))

    results = []
    for name, fn in plan:
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an aborted suite
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - start))
    return results
