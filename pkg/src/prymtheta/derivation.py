"""Solve for the even/odd divisor classes from counts and test curves.

The derivation runs in three steps at a fixed numeric genus:

1. compare pushforwards with deg * [T_g] to get the lambda coefficients;
2. intersect with lifts of the F test curves, whose counting side comes from
   theta-characteristic counts, to get every delta_i-type coefficient;
3. intersect with lifts of the G test curve to get d_0'' and d_0', then use
   the delta_0 pushforward relation for d_0^ram.

Coefficients of one parity are obtained from the other by subtracting from
the pullback of the Teixidor class.  Every equation is re-evaluated on the
final classes, so a wrong solve shows up as a nonzero residue rather than
being absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable

from . import picard as pic
from .f2theta import Parity, count_odd, count_odd_preserving, degree_over_teixidor
from .picard import FVariant, GVariant, RBarClass, TestCurveRow
from .render import format_fraction

ASSUMPTIONS = (
    "test-curve intersections with the divisors are transverse (multiplicity one)",
)


class DerivationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Equation:
    name: str
    step: int
    parity: Parity
    lhs: Fraction
    rhs: Fraction

    @property
    def residue(self) -> Fraction:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "step": self.step,
            "parity": str(self.parity),
            "lhs": format_fraction(self.lhs),
            "rhs": format_fraction(self.rhs),
            "residue": format_fraction(self.residue),
        }


@dataclass
class DerivationReport:
    genus: int
    even: RBarClass
    odd: RBarClass
    equations: list[Equation]
    order: list[str]
    assumptions: tuple[str, ...] = ASSUMPTIONS
    mismatches: list[str] = field(default_factory=list)

    @property
    def residues_zero(self) -> bool:
        return all(eq.residue == 0 for eq in self.equations)

    @property
    def match(self) -> bool:
        return not self.mismatches

    @property
    def ok(self) -> bool:
        return self.match and self.residues_zero

    def nonzero_residues(self) -> list[Equation]:
        return [eq for eq in self.equations if eq.residue != 0]

    def raise_for_failure(self) -> None:
        if not self.ok:
            bad = [eq.name for eq in self.nonzero_residues()] + self.mismatches
            raise DerivationError(f"derivation failed at g={self.genus}: {bad}")

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "match": self.match,
            "residues_zero": self.residues_zero,
            "even": {label: format_fraction(c) for label, c in self.even.items()},
            "odd": {label: format_fraction(c) for label, c in self.odd.items()},
            "mismatches": list(self.mismatches),
            "order": list(self.order),
            "equations": [eq.to_dict() for eq in self.equations],
            "assumptions": list(self.assumptions),
        }


def expected_f_count(g: int, i: int, variant: FVariant | str, parity: Parity | str) -> Fraction:
    """Counting side of (lift of F_i) . [T^e_g] or [T^o_g].

    A point of the family lies on the divisor when the moving point sits in
    the support of an odd theta-characteristic on C_{g-i} ((g-i-1) points
    each) and the two sides' twisted parities agree (even divisor) or
    disagree (odd divisor).
    """
    pic.f_curve_row(g, i, variant)  # validates (g, i)
    variant = FVariant(variant)
    parity = Parity.parse(parity)
    points = g - i - 1

    def noo(k: int) -> int:
        return count_odd_preserving(k)

    def noe(k: int) -> int:
        return count_odd(k) - count_odd_preserving(k)

    same = parity is Parity.EVEN
    if variant is FVariant.DELTA_I:
        # eta lives on C_i only
        n = count_odd(g - i) * (noo(i) if same else noe(i))
    elif variant is FVariant.DELTA_G_MINUS_I:
        n = count_odd(i) * (noo(g - i) if same else noe(g - i))
    elif same:
        n = noo(i) * noo(g - i) + noe(i) * noe(g - i)
    else:
        n = noo(i) * noe(g - i) + noe(i) * noo(g - i)
    return Fraction(points * n)


def _solve_row(row: TestCurveRow, known: dict[str, Fraction], unknown: str, rhs: Fraction) -> Fraction:
    """Solve row . (a*lambda - sum b*delta) = rhs for the single coefficient ``unknown``."""
    base = Fraction(0)
    for label, x in row.items():
        if x == 0 or label == unknown:
            continue
        if label not in known:
            raise DerivationError(f"{row.name}: coefficient {label} needed before {unknown}")
        base += (known[label] if label == pic.LAMBDA else -known[label]) * x
    weight = row[unknown] if unknown == pic.LAMBDA else -row[unknown]
    if weight == 0:
        raise DerivationError(f"{row.name} does not meet {unknown}")
    return (rhs - base) / weight


def derive_classes(g: int) -> DerivationReport:
    if g < 3:
        raise ValueError(f"the derivation needs g >= 3, got {g}")
    teix = pic.teixidor_class(g)
    total = pic.pullback(teix)
    deg = {p: degree_over_teixidor(g, p) for p in Parity}
    push_deg = pic.pushforward_degrees(g)
    n_cover = pic.covering_degree(g)

    solved: dict[Parity, dict[str, Fraction]] = {Parity.EVEN: {}, Parity.ODD: {}}
    order: list[str] = []
    # equations are closures evaluated on the final classes
    pending: list[tuple[str, int, Parity, Callable[[RBarClass], Fraction], Fraction]] = []
    pushed = lru_cache(maxsize=None)(pic.pushforward)

    def set_coeff(parity: Parity, label: str, value: Fraction, how: str) -> None:
        bucket = solved[parity]
        if label in bucket:
            if bucket[label] != value:
                raise DerivationError(f"{parity} {label}: {bucket[label]} vs {value} from {how}")
            return
        bucket[label] = value
        order.append(f"{parity} {label} <- {how}")

    def complement(parity: Parity, label: str) -> None:
        other = Parity.ODD if parity is Parity.EVEN else Parity.EVEN
        set_coeff(parity, label, total[label] - solved[other][label], "complement in pi^*[T_g]")

    def row_equation(name: str, step: int, parity: Parity, row: TestCurveRow, rhs: Fraction) -> None:
        pending.append((name, step, parity, lambda c, row=row: pic.intersect(row, c), rhs))

    def push_equation(label: str, parity: Parity) -> None:
        rhs = deg[parity] * teix[label]
        pending.append((f"pushforward {label}", 1, parity, lambda c, label=label: pushed(c)[label], rhs))

    # step 1: lambda
    a = deg[Parity.EVEN] * teix[pic.LAMBDA] / n_cover
    set_coeff(Parity.EVEN, pic.LAMBDA, a, "pushforward comparison")
    complement(Parity.ODD, pic.LAMBDA)

    # step 2: F test curves, even side from counts, odd side by complement
    for i in range(1, g // 2 + 1):
        for variant in FVariant:
            row = pic.f_curve_row(g, i, variant)
            label = variant.label(g, i)
            for parity in Parity:
                row_equation(row.name, 2, parity, row, expected_f_count(g, i, variant, parity))
            rhs = expected_f_count(g, i, variant, Parity.EVEN)
            set_coeff(Parity.EVEN, label, _solve_row(row, solved[Parity.EVEN], label, rhs), row.name)
            complement(Parity.ODD, label)

    # step 3: G test curves on the odd side
    g_dot_t = pic.intersect(pic.g_curve_row_mbar(g), teix)

    wirt = pic.g_curve_row(g, GVariant.WIRTINGER)
    # twisting by the Wirtinger bundle flips every parity: all points land on T^o
    row_equation(wirt.name, 3, Parity.ODD, wirt, g_dot_t)
    row_equation(wirt.name, 3, Parity.EVEN, wirt, Fraction(0))
    set_coeff(Parity.ODD, pic.D0_WIRT, _solve_row(wirt, solved[Parity.ODD], pic.D0_WIRT, g_dot_t), wirt.name)

    nonadm = pic.g_curve_row(g, GVariant.NONADMISSIBLE)
    # the two gluings differ by the Wirtinger bundle: the total splits evenly
    share = pic.g_lift_degree(g, GVariant.NONADMISSIBLE) * g_dot_t / 2
    row_equation(nonadm.name, 3, Parity.ODD, nonadm, share)
    row_equation(nonadm.name, 3, Parity.EVEN, nonadm, share)
    set_coeff(Parity.ODD, pic.D0_NONADM, _solve_row(nonadm, solved[Parity.ODD], pic.D0_NONADM, share), nonadm.name)

    odd = solved[Parity.ODD]
    rhs0 = deg[Parity.ODD] * teix[pic.D0]
    known0 = push_deg[pic.D0_NONADM][1] * odd[pic.D0_NONADM] + push_deg[pic.D0_WIRT][1] * odd[pic.D0_WIRT]
    set_coeff(Parity.ODD, pic.D0_RAM, (rhs0 - known0) / push_deg[pic.D0_RAM][1], "pushforward delta_0")
    for label in (pic.D0_NONADM, pic.D0_WIRT, pic.D0_RAM):
        complement(Parity.EVEN, label)

    for parity in Parity:
        for label in pic.m_basis(g):
            push_equation(label, parity)

    even_cls = RBarClass.from_mapping(g, solved[Parity.EVEN])
    odd_cls = RBarClass.from_mapping(g, solved[Parity.ODD])
    classes = {Parity.EVEN: even_cls, Parity.ODD: odd_cls}
    equations = [
        Equation(name, step, parity, lhs_fn(classes[parity]), rhs)
        for name, step, parity, lhs_fn, rhs in pending
    ]
    equations.sort(key=lambda eq: eq.step)

    mismatches = []
    for parity, cls in classes.items():
        closed = pic.theorem_a_class(g, parity)
        for label, value in cls.items():
            if value != closed[label]:
                mismatches.append(f"{parity} {label}: solved {value}, closed form {closed[label]}")
    return DerivationReport(g, even_cls, odd_cls, equations, order, mismatches=mismatches)


@dataclass
class RangeSummary:
    reports: list[DerivationReport]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_ok else 1

    def to_dict(self) -> dict:
        return {
            "all_ok": self.all_ok,
            "genera": [r.genus for r in self.reports],
            "failures": [r.genus for r in self.reports if not r.ok],
        }


def verify_range(g_min: int, g_max: int) -> RangeSummary:
    if not 3 <= g_min <= g_max:
        raise ValueError(f"need 3 <= g_min <= g_max, got ({g_min}, {g_max})")
    return RangeSummary([derive_classes(g) for g in range(g_min, g_max + 1)])
