"""Rational Picard groups of the compactified curve and Prym moduli spaces.

Classes are exact-rational coefficient vectors on the standard bases

    Pic(Mbar_g)_Q :  lambda, delta_0, delta_1, ..., delta_[g/2]
    Pic(Rbar_g)_Q :  lambda, delta_0', delta_0'', delta_0^ram,
                     and for 1 <= i <= [g/2]:  delta_i, delta_{g-i}, delta_{i:g-i}

and are stored in display form: ``a`` on lambda and ``b`` on each boundary
class stand for  a*lambda - sum b*delta.  All maps below are linear and send
boundary classes to boundary classes, so the convention is preserved.

For even g the labels delta_{g/2} and delta_{g-g/2} coincide and name one
slot.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import ClassVar, Iterator, Mapping

from .f2theta import Parity

LAMBDA = "lambda"
D0_NONADM = "delta_0'"
D0_WIRT = "delta_0''"
D0_RAM = "delta_0^ram"
D0 = "delta_0"

Number = int | Fraction


def delta(k: int) -> str:
    return f"delta_{k}"


def delta_mixed(i: int, g: int) -> str:
    return f"delta_{i}:{g - i}"


def _p2(k: int) -> Fraction:
    return Fraction(2) ** k


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 3:
        raise ValueError(f"divisor classes are defined for genus g >= 3, got {g!r}")


@lru_cache(maxsize=None)
def m_basis(g: int) -> tuple[str, ...]:
    _check_genus(g)
    return (LAMBDA, D0) + tuple(delta(i) for i in range(1, g // 2 + 1))


@lru_cache(maxsize=None)
def _slots(basis: tuple[str, ...]) -> dict[str, int]:
    return {label: k for k, label in enumerate(basis)}


@lru_cache(maxsize=None)
def r_basis(g: int) -> tuple[str, ...]:
    _check_genus(g)
    labels = [LAMBDA, D0_NONADM, D0_WIRT, D0_RAM]
    for i in range(1, g // 2 + 1):
        labels.append(delta(i))
        if g - i != i:
            labels.append(delta(g - i))
        labels.append(delta_mixed(i, g))
    return tuple(labels)


class GenusMismatch(ValueError):
    pass


@dataclass(frozen=True)
class _Class:
    genus: int
    coefficients: tuple[Fraction, ...]

    space: ClassVar[str]

    @classmethod
    def basis(cls, g: int) -> tuple[str, ...]:
        raise NotImplementedError

    def __post_init__(self) -> None:
        labels = self.basis(self.genus)
        if len(self.coefficients) != len(labels):
            raise ValueError(f"expected {len(labels)} coefficients, got {len(self.coefficients)}")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def zero(cls, g: int):
        return cls(g, (Fraction(0),) * len(cls.basis(g)))

    @classmethod
    def from_mapping(cls, g: int, coeffs: Mapping[str, Number]):
        labels = cls.basis(g)
        unknown = set(coeffs) - set(labels)
        if unknown:
            raise KeyError(f"labels not in the {cls.space} basis for g={g}: {sorted(unknown)}")
        return cls(g, tuple(Fraction(coeffs.get(label, 0)) for label in labels))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.basis(self.genus)

    def __getitem__(self, label: str) -> Fraction:
        """Display coefficient: a for lambda, b for a boundary class."""
        return self.coefficients[_slots(self.labels)[label]]

    def signed(self, label: str) -> Fraction:
        """The actual coefficient of ``label`` in the class."""
        value = self[label]
        return value if label == LAMBDA else -value

    def items(self) -> Iterator[tuple[str, Fraction]]:
        return zip(self.labels, self.coefficients)

    def as_dict(self) -> dict[str, Fraction]:
        return dict(self.items())

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.genus != self.genus:
            raise GenusMismatch(f"genus {self.genus} vs {other.genus}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.genus, tuple(x + y for x, y in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.genus, tuple(x - y for x, y in zip(self.coefficients, other.coefficients)))

    def __mul__(self, scalar: Number):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return type(self)(self.genus, tuple(scalar * x for x in self.coefficients))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def fractional_labels(self) -> list[str]:
        return [label for label, c in self.items() if c.denominator != 1]


@dataclass(frozen=True)
class MBarClass(_Class):
    space: ClassVar[str] = "Mbar"

    @classmethod
    def basis(cls, g: int) -> tuple[str, ...]:
        return m_basis(g)


@dataclass(frozen=True)
class RBarClass(_Class):
    space: ClassVar[str] = "Rbar"

    @classmethod
    def basis(cls, g: int) -> tuple[str, ...]:
        return r_basis(g)


def covering_degree(g: int) -> int:
    """Degree of Rbar_g -> Mbar_g: the number of nonzero 2-torsion points."""
    return 2 ** (2 * g) - 1


def pullback(c: MBarClass) -> RBarClass:
    g = c.genus
    out = {LAMBDA: c[LAMBDA], D0_NONADM: c[D0], D0_WIRT: c[D0], D0_RAM: 2 * c[D0]}
    for i in range(1, g // 2 + 1):
        # at i = g/2 the first two labels coincide, and the slot gets b_i once
        out[delta(i)] = c[delta(i)]
        out[delta(g - i)] = c[delta(i)]
        out[delta_mixed(i, g)] = c[delta(i)]
    return RBarClass.from_mapping(g, out)


def pushforward_degrees(g: int) -> dict[str, tuple[str, int]]:
    """For each Rbar label, the Mbar label it lies over and the degree.

    The delta_i components are counted by which side of the node carries a
    nontrivial 2-torsion point: (2^{2i}-1) choices on C_i alone,
    (2^{2(g-i)}-1) on C_{g-i} alone, and the product for both.  For even g the
    folded slot delta_{g/2} collects both one-sided components.
    """
    _check_genus(g)
    out = {
        LAMBDA: (LAMBDA, covering_degree(g)),
        D0_NONADM: (D0, 2 * (2 ** (2 * g - 2) - 1)),
        D0_WIRT: (D0, 1),
        D0_RAM: (D0, 2 ** (2 * g - 2)),
    }
    for i in range(1, g // 2 + 1):
        left, right = 2 ** (2 * i) - 1, 2 ** (2 * (g - i)) - 1
        if g - i == i:
            out[delta(i)] = (delta(i), left + right)
        else:
            out[delta(i)] = (delta(i), left)
            out[delta(g - i)] = (delta(i), right)
        out[delta_mixed(i, g)] = (delta(i), left * right)
    return out


def pushforward(c: RBarClass) -> MBarClass:
    g = c.genus
    out: dict[str, Fraction] = {label: Fraction(0) for label in m_basis(g)}
    for label, (target, degree) in pushforward_degrees(g).items():
        out[target] += degree * c[label]
    return MBarClass.from_mapping(g, out)


def teixidor_class(g: int) -> MBarClass:
    """Class of the closure of the locus of curves with a semicanonical pencil."""
    _check_genus(g)
    scale = _p2(g - 3)
    coeffs = {LAMBDA: scale * (2**g + 1), D0: scale * _p2(g - 3)}
    for i in range(1, g // 2 + 1):
        coeffs[delta(i)] = scale * (2 ** (g - i) - 1) * (2**i - 1)
    return MBarClass.from_mapping(g, coeffs)


def _theorem_a_even(g: int) -> dict[str, Fraction]:
    s = _p2(g - 3)
    out = {
        LAMBDA: s * (2 ** (g - 1) + 1),
        D0_NONADM: _p2(2 * g - 7),
        D0_WIRT: Fraction(0),
        D0_RAM: _p2(g - 5) * (2 ** (g - 1) + 1),
    }
    for i in range(1, g // 2 + 1):
        _put(out, delta(i), s * (2 ** (g - i) - 1) * (2 ** (i - 1) - 1))
        _put(out, delta(g - i), s * (2 ** (g - i - 1) - 1) * (2**i - 1))
        _put(out, delta_mixed(i, g), s * (2 ** (g - 1) - 2 ** (i - 1) - 2 ** (g - i - 1) + 1))
    return out


def _theorem_a_odd(g: int) -> dict[str, Fraction]:
    s = _p2(g - 3)
    out = {
        LAMBDA: _p2(2 * g - 4),
        D0_NONADM: _p2(2 * g - 7),
        D0_WIRT: _p2(2 * g - 6),
        D0_RAM: _p2(g - 5) * (2 ** (g - 1) - 1),
    }
    for i in range(1, g // 2 + 1):
        _put(out, delta(i), _p2(g + i - 4) * (2 ** (g - i) - 1))
        _put(out, delta(g - i), _p2(2 * g - i - 4) * (2**i - 1))
        _put(out, delta_mixed(i, g), s * (2 ** (g - 1) - 2 ** (g - i - 1) - 2 ** (i - 1)))
    return out


def _put(out: dict[str, Fraction], label: str, value: Fraction) -> None:
    # the folded slot at i = g/2 is written twice and must agree
    if label in out and out[label] != value:
        raise AssertionError(f"inconsistent values {out[label]} and {value} for {label}")
    out[label] = value


def theorem_a_class(g: int, parity: Parity | str) -> RBarClass:
    """Closed-form class of the even (resp. odd) Prym semicanonical-pencil divisor."""
    _check_genus(g)
    if Parity.parse(parity) is Parity.EVEN:
        return RBarClass.from_mapping(g, _theorem_a_even(g))
    return RBarClass.from_mapping(g, _theorem_a_odd(g))


# ---------- test curves


class FVariant(enum.Enum):
    """Which boundary component of pi^{-1}(Delta_i) the lifted F curve lies in."""

    DELTA_I = "i"
    DELTA_G_MINUS_I = "g-i"
    DELTA_MIXED = "i:g-i"

    def label(self, g: int, i: int) -> str:
        if self is FVariant.DELTA_I:
            return delta(i)
        if self is FVariant.DELTA_G_MINUS_I:
            return delta(g - i)
        return delta_mixed(i, g)


class GVariant(enum.Enum):
    WIRTINGER = "wirtinger"
    NONADMISSIBLE = "nonadmissible"


@dataclass(frozen=True)
class TestCurveRow:
    """Intersection numbers of a one-parameter family with a basis."""

    __test__ = False  # not a pytest class

    genus: int
    name: str
    space: str
    entries: tuple[Fraction, ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return m_basis(self.genus) if self.space == MBarClass.space else r_basis(self.genus)

    @classmethod
    def build(cls, g: int, name: str, space: str, values: Mapping[str, Number]) -> "TestCurveRow":
        labels = m_basis(g) if space == MBarClass.space else r_basis(g)
        unknown = set(values) - set(labels)
        if unknown:
            raise KeyError(f"labels not in the {space} basis: {sorted(unknown)}")
        return cls(g, name, space, tuple(Fraction(values.get(label, 0)) for label in labels))

    def __getitem__(self, label: str) -> Fraction:
        return self.entries[_slots(self.labels)[label]]

    def items(self) -> Iterator[tuple[str, Fraction]]:
        return zip(self.labels, self.entries)


def _check_f_index(g: int, i: int) -> None:
    _check_genus(g)
    if not 1 <= i <= g // 2:
        raise ValueError(f"need 1 <= i <= g/2, got g={g}, i={i}")
    if g - i - 1 < 1:
        raise ValueError(f"the F family is degenerate for g={g}, i={i}")


def f_curve_row_mbar(g: int, i: int) -> TestCurveRow:
    """C_i with a fixed point glued to a moving point of C_{g-i}."""
    _check_f_index(g, i)
    return TestCurveRow.build(g, f"F[{i}]", MBarClass.space, {delta(i): -2 * (g - i - 1)})


def f_curve_row(g: int, i: int, variant: FVariant | str) -> TestCurveRow:
    """A component of the preimage of F, lying in the chosen boundary divisor."""
    _check_f_index(g, i)
    variant = FVariant(variant)
    label = variant.label(g, i)
    return TestCurveRow.build(g, f"F~[{i}, {label}]", RBarClass.space, {label: -2 * (g - i - 1)})


def g_curve_row_mbar(g: int) -> TestCurveRow:
    """A genus g-1 curve with a fixed point glued to a moving point."""
    _check_genus(g)
    return TestCurveRow.build(g, "G", MBarClass.space, {D0: 2 - 2 * g, delta(1): 1})


def g_curve_row(g: int, variant: GVariant | str) -> TestCurveRow:
    _check_genus(g)
    variant = GVariant(variant)
    if variant is GVariant.WIRTINGER:
        return TestCurveRow.build(g, "G~''", RBarClass.space, {D0_WIRT: 2 - 2 * g, delta(1): 1})
    n = 2 ** (2 * g - 2) - 1
    return TestCurveRow.build(
        g,
        "G~'",
        RBarClass.space,
        {D0_NONADM: 2 * (2 - 2 * g) * n, delta(g - 1): n, delta_mixed(1, g): n},
    )


def g_lift_degree(g: int, variant: GVariant | str) -> int:
    """Degree of the lifted G family over G."""
    if GVariant(variant) is GVariant.WIRTINGER:
        return 1
    return 2 * (2 ** (2 * g - 2) - 1)


def intersect(row: TestCurveRow, c: MBarClass | RBarClass) -> Fraction:
    if row.genus != c.genus:
        raise GenusMismatch(f"row of genus {row.genus} against class of genus {c.genus}")
    if row.space != c.space:
        raise TypeError(f"row lives on {row.space}, class on {c.space}")
    return sum((c.signed(label) * x for label, x in row.items()), Fraction(0))
