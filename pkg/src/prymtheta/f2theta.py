"""Finite symplectic geometry over F2 and theta-characteristic counting.

A theta-characteristic is modelled by a quadratic refinement of the standard
symplectic pairing on F2^(2g); its parity is the Arf invariant.  Vectors and
forms are stored as integers whose bits follow the symplectic basis

    bit i-1     <->  e_i      (1 <= i <= g)
    bit g+i-1   <->  f_i      (1 <= i <= g)

with <e_i, f_i> = 1 and every other pair of basis vectors orthogonal.

The closed-form counts live next to brute-force oracles (``census``,
``brute_odd_preserving`` and friends) that enumerate forms directly and never
call the closed forms.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Sequence

from ._config import DEFAULT_SEED, check_cap


class GenusMismatch(ValueError):
    pass


class Parity(enum.Enum):
    EVEN = 0
    ODD = 1

    @classmethod
    def from_bit(cls, bit: int) -> "Parity":
        return cls.ODD if bit & 1 else cls.EVEN

    @classmethod
    def parse(cls, value: "Parity | str") -> "Parity":
        if isinstance(value, Parity):
            return value
        try:
            return cls[value.upper()]
        except KeyError:
            raise ValueError(f"unknown parity {value!r}") from None

    def __str__(self) -> str:
        return self.name.lower()


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 1:
        raise ValueError(f"genus must be a positive integer, got {g!r}")


def _mask(g: int) -> int:
    return (1 << g) - 1


def _swap_halves(bits: int, g: int) -> int:
    m = _mask(g)
    return ((bits & m) << g) | ((bits >> g) & m)


@dataclass(frozen=True)
class F2Vector:
    genus: int
    bits: int

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        if not 0 <= self.bits < 1 << (2 * self.genus):
            raise ValueError(f"bits {self.bits:#x} do not fit F2^{2 * self.genus}")

    @classmethod
    def zero(cls, g: int) -> "F2Vector":
        return cls(g, 0)

    @classmethod
    def e(cls, g: int, i: int) -> "F2Vector":
        if not 1 <= i <= g:
            raise IndexError(f"e_{i} is not a basis vector in genus {g}")
        return cls(g, 1 << (i - 1))

    @classmethod
    def f(cls, g: int, i: int) -> "F2Vector":
        if not 1 <= i <= g:
            raise IndexError(f"f_{i} is not a basis vector in genus {g}")
        return cls(g, 1 << (g + i - 1))

    @classmethod
    def from_coordinates(cls, e: Sequence[int], f: Sequence[int]) -> "F2Vector":
        if len(e) != len(f):
            raise ValueError("e- and f-coordinates must have equal length")
        g = len(e)
        bits = 0
        for k, (x, y) in enumerate(zip(e, f)):
            bits |= (x & 1) << k
            bits |= (y & 1) << (g + k)
        return cls(g, bits)

    @property
    def coordinates(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(2 * self.genus))

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if not isinstance(other, F2Vector):
            return NotImplemented
        if other.genus != self.genus:
            raise GenusMismatch(f"cannot add vectors of genus {self.genus} and {other.genus}")
        return F2Vector(self.genus, self.bits ^ other.bits)


@dataclass(frozen=True)
class QuadraticForm:
    """Quadratic refinement of the symplectic pairing, given by its basis values."""

    genus: int
    values: int

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        if not 0 <= self.values < 1 << (2 * self.genus):
            raise ValueError(f"values {self.values:#x} do not fit 2g = {2 * self.genus} bits")

    @classmethod
    def from_basis_values(cls, e_values: Sequence[int], f_values: Sequence[int]) -> "QuadraticForm":
        v = F2Vector.from_coordinates(e_values, f_values)
        return cls(v.genus, v.bits)

    def __call__(self, v: F2Vector) -> int:
        return evaluate(self, v)


def weil_pairing(u: F2Vector, v: F2Vector) -> int:
    if u.genus != v.genus:
        raise GenusMismatch(f"genus {u.genus} vs {v.genus}")
    g = u.genus
    m = _mask(g)
    return ((u.bits & m & (v.bits >> g)).bit_count() + ((u.bits >> g) & v.bits & m).bit_count()) & 1


def evaluate(q: QuadraticForm, v: F2Vector) -> int:
    if q.genus != v.genus:
        raise GenusMismatch(f"form of genus {q.genus} evaluated on vector of genus {v.genus}")
    g = q.genus
    linear = (q.values & v.bits).bit_count()
    cross = (v.bits & _mask(g) & (v.bits >> g)).bit_count()
    return (linear + cross) & 1


def arf(q: QuadraticForm) -> Parity:
    g = q.genus
    return Parity.from_bit((q.values & _mask(g) & (q.values >> g)).bit_count())


def twist(q: QuadraticForm, eta: F2Vector) -> QuadraticForm:
    """The form x -> q(x) + <x, eta>."""
    if q.genus != eta.genus:
        raise GenusMismatch(f"form of genus {q.genus} twisted by vector of genus {eta.genus}")
    # <e_i, eta> = eta_{f_i} and <f_i, eta> = eta_{e_i}
    return QuadraticForm(q.genus, q.values ^ _swap_halves(eta.bits, q.genus))


def arf_from_table(values: Iterable[int]) -> Parity:
    """Arf invariant of a quadratic form given by its full value table.

    Majority rule: an even form vanishes on more than half of F2^(2g), an odd
    one on fewer.  Needs no symplectic basis, which is why the hyperelliptic
    bridge uses it.
    """
    counts = Counter(v & 1 for v in values)
    total = counts[0] + counts[1]
    g2 = total.bit_length() - 1
    if total != 1 << g2 or g2 % 2:
        raise ValueError(f"table size {total} is not 2^(2g)")
    if counts[0] == counts[1]:
        raise ValueError("value table is not that of a nondegenerate quadratic form")
    return Parity.EVEN if counts[0] > counts[1] else Parity.ODD


# ---------- closed-form counts


def count_even(g: int) -> int:
    _check_genus(g)
    return 2 ** (g - 1) * (2**g + 1)


def count_odd(g: int) -> int:
    _check_genus(g)
    return 2 ** (g - 1) * (2**g - 1)


def count_odd_preserving(g: int, eta: F2Vector | None = None, *, verify: bool = False) -> int:
    """Number of odd forms whose twist by a fixed nonzero ``eta`` is still odd.

    The count does not depend on ``eta``; passing one only validates it.  With
    ``verify=True`` the independence is checked by enumeration for every
    nonzero vector (bounded by the enumeration cap).
    """
    _check_genus(g)
    if eta is not None:
        if eta.genus != g:
            raise GenusMismatch(f"eta has genus {eta.genus}, expected {g}")
        if eta.is_zero():
            raise ValueError("eta must be nonzero; for eta = 0 every odd form stays odd (use count_odd)")
    value = 2 ** (g - 1) * (2 ** (g - 1) - 1)
    if verify:
        seen = set(difference_fiber_counts(g).values())
        if seen != {value}:
            raise AssertionError(f"odd-preserving counts {sorted(seen)} differ from {value}")
    return value


def count_boundary_pairs(g: int, i: int, kind: Literal["ee", "oo"]) -> int:
    """Pairs of theta-characteristics on the two sides of a genus-(i, g-i) split
    with the given parities."""
    if not 1 <= i <= g - 1:
        raise ValueError(f"need 1 <= i <= g-1, got g={g}, i={i}")
    if kind == "ee":
        return 2 ** (g - 2) * (2**i + 1) * (2 ** (g - i) + 1)
    if kind == "oo":
        return 2 ** (g - 2) * (2**i - 1) * (2 ** (g - i) - 1)
    raise ValueError(f"kind must be 'ee' or 'oo', got {kind!r}")


def degree_over_teixidor(g: int, parity: Parity | str) -> int:
    """Degree of the even/odd Prym semicanonical-pencil divisor over the
    Teixidor divisor: the number of nontrivial eta twisting an even
    characteristic into the given parity."""
    if g < 3:
        raise ValueError(f"degree over the Teixidor divisor needs g >= 3, got {g}")
    if Parity.parse(parity) is Parity.EVEN:
        return count_even(g) - 1
    return count_odd(g)


# ---------- enumeration and brute-force oracles


def enumerate_vectors(g: int, cap: int | None = None) -> Iterator[F2Vector]:
    _check_genus(g)
    check_cap(g, cap)
    for bits in range(1 << (2 * g)):
        yield F2Vector(g, bits)


def enumerate_forms(g: int, cap: int | None = None) -> Iterator[QuadraticForm]:
    """All 2^(2g) quadratic refinements, in increasing order of basis values."""
    _check_genus(g)
    check_cap(g, cap)
    for values in range(1 << (2 * g)):
        yield QuadraticForm(g, values)


def census(g: int, cap: int | None = None) -> dict[Parity, int]:
    tally = Counter(arf(q) for q in enumerate_forms(g, cap))
    return {Parity.EVEN: tally[Parity.EVEN], Parity.ODD: tally[Parity.ODD]}


@lru_cache(maxsize=None)
def _odd_forms(g: int) -> tuple[QuadraticForm, ...]:
    return tuple(q for q in enumerate_forms(g, cap=g) if arf(q) is Parity.ODD)


def brute_odd_preserving(g: int, eta: F2Vector, cap: int | None = None) -> int:
    check_cap(g, cap)
    return sum(1 for q in _odd_forms(g) if arf(twist(q, eta)) is Parity.ODD)


def brute_parity_flips(g: int, eta: F2Vector, cap: int | None = None) -> int:
    return sum(1 for q in enumerate_forms(g, cap) if arf(q) is not arf(twist(q, eta)))


def brute_degree_over_teixidor(
    g: int, parity: Parity | str, base: QuadraticForm | None = None, cap: int | None = None
) -> int:
    """#{eta != 0 : twist(base, eta) has the given parity} for an even ``base``."""
    parity = Parity.parse(parity)
    if base is None:
        base = QuadraticForm(g, 0)
    if arf(base) is not Parity.EVEN:
        raise ValueError("base form must be even")
    return sum(
        1
        for eta in enumerate_vectors(g, cap)
        if not eta.is_zero() and arf(twist(base, eta)) is parity
    )


def brute_boundary_pairs(g: int, i: int, kind: Literal["ee", "oo"], cap: int | None = None) -> int:
    """Count pairs (q_i, q_{g-i}) of forms on the two sides with parities ``kind``."""
    if not 1 <= i <= g - 1:
        raise ValueError(f"need 1 <= i <= g-1, got g={g}, i={i}")
    want = Parity.EVEN if kind == "ee" else Parity.ODD
    left = census(i, cap)[want]
    right = census(g - i, cap)[want]
    return left * right


def difference_fiber_counts(g: int, cap: int | None = None) -> dict[int, int]:
    """Fibers of (M, N) -> M - N on ordered pairs of distinct odd forms.

    Returns a map from the bits of each nonzero eta to its fiber size.  Two
    forms differ by the linear functional <., eta>, so eta is recovered from
    the XOR of their basis values.
    """
    odd = [q.values for q in enumerate_forms(g, cap) if arf(q) is Parity.ODD]
    fibers = {bits: 0 for bits in range(1, 1 << (2 * g))}
    for m in odd:
        for n in odd:
            if m != n:
                fibers[_swap_halves(m ^ n, g)] += 1
    return fibers


def sample_nonzero_vectors(g: int, n: int, seed: int = DEFAULT_SEED) -> list[F2Vector]:
    rng = random.Random(seed)
    top = 1 << (2 * g)
    return [F2Vector(g, rng.randrange(1, top)) for _ in range(n)]
