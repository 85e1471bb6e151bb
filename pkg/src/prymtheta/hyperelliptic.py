"""Weierstrass-subset model of theta-characteristics on a hyperelliptic curve.

A hyperelliptic curve of genus g has Weierstrass points labelled 1..2g+2.
Two-torsion classes are even subsets modulo complement (group law: symmetric
difference); theta-characteristics are subsets T with |T| = g+1 (mod 2),
also modulo complement, and T stands for r*g^1_2 + S where S is the smaller
of T, T^c and r = (g-1-|S|)/2.

Subsets are bitmasks: label k is bit k-1.  Every class is stored by its
canonical representative: the member of {U, U^c} of smaller cardinality,
or, when both have g+1 elements, the one containing label 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Iterator

from ._config import check_cap
from .f2theta import GenusMismatch, Parity, arf_from_table


def _n(g: int) -> int:
    return 2 * g + 2


def _full(g: int) -> int:
    return (1 << _n(g)) - 1


def _canonical(g: int, mask: int) -> int:
    n = _n(g)
    c = mask.bit_count()
    if 2 * c < n:
        return mask
    comp = _full(g) ^ mask
    if 2 * c > n:
        return comp
    return mask if mask & 1 else comp


def _mask_of(g: int, indices: Iterable[int]) -> int:
    mask = 0
    for k in indices:
        if not 1 <= k <= _n(g):
            raise ValueError(f"Weierstrass label {k} out of range 1..{_n(g)}")
        mask |= 1 << (k - 1)
    return mask


def _members(mask: int) -> tuple[int, ...]:
    return tuple(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def _h0_mask(g: int, mask: int) -> int:
    c = mask.bit_count()
    return (g + 1 - min(c, _n(g) - c)) // 2


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 1:
        raise ValueError(f"genus must be a positive integer, got {g!r}")


@dataclass(frozen=True)
class TwoTorsionSubset:
    genus: int
    mask: int

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        if not 0 <= self.mask <= _full(self.genus):
            raise ValueError(f"mask {self.mask:#x} has labels beyond {_n(self.genus)}")
        if self.mask.bit_count() % 2:
            raise ValueError("a two-torsion subset must have even cardinality")
        object.__setattr__(self, "mask", _canonical(self.genus, self.mask))

    @classmethod
    def of(cls, g: int, indices: Iterable[int]) -> "TwoTorsionSubset":
        return cls(g, _mask_of(g, indices))

    @classmethod
    def identity(cls, g: int) -> "TwoTorsionSubset":
        return cls(g, 0)

    @property
    def members(self) -> tuple[int, ...]:
        return _members(self.mask)

    def is_trivial(self) -> bool:
        return self.mask == 0

    @property
    def index(self) -> int:
        """Dense label in 0..2^(2g)-1 compatible with the group law (XOR).

        Taking the representative that avoids the last label identifies the
        group with even subsets of 2g+1 labels, determined by their first 2g.
        """
        g = self.genus
        key = self.mask
        if key >> (_n(g) - 1) & 1:
            key ^= _full(g)
        return key & ((1 << (2 * g)) - 1)

    @classmethod
    def from_index(cls, g: int, index: int) -> "TwoTorsionSubset":
        if not 0 <= index < 1 << (2 * g):
            raise ValueError(f"index {index} out of range for genus {g}")
        key = index | ((index.bit_count() & 1) << (2 * g))
        return cls(g, key)

    def __add__(self, other: "TwoTorsionSubset") -> "TwoTorsionSubset":
        return add(self, other)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


@dataclass(frozen=True)
class ThetaSubset:
    genus: int
    mask: int

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        if not 0 <= self.mask <= _full(self.genus):
            raise ValueError(f"mask {self.mask:#x} has labels beyond {_n(self.genus)}")
        if (self.mask.bit_count() - self.genus - 1) % 2:
            raise ValueError(f"a theta subset in genus {self.genus} needs |T| = g+1 mod 2")
        object.__setattr__(self, "mask", _canonical(self.genus, self.mask))

    @classmethod
    def of(cls, g: int, indices: Iterable[int]) -> "ThetaSubset":
        return cls(g, _mask_of(g, indices))

    @property
    def members(self) -> tuple[int, ...]:
        return _members(self.mask)

    @property
    def dimension(self) -> int:
        return h0(self) - 1

    @property
    def fixed_part(self) -> tuple[int, ...]:
        """The Weierstrass points S in r*g^1_2 + S.  For r = -1 both T and
        T^c have g+1 points and the canonical one is returned."""
        return self.members

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


class DivisorKind(enum.Enum):
    EVEN_DIVISOR = "even-divisor"
    ODD_DIVISOR = "odd-divisor"

    def __str__(self) -> str:
        return self.value


def _same_genus(a, b) -> None:
    if a.genus != b.genus:
        raise GenusMismatch(f"genus {a.genus} vs {b.genus}")


def add(u: TwoTorsionSubset, v: TwoTorsionSubset) -> TwoTorsionSubset:
    _same_genus(u, v)
    return TwoTorsionSubset(u.genus, u.mask ^ v.mask)


def pairing(u: TwoTorsionSubset, v: TwoTorsionSubset) -> int:
    _same_genus(u, v)
    return (u.mask & v.mask).bit_count() & 1


def h0(t: ThetaSubset) -> int:
    return _h0_mask(t.genus, t.mask)


def parity(t: ThetaSubset) -> Parity:
    return Parity.from_bit(h0(t))


def twist_theta(t: ThetaSubset, u: TwoTorsionSubset) -> ThetaSubset:
    _same_genus(t, u)
    return ThetaSubset(t.genus, t.mask ^ u.mask)


def flips_by_rule(t: ThetaSubset, i: int, j: int) -> bool:
    """Parity change of T under eta = R_i - R_j, read off the fixed part:
    the parity flips unless exactly one of R_i, R_j lies in S."""
    if i == j:
        raise ValueError("need two distinct Weierstrass points")
    s = set(t.fixed_part)
    return len({i, j} & s) != 1


def classify_genus3(u: TwoTorsionSubset) -> DivisorKind:
    if u.genus != 3:
        raise ValueError(f"classify_genus3 needs genus 3, got {u.genus}")
    if u.is_trivial():
        raise ValueError("the trivial class lies on neither divisor")
    size = u.mask.bit_count()
    if size == 2:
        return DivisorKind.ODD_DIVISOR
    if size == 4:
        return DivisorKind.EVEN_DIVISOR
    raise AssertionError(f"non-canonical genus-3 class {u}")


def enumerate_two_torsion(g: int, cap: int | None = None, *, nontrivial: bool = False) -> Iterator[TwoTorsionSubset]:
    """Canonical two-torsion classes, by increasing size then lexicographically."""
    _check_genus(g)
    check_cap(g, cap)
    yield from (
        TwoTorsionSubset(g, m) for m in _canonical_masks(g, 0) if not (nontrivial and m == 0)
    )


def enumerate_theta(g: int, cap: int | None = None) -> Iterator[ThetaSubset]:
    _check_genus(g)
    check_cap(g, cap)
    yield from (ThetaSubset(g, m) for m in _canonical_masks(g, (g + 1) % 2))


def _canonical_masks(g: int, size_parity: int) -> Iterator[int]:
    n = _n(g)
    for size in range(size_parity, g + 2, 2):
        if size == g + 1:
            for rest in combinations(range(1, n), size - 1):
                yield 1 | sum(1 << k for k in rest)
        else:
            for combo in combinations(range(n), size):
                yield sum(1 << k for k in combo)


def semicanonical_pencils(g: int, cap: int | None = None) -> list[ThetaSubset]:
    """Even, effective theta-characteristics: h0 even and at least 2."""
    if g < 3:
        raise ValueError(f"semicanonical pencils are considered for g >= 3, got {g}")
    return [t for t in enumerate_theta(g, cap) if h0(t) >= 2 and h0(t) % 2 == 0]


class ThetaForm:
    """q_T(U) = h0(T + U) + h0(T) mod 2 on two-torsion classes."""

    def __init__(self, t: ThetaSubset, cap: int | None = None) -> None:
        check_cap(t.genus, cap)
        self.theta = t
        self._h0 = h0(t)

    def __call__(self, u: TwoTorsionSubset) -> int:
        _same_genus(self.theta, u)
        return (_h0_mask(u.genus, self.theta.mask ^ u.mask) + self._h0) & 1

    def table(self) -> list[int]:
        """Values indexed by ``TwoTorsionSubset.index``."""
        g = self.theta.genus
        return [self(TwoTorsionSubset.from_index(g, k)) for k in range(1 << (2 * g))]

    def arf(self) -> Parity:
        return arf_from_table(self.table())


def form_from_subset(t: ThetaSubset, cap: int | None = None) -> Callable[[TwoTorsionSubset], int]:
    return ThetaForm(t, cap)
