"""Coalitions as fixed-width bit masks over feature indices 0..n-1.

Hot paths work on raw ``int`` masks; :class:`Coalition` is the friendly
wrapper used at API boundaries.  Feature indices are 0-based internally and
converted to 1-based (or to names) only at the I/O layer.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidArgumentError

MAX_FEATURES = 64


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(members: Iterable[int], n: int) -> int:
    """Pack an iterable of 0-based feature indices into a mask."""
    mask = 0
    for i in members:
        if not 0 <= i < n:
            raise InvalidArgumentError(f"feature index {i} out of range for n={n}")
        mask |= 1 << i
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def validate_feature_count(n: int) -> None:
    if n < 1:
        raise InvalidArgumentError(f"need at least one feature, got n={n}")
    if n > MAX_FEATURES:
        raise InvalidArgumentError(
            f"n={n} exceeds the {MAX_FEATURES}-feature limit of mask coalitions"
        )


@dataclass(frozen=True)
class Coalition:
    """An immutable subset of the n features."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        validate_feature_count(self.n)
        if not 0 <= self.mask <= full_mask(self.n):
            raise InvalidArgumentError(
                f"mask {self.mask:#x} has members outside 0..{self.n - 1}"
            )

    @classmethod
    def from_members(cls, members: Iterable[int], n: int) -> "Coalition":
        return cls(mask_of(members, n), n)

    @classmethod
    def empty(cls, n: int) -> "Coalition":
        return cls(0, n)

    @classmethod
    def universe(cls, n: int) -> "Coalition":
        return cls(full_mask(n), n)

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and bool(self.mask >> i & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def _check_universe(self, other: "Coalition") -> None:
        if self.n != other.n:
            raise InvalidArgumentError(
                f"coalitions over different universes: n={self.n} vs n={other.n}"
            )

    def union(self, other: "Coalition") -> "Coalition":
        self._check_universe(other)
        return Coalition(self.mask | other.mask, self.n)

    def intersection(self, other: "Coalition") -> "Coalition":
        self._check_universe(other)
        return Coalition(self.mask & other.mask, self.n)

    def difference(self, other: "Coalition") -> "Coalition":
        self._check_universe(other)
        return Coalition(self.mask & ~other.mask, self.n)

    def complement(self) -> "Coalition":
        return Coalition(full_mask(self.n) ^ self.mask, self.n)

    def issubset(self, other: "Coalition") -> bool:
        self._check_universe(other)
        return self.mask & other.mask == self.mask

    def issuperset(self, other: "Coalition") -> bool:
        self._check_universe(other)
        return self.mask & other.mask == other.mask

    def add(self, i: int) -> "Coalition":
        if not 0 <= i < self.n:
            raise InvalidArgumentError(f"feature index {i} out of range for n={self.n}")
        return Coalition(self.mask | 1 << i, self.n)

    def remove(self, i: int) -> "Coalition":
        if not 0 <= i < self.n:
            raise InvalidArgumentError(f"feature index {i} out of range for n={self.n}")
        return Coalition(self.mask & ~(1 << i), self.n)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __le__(self, other: "Coalition") -> bool:
        return self.issubset(other)

    def __ge__(self, other: "Coalition") -> bool:
        return self.issuperset(other)

    def __repr__(self) -> str:
        inner = ",".join(str(i) for i in self.members)
        return f"Coalition({{{inner}}}, n={self.n})"


def coerce_mask(coalition, n: int) -> int:
    """Accept a Coalition, a raw mask, or an iterable of indices."""
    if isinstance(coalition, Coalition):
        if coalition.n != n:
            raise InvalidArgumentError(
                f"coalition universe n={coalition.n} does not match game n={n}"
            )
        return coalition.mask
    if isinstance(coalition, int):
        if not 0 <= coalition <= full_mask(n):
            raise InvalidArgumentError(f"mask {coalition:#x} out of range for n={n}")
        return coalition
    return mask_of(coalition, n)
