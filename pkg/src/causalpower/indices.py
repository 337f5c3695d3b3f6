"""Exact power indices over enumerated cause families.

All arithmetic is exact rational; decimal rendering happens only at the I/O
boundary.  The ``raw`` scale carries the 1/2^(n-1) normalization where the
index defines one; the ``per-cause`` scale omits that factor (responsibility
and Shapley have no factor, so both scales coincide for them).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .enumeration import (
    MINIMAL,
    QUASI_MINIMAL,
    CauseFamily,
    minimal_causes,
    quasi_minimal_causes,
)
from .errors import InvalidArgumentError
from .games import GameOracle

RESPONSIBILITY = "responsibility"
HOLLER_PACKEL = "holler-packel"
DEEGAN_PACKEL = "deegan-packel"
JOHNSTON = "johnston"
SHAPLEY = "shapley"
BANZHAF = "banzhaf"
INDEX_KINDS = (RESPONSIBILITY, HOLLER_PACKEL, DEEGAN_PACKEL, JOHNSTON, SHAPLEY, BANZHAF)

RAW = "raw"
PER_CAUSE = "per-cause"
SCALES = (RAW, PER_CAUSE)

# Kinds whose raw scale divides by 2^(n-1).
_SCALED_KINDS = (HOLLER_PACKEL, DEEGAN_PACKEL, JOHNSTON, BANZHAF)


def _exact_value(v, i: int) -> Fraction:
    if isinstance(v, float):
        raise InvalidArgumentError(
            f"index values are exact rationals; got a float at feature {i}"
        )
    return Fraction(v)


@dataclass(frozen=True)
class IndexVector:
    """Per-feature attribution values for one index kind."""

    kind: str
    scale: str
    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in INDEX_KINDS:
            raise InvalidArgumentError(f"unknown index kind {self.kind!r}")
        if self.scale not in SCALES:
            raise InvalidArgumentError(f"unknown scale {self.scale!r}")
        if len(self.values) != self.n:
            raise InvalidArgumentError("one value per feature required")
        object.__setattr__(
            self, "values", tuple(_exact_value(v, i) for i, v in enumerate(self.values))
        )
        for i, v in enumerate(self.values):
            if v < 0:
                raise InvalidArgumentError(f"negative index value {v} at feature {i}")
            if self.scale == RAW and v > 1:
                raise InvalidArgumentError(f"raw-scale value {v} above 1 at feature {i}")

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))


def _check_scale(scale: str) -> None:
    if scale not in SCALES:
        raise InvalidArgumentError(f"unknown scale {scale!r}; expected one of {SCALES}")


def _require_kind(family: CauseFamily, kind: str, op: str) -> None:
    if family.kind != kind:
        raise InvalidArgumentError(f"{op} needs a {kind} cause family, got {family.kind}")


def _mask_rows(family: CauseFamily) -> tuple[np.ndarray, np.ndarray]:
    masks = np.fromiter(family.causes, dtype=np.int64, count=len(family.causes))
    sizes = np.zeros(len(masks), dtype=np.int64)
    for i in range(family.n):
        sizes += (masks >> i) & 1
    return masks, sizes


def responsibility(family: CauseFamily) -> IndexVector:
    """1 over the size of the smallest minimal cause containing the feature."""
    _require_kind(family, MINIMAL, "responsibility")
    masks, sizes = _mask_rows(family)
    values = []
    for i in range(family.n):
        member = (masks >> i) & 1 == 1
        if member.any():
            values.append(Fraction(1, int(sizes[member].min())))
        else:
            values.append(Fraction(0))
    return IndexVector(RESPONSIBILITY, RAW, family.n, tuple(values))


def holler_packel(family: CauseFamily, scale: str = RAW) -> IndexVector:
    """Count of minimal causes containing the feature."""
    _require_kind(family, MINIMAL, "holler_packel")
    _check_scale(scale)
    masks, _ = _mask_rows(family)
    denom = 1 << (family.n - 1) if scale == RAW else 1
    values = tuple(
        Fraction(int(((masks >> i) & 1).sum()), denom) for i in range(family.n)
    )
    return IndexVector(HOLLER_PACKEL, scale, family.n, values)


def deegan_packel(family: CauseFamily, scale: str = RAW) -> IndexVector:
    """Sum of 1/|S| over the minimal causes containing the feature."""
    _require_kind(family, MINIMAL, "deegan_packel")
    _check_scale(scale)
    masks, sizes = _mask_rows(family)
    denom = 1 << (family.n - 1) if scale == RAW else 1
    values = []
    for i in range(family.n):
        member = (masks >> i) & 1 == 1
        counts = np.bincount(sizes[member], minlength=family.n + 1)
        total = sum(
            (Fraction(int(c), s) for s, c in enumerate(counts) if s and c), Fraction(0)
        )
        values.append(total / denom)
    return IndexVector(DEEGAN_PACKEL, scale, family.n, tuple(values))


def johnston(family: CauseFamily, scale: str = RAW) -> IndexVector:
    """Sum of 1/|critical set| over quasi-minimal causes where i is critical."""
    _require_kind(family, QUASI_MINIMAL, "johnston")
    _check_scale(scale)
    masks, _ = _mask_rows(family)
    chi = np.fromiter(
        (family.critical[int(m)] for m in masks), dtype=np.int64, count=len(masks)
    )
    chi_sizes = np.zeros(len(masks), dtype=np.int64)
    for i in range(family.n):
        chi_sizes += (chi >> i) & 1
    denom = 1 << (family.n - 1) if scale == RAW else 1
    values = []
    for i in range(family.n):
        crit = (chi >> i) & 1 == 1
        counts = np.bincount(chi_sizes[crit], minlength=family.n + 1)
        total = sum(
            (Fraction(int(c), s) for s, c in enumerate(counts) if s and c), Fraction(0)
        )
        values.append(total / denom)
    return IndexVector(JOHNSTON, scale, family.n, tuple(values))


def shapley(game: GameOracle) -> IndexVector:
    """Shapley-Shubik index: size-weighted count of coalitions where i is critical."""
    analysis = game.analysis()
    n = game.n
    weight = [Fraction(0)] + [
        Fraction(factorial(s - 1) * factorial(n - s), factorial(n)) for s in range(1, n + 1)
    ]
    values = []
    for i in range(n):
        crit = (analysis.chi >> i) & 1 == 1
        counts = np.bincount(analysis.size[crit], minlength=n + 1)
        values.append(
            sum((weight[s] * int(c) for s, c in enumerate(counts) if c), Fraction(0))
        )
    return IndexVector(SHAPLEY, RAW, n, tuple(values))


def banzhaf(game: GameOracle, scale: str = RAW) -> IndexVector:
    """Raw Banzhaf index: swing count over 2^(n-1)."""
    _check_scale(scale)
    analysis = game.analysis()
    n = game.n
    denom = 1 << (n - 1) if scale == RAW else 1
    values = tuple(
        Fraction(int(((analysis.chi >> i) & 1 == 1).sum()), denom) for i in range(n)
    )
    return IndexVector(BANZHAF, scale, n, values)


def compute_index(game: GameOracle, kind: str, scale: str = RAW) -> IndexVector:
    """Compute any of the six indices directly from a game oracle."""
    if kind not in INDEX_KINDS:
        raise InvalidArgumentError(f"unknown index kind {kind!r}; expected one of {INDEX_KINDS}")
    _check_scale(scale)
    if kind == RESPONSIBILITY:
        return responsibility(minimal_causes(game))
    if kind == HOLLER_PACKEL:
        return holler_packel(minimal_causes(game), scale)
    if kind == DEEGAN_PACKEL:
        return deegan_packel(minimal_causes(game), scale)
    if kind == JOHNSTON:
        return johnston(quasi_minimal_causes(game), scale)
    if kind == SHAPLEY:
        return shapley(game)
    return banzhaf(game, scale)
