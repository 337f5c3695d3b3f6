"""Exhaustive enumeration of minimal and quasi-minimal causes.

A minimal cause is an inclusion-minimal winning coalition.  A quasi-minimal
cause is any winning coalition with at least one critical feature; its
critical set holds exactly the members whose removal makes it lose.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

import numpy as np

from .coalition import Coalition, coerce_mask, iter_bits
from .errors import CapacityError, InvalidArgumentError
from .games import GameOracle

ENUM_CAP = 24

MINIMAL = "minimal"
QUASI_MINIMAL = "quasi-minimal"


@dataclass(frozen=True)
class CauseFamily:
    """An enumerated cause family in canonical ascending-mask order."""

    n: int
    kind: str
    causes: tuple[int, ...]
    critical: Optional[Mapping[int, int]] = None
    _by_feature: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (MINIMAL, QUASI_MINIMAL):
            raise InvalidArgumentError(f"unknown cause-family kind {self.kind!r}")
        if self.kind == QUASI_MINIMAL and self.critical is None:
            raise InvalidArgumentError("quasi-minimal families carry critical sets")

    def __len__(self) -> int:
        return len(self.causes)

    def coalitions(self) -> tuple[Coalition, ...]:
        return tuple(Coalition(m, self.n) for m in self.causes)

    def critical_set(self, cause_mask: int) -> int:
        if self.critical is None:
            # Every member of a minimal cause is critical.
            return cause_mask
        return self.critical[cause_mask]

    def for_feature(self, i: int) -> tuple[int, ...]:
        """M_i (minimal kind) or G_i (quasi-minimal kind: i critical)."""
        if not 0 <= i < self.n:
            raise InvalidArgumentError(f"feature index {i} out of range for n={self.n}")
        cached = self._by_feature.get(i)
        if cached is None:
            bit = 1 << i
            if self.kind == MINIMAL:
                cached = tuple(m for m in self.causes if m & bit)
            else:
                cached = tuple(m for m in self.causes if self.critical[m] & bit)
            self._by_feature[i] = cached
        return cached

    def is_null_feature(self, i: int) -> bool:
        return not self.for_feature(i)


def _require_capacity(game: GameOracle) -> None:
    if game.n > ENUM_CAP:
        raise CapacityError(
            f"exhaustive enumeration is limited to n <= {ENUM_CAP} (got n={game.n}); "
            "use the sampling estimators instead"
        )


def minimal_causes(game: GameOracle) -> CauseFamily:
    """All inclusion-minimal winning coalitions, ascending by mask."""
    _require_capacity(game)
    analysis = game.analysis()
    masks = np.nonzero(analysis.minimal_mask_array())[0]
    return CauseFamily(game.n, MINIMAL, tuple(int(m) for m in masks))


def quasi_minimal_causes(game: GameOracle) -> CauseFamily:
    """All winning coalitions with a non-empty critical set, plus those sets."""
    _require_capacity(game)
    analysis = game.analysis()
    masks = np.nonzero(analysis.quasi_minimal_mask_array())[0]
    chi = analysis.chi[masks]
    critical = {int(m): int(c) for m, c in zip(masks, chi)}
    return CauseFamily(
        game.n,
        QUASI_MINIMAL,
        tuple(int(m) for m in masks),
        MappingProxyType(critical),
    )


def critical_set(game: GameOracle, coalition) -> Coalition:
    """{i in S : v(S)=1 and v(S minus i)=0}; empty when S loses."""
    mask = coerce_mask(coalition, game.n)
    if not game.value(mask):
        return Coalition(0, game.n)
    out = 0
    for i in iter_bits(mask):
        if not game.value(mask ^ (1 << i)):
            out |= 1 << i
    return Coalition(out, game.n)
