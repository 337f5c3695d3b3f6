"""Monotone binary set functions (simple games) and their transforms.

Every game is an immutable oracle mapping coalitions to {0, 1}.  Oracles are
safe for concurrent read-only use; the lazily built dense tables are computed
idempotently, so a benign double-compute is the worst a race can do.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .coalition import (
    coerce_mask,
    full_mask,
    iter_bits,
    members_of,
    validate_feature_count,
)
from .errors import CapacityError, InvalidArgumentError, InvalidCauseFamilyError, InvalidGameError

# Dense 2^n tables drive exact enumeration and the exact indices.
TABLE_CAP = 24


class GameAnalysis:
    """Dense per-coalition tables derived from a game's win table.

    ``win[S]`` is the oracle value, ``size[S]`` the coalition cardinality and
    ``chi[S]`` the bit mask of critical features of S (empty for losing S).
    """

    __slots__ = ("n", "win", "size", "chi")

    def __init__(self, n: int, win: np.ndarray):
        idx = np.arange(1 << n, dtype=np.int64)
        size = np.zeros(1 << n, dtype=np.int8)
        chi = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            bit = 1 << i
            has = (idx & bit) != 0
            size += has
            critical = has & win & ~win[idx ^ bit]
            chi[critical] |= bit
        self.n = n
        self.win = win
        self.size = size
        self.chi = chi

    def minimal_mask_array(self) -> np.ndarray:
        """Boolean table of inclusion-minimal winning coalitions."""
        idx = np.arange(1 << self.n, dtype=np.int64)
        return self.win & (self.chi == idx) & (idx != 0)

    def quasi_minimal_mask_array(self) -> np.ndarray:
        """Boolean table of winning coalitions with a non-empty critical set."""
        return self.win & (self.chi != 0)


class GameOracle:
    """A monotone binary set function over coalitions of ``n`` features."""

    kind = "abstract"

    def __init__(self, n: int):
        validate_feature_count(n)
        self.n = n
        self._table: Optional[np.ndarray] = None
        self._analysis: Optional[GameAnalysis] = None

    def value(self, mask: int) -> int:
        """Evaluate the game on a raw bit mask.  Returns 0 or 1."""
        raise NotImplementedError

    def wins(self, coalition) -> bool:
        return bool(self.value(coerce_mask(coalition, self.n)))

    def _require_table_capacity(self) -> None:
        if self.n > TABLE_CAP:
            raise CapacityError(
                f"exact computation needs a 2^{self.n} table (limit n <= {TABLE_CAP}); "
                "use the sampling estimators instead"
            )

    def win_table(self) -> np.ndarray:
        """Dense boolean table indexed by coalition mask (n <= 24)."""
        if self._table is None:
            self._require_table_capacity()
            self._table = self._compute_table()
        return self._table

    def _compute_table(self) -> np.ndarray:
        out = np.empty(1 << self.n, dtype=bool)
        for mask in range(1 << self.n):
            out[mask] = bool(self.value(mask))
        return out

    def analysis(self) -> GameAnalysis:
        if self._analysis is None:
            self._analysis = GameAnalysis(self.n, self.win_table())
        return self._analysis

    def __repr__(self) -> str:
        return f"<{type(self).__name__} kind={self.kind!r} n={self.n}>"


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # Floats round-trip through str so that 0.1 means the decimal 1/10,
        # not its binary approximation.
        return Fraction(str(x))
    return Fraction(x)


class WeightedVotingGame(GameOracle):
    """v(S) = 1 iff the member weights sum to at least the threshold.

    Comparison is exact: weights and threshold are rationals scaled to a
    common integer denominator, so no float rounding can flip an eval.
    """

    kind = "weighted-voting"

    def __init__(self, weights: Sequence, threshold):
        super().__init__(len(weights))
        self.weights = tuple(_as_fraction(w) for w in weights)
        self.threshold = _as_fraction(threshold)
        for i, w in enumerate(self.weights):
            if w < 0:
                raise InvalidGameError(f"negative weight {w} for feature {i + 1}")
        if self.threshold <= 0:
            raise InvalidGameError(
                f"threshold {self.threshold} must be positive so the empty coalition loses"
            )
        denom = 1
        for w in self.weights:
            denom = denom * w.denominator // math.gcd(denom, w.denominator)
        self._int_weights = tuple(int(w * denom) for w in self.weights)
        # Smallest integer t with t/denom >= threshold.
        self._int_threshold = -((-self.threshold.numerator * denom) // self.threshold.denominator)

    def value(self, mask: int) -> int:
        total = 0
        for i in iter_bits(mask):
            total += self._int_weights[i]
        return 1 if total >= self._int_threshold else 0

    def _compute_table(self) -> np.ndarray:
        size = 1 << self.n
        top = sum(self._int_weights)
        if top >= 1 << 62:
            return super()._compute_table()
        sums = np.zeros(size, dtype=np.int64)
        for i in range(self.n):
            bit = 1 << i
            sums[bit : bit * 2] = sums[:bit] + self._int_weights[i]
        return sums >= self._int_threshold


class TruthTableGame(GameOracle):
    """A game given by its full 2^n truth table; validated monotone eagerly."""

    kind = "truth-table"

    def __init__(self, n: int, table):
        super().__init__(n)
        arr = np.asarray(table, dtype=bool)
        if arr.shape != (1 << n,):
            raise InvalidGameError(
                f"table must have exactly 2^{n} = {1 << n} entries, got {arr.size}"
            )
        if arr[0]:
            raise InvalidGameError("empty coalition must lose (table[0] = 0)")
        violation = _monotonicity_violation(n, arr)
        if violation is not None:
            s, t = violation
            raise InvalidGameError(
                "table is not monotone: "
                f"S={_pretty(s)} wins but its superset T={_pretty(t)} loses"
            )
        self._table = arr

    def value(self, mask: int) -> int:
        return int(self._table[mask])

    def _compute_table(self) -> np.ndarray:
        return self._table


def _monotonicity_violation(n: int, table: np.ndarray):
    """Return a covering pair (S, S + {i}) with table[S] > table[S+{i}], if any."""
    idx = np.arange(1 << n, dtype=np.int64)
    for i in range(n):
        bit = 1 << i
        without = (idx & bit) == 0
        bad = without & table & ~table[idx | bit]
        hits = np.nonzero(bad)[0]
        if hits.size:
            s = int(hits[0])
            return s, s | bit
    return None


def _pretty(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in members_of(mask)) + "}"


class ExplicitCauseGame(GameOracle):
    """v(S) = 1 iff S contains one of the listed (antichain) causes."""

    kind = "explicit-minimal-causes"

    def __init__(self, n: int, causes: Iterable):
        super().__init__(n)
        masks = sorted({coerce_mask(c, n) for c in causes})
        for m in masks:
            if m == 0:
                raise InvalidCauseFamilyError("a cause must be non-empty")
        for a, b in itertools.combinations(masks, 2):
            if a & b == a or a & b == b:
                raise InvalidCauseFamilyError(
                    f"causes must form an antichain: {_pretty(a)} and {_pretty(b)} are nested"
                )
        self.causes = tuple(masks)

    def value(self, mask: int) -> int:
        for c in self.causes:
            if mask & c == c:
                return 1
        return 0

    def _compute_table(self) -> np.ndarray:
        size = 1 << self.n
        idx = np.arange(size, dtype=np.int64)
        win = np.zeros(size, dtype=bool)
        if len(self.causes) <= max(self.n, 8):
            for c in self.causes:
                win |= (idx & c) == c
            return win
        # Many causes: mark them, then take the upward closure bit by bit.
        win[np.fromiter(self.causes, dtype=np.int64)] = True
        for i in range(self.n):
            bit = 1 << i
            has = (idx & bit) != 0
            win[has] |= win[idx[has] ^ bit]
        return win


class UnanimityGame(ExplicitCauseGame):
    """v(S) = 1 iff S contains the fixed coalition T."""

    kind = "unanimity"

    def __init__(self, n: int, coalition):
        mask = coerce_mask(coalition, n)
        if mask == 0:
            raise InvalidGameError("unanimity coalition must be non-empty")
        super().__init__(n, [mask])
        self.coalition = mask

    def value(self, mask: int) -> int:
        return 1 if mask & self.coalition == self.coalition else 0


class ContractedGame(GameOracle):
    """The reduced game after merging a feature set T into one feature [T].

    v_[T](S) evaluates the base game on (S minus [T]) union T when [T] is a
    member, and on S unchanged otherwise.  The merged feature takes the
    smallest index of T; remaining features are re-indexed densely.
    ``new_to_old`` maps each new index to the tuple of base indices it stands
    for (a singleton everywhere except at ``merged_index``).
    """

    kind = "contracted"

    def __init__(self, base: GameOracle, t_coalition):
        t_mask = coerce_mask(t_coalition, base.n)
        if t_mask.bit_count() < 2:
            raise InvalidArgumentError("contraction needs |T| >= 2")
        n_new = base.n - t_mask.bit_count() + 1
        super().__init__(n_new)
        self.base = base
        self.t_mask = t_mask
        anchor = (t_mask & -t_mask).bit_length() - 1
        mapping = []
        for old in range(base.n):
            if old == anchor:
                mapping.append(tuple(members_of(t_mask)))
            elif not t_mask >> old & 1:
                mapping.append((old,))
        self.new_to_old = tuple(mapping)
        self.merged_index = next(
            j for j, olds in enumerate(self.new_to_old) if len(olds) > 1
        )
        self._old_masks = tuple(
            t_mask if len(olds) > 1 else 1 << olds[0] for olds in self.new_to_old
        )

    def value(self, mask: int) -> int:
        old_mask = 0
        for j in iter_bits(mask):
            old_mask |= self._old_masks[j]
        return self.base.value(old_mask)

    def _compute_table(self) -> np.ndarray:
        base_table = self.base.win_table()
        idx = np.arange(1 << self.n, dtype=np.int64)
        old = np.zeros(1 << self.n, dtype=np.int64)
        for j, old_bits in enumerate(self._old_masks):
            old |= np.where((idx >> j) & 1 == 1, old_bits, 0)
        return base_table[old]


class PermutedGame(GameOracle):
    """(pi v)(S) = v({pi(i) : i in S}) for a bijection pi on features."""

    kind = "permuted"

    def __init__(self, base: GameOracle, permutation: Sequence[int]):
        super().__init__(base.n)
        perm = tuple(permutation)
        if sorted(perm) != list(range(base.n)):
            raise InvalidArgumentError(
                f"permutation must be a bijection on 0..{base.n - 1}, got {perm}"
            )
        self.base = base
        self.permutation = perm

    def value(self, mask: int) -> int:
        image = 0
        for i in iter_bits(mask):
            image |= 1 << self.permutation[i]
        return self.base.value(image)

    def _compute_table(self) -> np.ndarray:
        base_table = self.base.win_table()
        idx = np.arange(1 << self.n, dtype=np.int64)
        image = np.zeros(1 << self.n, dtype=np.int64)
        for i in range(self.n):
            image |= ((idx >> i) & 1) << self.permutation[i]
        return base_table[image]


def make_weighted_voting(weights: Sequence, threshold) -> WeightedVotingGame:
    return WeightedVotingGame(weights, threshold)


def make_truth_table(n: int, table) -> TruthTableGame:
    return TruthTableGame(n, table)


def make_explicit_cause_game(n: int, causes: Iterable) -> ExplicitCauseGame:
    return ExplicitCauseGame(n, causes)


def make_unanimity(n: int, coalition) -> UnanimityGame:
    return UnanimityGame(n, coalition)


def contract(game: GameOracle, t_coalition) -> ContractedGame:
    return ContractedGame(game, t_coalition)


def permute(game: GameOracle, permutation: Sequence[int]) -> PermutedGame:
    return PermutedGame(game, permutation)


def is_monotone(game: GameOracle, samples: int = 4096, seed: int = 0) -> bool:
    """Check monotonicity: exhaustively for n <= 20, by sampled pairs above."""
    if game.n <= 20:
        return _monotonicity_violation(game.n, game.win_table()) is None
    import random

    rng = random.Random(seed)
    top = full_mask(game.n)
    for _ in range(samples):
        s = rng.randint(0, top)
        t = s | rng.randint(0, top)
        if game.value(s) > game.value(t):
            return False
    return True


def games_equal(a: GameOracle, b: GameOracle) -> bool:
    """Extensional equality over all coalitions (table capacity applies)."""
    if a.n != b.n:
        return False
    return bool(np.array_equal(a.win_table(), b.win_table()))
