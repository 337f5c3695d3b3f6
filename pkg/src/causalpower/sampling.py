"""Monte Carlo estimators for the four cause-aggregating indices.

Samples are drawn uniformly from the power set.  One shared sample stream is
used for all features (this is what makes the relative monotonicity and
symmetry guarantees hold for every seed), and sample j is a pure function of
(seed, j), so serial and partitioned runs produce bit-identical reports.

Per-sample terms keep the verbatim factor 2, which converts the 1/2^n
uniform mass to the 1/2^(n-1) normalization of the raw indices; estimates
may therefore exceed 1 at small sample counts and are deliberately not
clamped.  Accumulation is exact (integer counts combined into rationals at
the end), so reports are reproducible bit for bit.
"""
from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coalition import full_mask, iter_bits
from .errors import CapacityError, InvalidArgumentError
from .games import GameOracle

ESTIMATOR_KINDS = ("johnston", "deegan-packel", "holler-packel", "responsibility")

EXHAUSTIVE_CAP = 24


def sample_size(epsilon: float, delta: float, n: int) -> int:
    """Samples needed for a uniform epsilon-accurate estimate: ceil(log(2n/delta)/epsilon^2)."""
    if not 0 < epsilon <= 1:
        raise InvalidArgumentError(f"epsilon must be in (0, 1], got {epsilon}")
    if not 0 < delta < 1:
        raise InvalidArgumentError(f"delta must be in (0, 1), got {delta}")
    if n < 1:
        raise InvalidArgumentError(f"need at least one feature, got n={n}")
    return math.ceil(math.log(2 * n / delta) / (epsilon * epsilon))


@dataclass(frozen=True)
class SamplingConfig:
    """Sample budget resolution: exhaustive > explicit count > derived from
    (epsilon, delta) via the uniform-accuracy bound."""

    epsilon: Optional[float] = None
    delta: Optional[float] = None
    samples: Optional[int] = None
    seed: int = 0
    exhaustive: bool = False

    def __post_init__(self):
        if self.epsilon is not None and not 0 < self.epsilon <= 1:
            raise InvalidArgumentError(f"epsilon must be in (0, 1], got {self.epsilon}")
        if self.delta is not None and not 0 < self.delta < 1:
            raise InvalidArgumentError(f"delta must be in (0, 1), got {self.delta}")
        if self.samples is not None and self.samples < 1:
            raise InvalidArgumentError(f"need at least one sample, got {self.samples}")
        if not -(1 << 63) <= self.seed < 1 << 64:
            raise InvalidArgumentError("seed must fit in 64 bits")

    def resolve_m(self, n: int) -> int:
        if self.exhaustive:
            if n > EXHAUSTIVE_CAP:
                raise CapacityError(
                    f"exhaustive estimation is limited to n <= {EXHAUSTIVE_CAP} (got n={n})"
                )
            return 1 << n
        if self.samples is not None:
            return self.samples
        if self.epsilon is None or self.delta is None:
            raise InvalidArgumentError(
                "either an explicit sample count or both epsilon and delta are required"
            )
        return sample_size(self.epsilon, self.delta, n)


@dataclass(frozen=True)
class EstimateReport:
    """One estimator run: echoed configuration, estimates, and sampling cost.

    ``hits`` counts the samples that contributed to each feature;
    ``oracle_calls`` is the total number of set-function evaluations,
    including the |S|+1 calls each membership test costs.
    """

    kind: str
    n: int
    m: int
    seed: int
    epsilon: Optional[float]
    delta: Optional[float]
    exhaustive: bool
    estimates: tuple[Fraction, ...]
    hits: tuple[int, ...]
    oracle_calls: int


def sample_mask(seed: int, j: int, n: int) -> int:
    """Sample j of the shared stream: uniform over all 2^n coalition masks."""
    digest = hashlib.sha256(struct.pack(">QQ", seed & full_mask(64), j)).digest()
    return int.from_bytes(digest[:8], "big") & full_mask(n)


class _Run:
    """Shared per-sample machinery: sample stream, critical sets, call counting."""

    def __init__(self, game: GameOracle, config: SamplingConfig):
        self.game = game
        self.config = config
        self.n = game.n
        self.m = config.resolve_m(game.n)
        self.calls = 0

    def masks(self):
        if self.config.exhaustive:
            return range(1 << self.n)
        return (
            sample_mask(self.config.seed, j, self.n) for j in range(1, self.m + 1)
        )

    def chi(self, mask: int) -> int:
        """Critical-feature mask of the sample; 1 + |S| oracle calls when winning."""
        self.calls += 1
        if not self.game.value(mask):
            return 0
        out = 0
        for i in iter_bits(mask):
            self.calls += 1
            if not self.game.value(mask ^ (1 << i)):
                out |= 1 << i
        return out

    def report(self, kind: str, estimates, hits) -> EstimateReport:
        return EstimateReport(
            kind=kind,
            n=self.n,
            m=self.m,
            seed=self.config.seed,
            epsilon=self.config.epsilon,
            delta=self.config.delta,
            exhaustive=self.config.exhaustive,
            estimates=tuple(estimates),
            hits=tuple(hits),
            oracle_calls=self.calls,
        )


def estimate_johnston(game: GameOracle, config: SamplingConfig) -> EstimateReport:
    """Per sample S: each critical feature gains 2 / |critical set of S|."""
    run = _Run(game, config)
    n = run.n
    counts = [[0] * (n + 1) for _ in range(n)]
    hits = [0] * n
    for mask in run.masks():
        chi = run.chi(mask)
        if not chi:
            continue
        c = chi.bit_count()
        for i in iter_bits(chi):
            counts[i][c] += 1
            hits[i] += 1
    estimates = [
        sum(Fraction(2 * k, c) for c, k in enumerate(row) if c and k) / run.m
        for row in counts
    ]
    return run.report("johnston", estimates, hits)


def estimate_deegan_packel(game: GameOracle, config: SamplingConfig) -> EstimateReport:
    """Per sample S: if S is a minimal cause, each member gains 2 / |S|."""
    run = _Run(game, config)
    n = run.n
    counts = [[0] * (n + 1) for _ in range(n)]
    hits = [0] * n
    for mask in run.masks():
        chi = run.chi(mask)
        if not chi or chi != mask:
            continue
        s = mask.bit_count()
        for i in iter_bits(mask):
            counts[i][s] += 1
            hits[i] += 1
    estimates = [
        sum(Fraction(2 * k, s) for s, k in enumerate(row) if s and k) / run.m
        for row in counts
    ]
    return run.report("deegan-packel", estimates, hits)


def estimate_holler_packel(game: GameOracle, config: SamplingConfig) -> EstimateReport:
    """Per sample S: if S is a minimal cause, each member gains 2."""
    run = _Run(game, config)
    n = run.n
    counts = [0] * n
    for mask in run.masks():
        chi = run.chi(mask)
        if not chi or chi != mask:
            continue
        for i in iter_bits(mask):
            counts[i] += 1
    estimates = [Fraction(2 * k, run.m) for k in counts]
    return run.report("holler-packel", estimates, counts)


def estimate_responsibility(game: GameOracle, config: SamplingConfig) -> EstimateReport:
    """PAC-style: the largest observed 1/|S| over samples where i is critical.

    Never exceeds the true responsibility (every sampled quasi-minimal cause
    with i critical contains a minimal cause with i, no larger than itself);
    exhaustive runs return it exactly.
    """
    run = _Run(game, config)
    n = run.n
    best = [0] * n  # smallest |S| seen per feature; 0 = none yet
    hits = [0] * n
    for mask in run.masks():
        chi = run.chi(mask)
        if not chi:
            continue
        s = mask.bit_count()
        for i in iter_bits(chi):
            hits[i] += 1
            if best[i] == 0 or s < best[i]:
                best[i] = s
    estimates = [Fraction(1, b) if b else Fraction(0) for b in best]
    return run.report("responsibility", estimates, hits)


_ESTIMATORS = {
    "johnston": estimate_johnston,
    "deegan-packel": estimate_deegan_packel,
    "holler-packel": estimate_holler_packel,
    "responsibility": estimate_responsibility,
}


def estimate(game: GameOracle, kind: str, config: SamplingConfig) -> EstimateReport:
    if kind not in _ESTIMATORS:
        raise InvalidArgumentError(
            f"no sampling estimator for {kind!r}; expected one of {ESTIMATOR_KINDS}"
        )
    return _ESTIMATORS[kind](game, config)
