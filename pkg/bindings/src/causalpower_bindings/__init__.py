"""Scripting bindings for the causalpower engine.

The engine's oracles, enumeration, exact indices and estimators are exposed
through a small mirror API whose coalitions are plain 0-based index lists.
The one genuinely new piece is :class:`CallableOracle`: wrap any 0/1-valued
function of a feature-index list (for example a real classifier probed
through the direct-effect recipe) and use it with every engine operation.

Callable-backed oracles are memoized (the callable runs at most once per
distinct coalition) and spot-check monotonicity on every evaluation against
the minimal-winning / maximal-losing frontiers of what has been seen so far,
so any comparable violating pair among evaluated coalitions is reported.
Callable-backed paths run single-threaded; user callables are not assumed
reentrant.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from causalpower import (
    GameOracle,
    LoadedSource,
    SamplingConfig,
    ValidationError,
    load_source,
)
from causalpower import compute_index as _compute_index
from causalpower import estimate as _estimate
from causalpower import minimal_causes as _minimal_causes
from causalpower.cli import (
    build_enumerate_report,
    build_estimate_report,
    build_index_report,
    render_json,
)
from causalpower.coalition import members_of, validate_feature_count

__all__ = [
    "CallableOracle",
    "CallableOracleError",
    "CallableRaisedError",
    "MonotonicityViolationError",
    "NonBinaryOutputError",
    "wrap_callable",
    "load_game",
    "enumerate_minimal",
    "compute_index",
    "estimate",
    "enumerate_report_json",
    "index_report_json",
    "estimate_report_json",
]

__version__ = "0.1.0"


class CallableOracleError(ValidationError):
    """Base error for callable-backed games; carries the engine exit code."""


class NonBinaryOutputError(CallableOracleError, TypeError):
    """The user callable returned something other than 0 or 1."""


class MonotonicityViolationError(CallableOracleError):
    """Two evaluated coalitions contradict monotonicity."""


class CallableRaisedError(CallableOracleError):
    """The user callable raised; the original exception is chained."""


class CallableOracle(GameOracle):
    """A game backed by a user callable over 0-based feature-index lists."""

    kind = "causal-value"

    def __init__(self, n: int, fn: Callable[[list[int]], int]):
        validate_feature_count(n)
        super().__init__(n)
        self._fn = fn
        self._memo: dict[int, int] = {}
        self._min_winning: list[int] = []
        self._max_losing: list[int] = []
        self.calls = 0

    @property
    def distinct_coalitions(self) -> int:
        return len(self._memo)

    def value(self, mask: int) -> int:
        cached = self._memo.get(mask)
        if cached is not None:
            return cached
        self.calls += 1
        try:
            raw = self._fn(list(members_of(mask)))
        except Exception as exc:
            raise CallableRaisedError(
                f"user callable raised {type(exc).__name__} on coalition "
                f"{list(members_of(mask))}: {exc}"
            ) from exc
        if raw not in (0, 1, False, True):
            raise NonBinaryOutputError(
                f"user callable must return 0 or 1, got {raw!r} on coalition "
                f"{list(members_of(mask))}"
            )
        result = int(raw)
        self._frontier_check(mask, result)
        self._memo[mask] = result
        return result

    def _frontier_check(self, mask: int, result: int) -> None:
        if result:
            for losing in self._max_losing:
                if mask & losing == mask:
                    raise MonotonicityViolationError(
                        f"callable is not monotone: {list(members_of(mask))} wins "
                        f"but its superset {list(members_of(losing))} loses"
                    )
            if not any(w & mask == w for w in self._min_winning):
                self._min_winning = [w for w in self._min_winning if w & mask != mask]
                self._min_winning.append(mask)
        else:
            for winning in self._min_winning:
                if winning & mask == winning:
                    raise MonotonicityViolationError(
                        f"callable is not monotone: {list(members_of(winning))} wins "
                        f"but its superset {list(members_of(mask))} loses"
                    )
            if not any(mask & l == mask for l in self._max_losing):
                self._max_losing = [l for l in self._max_losing if l & mask != l]
                self._max_losing.append(mask)


def wrap_callable(n: int, fn: Callable[[list[int]], int]) -> CallableOracle:
    """Wrap a 0/1-valued function of a feature-index list as a game oracle."""
    return CallableOracle(n, fn)


def load_game(path: str) -> LoadedSource:
    """Load a game or causal-model JSON file through the engine."""
    return load_source(path)


def _as_game(game_or_source) -> GameOracle:
    if isinstance(game_or_source, LoadedSource):
        return game_or_source.game
    return game_or_source


def enumerate_minimal(game) -> list[list[int]]:
    """Minimal causes as 0-based index lists, canonical order."""
    family = _minimal_causes(_as_game(game))
    return [list(members_of(mask)) for mask in family.causes]


def compute_index(game, kind: str, scale: str = "raw") -> list[Fraction]:
    """Exact index values per feature; identical rationals to the engine."""
    return list(_compute_index(_as_game(game), kind, scale).values)


def estimate(
    game,
    kind: str,
    epsilon: Optional[float] = None,
    delta: Optional[float] = None,
    seed: int = 0,
    samples: Optional[int] = None,
    exhaustive: bool = False,
):
    """Run a seeded estimator; returns the engine's EstimateReport."""
    config = SamplingConfig(
        epsilon=epsilon, delta=delta, samples=samples, seed=seed, exhaustive=exhaustive
    )
    return _estimate(_as_game(game), kind, config)


# -- CLI-identical reports ---------------------------------------------------
# These run the same report builders the command line uses, so their output
# is byte-for-byte what the corresponding subcommand prints.


def _load_with_bytes(path: str) -> tuple[LoadedSource, bytes]:
    with open(path, "rb") as fh:
        data = fh.read()
    return load_source(path), data


def enumerate_report_json(path: str, kind: str = "minimal") -> str:
    source, data = _load_with_bytes(path)
    return render_json(build_enumerate_report(source, kind, path, data))


def index_report_json(path: str, kind: str, scale: str = "raw") -> str:
    source, data = _load_with_bytes(path)
    return render_json(build_index_report(source, kind, scale, path, data))


def estimate_report_json(
    path: str,
    kind: str,
    epsilon: Optional[float] = None,
    delta: Optional[float] = None,
    seed: int = 0,
    samples: Optional[int] = None,
    exhaustive: bool = False,
) -> str:
    source, data = _load_with_bytes(path)
    config = SamplingConfig(
        epsilon=epsilon, delta=delta, samples=samples, seed=seed, exhaustive=exhaustive
    )
    return render_json(build_estimate_report(source, kind, config, path, data))
