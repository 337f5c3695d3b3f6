"""Executable encodings of the index axioms, plus the generators they need.

Axioms quantified over "all games" are tested over seeded randomized budgets
together with targeted constructions, so a pass means "no counterexample in
the budget", never a proof.  Fail verdicts always carry a concrete,
re-checkable witness.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .coalition import full_mask, iter_bits, members_of
from .enumeration import (
    CauseFamily,
    minimal_causes,
    quasi_minimal_causes,
)
from .errors import InvalidArgumentError, InternalInvariantError
from .games import (
    ExplicitCauseGame,
    GameOracle,
    TruthTableGame,
    WeightedVotingGame,
    contract,
    games_equal,
    make_explicit_cause_game,
    permute,
)
from .indices import (
    BANZHAF,
    DEEGAN_PACKEL,
    HOLLER_PACKEL,
    JOHNSTON,
    PER_CAUSE,
    RAW,
    RESPONSIBILITY,
    SHAPLEY,
    IndexVector,
    banzhaf,
    compute_index,
    deegan_packel,
    holler_packel,
    responsibility,
    shapley,
)
from .sampling import SamplingConfig, estimate

AXIOM_IDS = (
    "MSM", "UE", "S", "NF", "C",
    "MM", "TMCE", "CM",
    "MCE", "ISM", "E",
    "QMM",
    "AQM", "AQCE", "AS", "ANF",
    "GE", "TP",
    "RQM", "RMM", "RS",
)

ESTIMATOR_PREFIX = "estimate-"

# Which axiom ids make sense for which index procedure.
_MINIMAL_KINDS = (RESPONSIBILITY, HOLLER_PACKEL, DEEGAN_PACKEL)
_GAME_KINDS = (JOHNSTON, SHAPLEY, BANZHAF)
_ESTIMATOR_KINDS = tuple(
    ESTIMATOR_PREFIX + k
    for k in (JOHNSTON, DEEGAN_PACKEL, HOLLER_PACKEL, RESPONSIBILITY)
)

APPLICABLE = {
    "MSM": _MINIMAL_KINDS,
    "UE": _MINIMAL_KINDS,
    "C": _MINIMAL_KINDS,
    "MM": _MINIMAL_KINDS,
    "CM": _MINIMAL_KINDS,
    "TMCE": (HOLLER_PACKEL,),
    "MCE": (DEEGAN_PACKEL,),
    "ISM": _MINIMAL_KINDS,
    "S": _MINIMAL_KINDS + _GAME_KINDS,
    "NF": _MINIMAL_KINDS + _GAME_KINDS,
    "QMM": _GAME_KINDS,
    "GE": (SHAPLEY,),
    "TP": (BANZHAF,),
    "AQM": ("alternate-johnston",),
    "AQCE": ("alternate-johnston",),
    "AS": ("alternate-johnston",),
    "ANF": ("alternate-johnston",),
    "RQM": (ESTIMATOR_PREFIX + JOHNSTON, ESTIMATOR_PREFIX + RESPONSIBILITY),
    "RMM": _ESTIMATOR_KINDS,
    "RS": _ESTIMATOR_KINDS,
}

CHARACTERIZING = {
    RESPONSIBILITY: ("MSM", "UE", "S", "NF", "C"),
    HOLLER_PACKEL: ("MM", "TMCE", "S", "NF", "CM"),
    DEEGAN_PACKEL: ("MM", "MCE", "S", "NF", "ISM"),
    SHAPLEY: ("S", "NF", "GE"),
    BANZHAF: ("S", "NF", "TP"),
    "alternate-johnston": ("AQM", "AQCE", "AS", "ANF"),
}


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    index_kind: str
    verdict: str  # "pass" | "fail"
    trials: int
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


# ---------------------------------------------------------------------------
# generators


def random_antichain(n: int, density: float, seed) -> tuple[int, ...]:
    """A random antichain of non-empty coalitions; density scales its size."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if density < 0:
        raise InvalidArgumentError(f"density must be non-negative, got {density}")
    k = round(density * 2 * n)
    picks = sorted({rng.randint(1, full_mask(n)) for _ in range(k)})
    picks.sort(key=lambda m: m.bit_count())
    antichain: list[int] = []
    for mask in picks:
        if not any(mask & kept == kept for kept in antichain):
            antichain.append(mask)
    return tuple(sorted(antichain))


def random_monotone_game(n: int, density: float, seed) -> TruthTableGame:
    """Up-closure of a random antichain, shipped as a validated truth table."""
    antichain = random_antichain(n, density, seed)
    table = ExplicitCauseGame(n, antichain).win_table()
    return TruthTableGame(n, table)


def _causes_1based(masks) -> list[list[int]]:
    return [[i + 1 for i in members_of(m)] for m in masks]


def _family_witness(game_or_family) -> list[list[int]]:
    if isinstance(game_or_family, CauseFamily):
        return _causes_1based(game_or_family.causes)
    return _causes_1based(minimal_causes(game_or_family).causes)


# ---------------------------------------------------------------------------
# the alternate Johnston index over synthetic (G, chi) inputs


@dataclass(frozen=True)
class SyntheticQuasiFamily:
    """A set of quasi-minimal causes with a feasible critical-set mapping,
    not necessarily realizable by any monotone game."""

    n: int
    sets: tuple[int, ...]
    chi: dict

    def __post_init__(self):
        seen = set()
        for s in self.sets:
            if s == 0:
                raise InvalidArgumentError("synthetic quasi-minimal sets must be non-empty")
            if not 0 < s <= full_mask(self.n):
                raise InvalidArgumentError(f"set {s:#x} outside the {self.n}-feature universe")
            if s in seen:
                raise InvalidArgumentError("duplicate set in synthetic family")
            seen.add(s)
            c = self.chi.get(s)
            if c is None:
                raise InvalidArgumentError(f"no critical set for {_causes_1based([s])[0]}")
            if c == 0 or c & s != c:
                raise InvalidArgumentError(
                    "critical sets must be non-empty subsets of their coalition"
                )

    @classmethod
    def from_game(cls, game: GameOracle) -> "SyntheticQuasiFamily":
        family = quasi_minimal_causes(game)
        return cls(game.n, family.causes, dict(family.critical))


def alternate_johnston(family: SyntheticQuasiFamily) -> IndexVector:
    """Per-cause Johnston over an arbitrary feasible (G, chi) pair."""
    values = []
    for i in range(family.n):
        bit = 1 << i
        total = Fraction(0)
        for s in family.sets:
            c = family.chi[s]
            if c & bit:
                total += Fraction(1, c.bit_count())
        values.append(total)
    return IndexVector(JOHNSTON, PER_CAUSE, family.n, tuple(values))


def random_synthetic_family(n: int, rng: random.Random, size: int = 6) -> SyntheticQuasiFamily:
    sets = sorted({rng.randint(1, full_mask(n)) for _ in range(size)})
    chi = {}
    for s in sets:
        bits = list(iter_bits(s))
        keep = rng.randint(1, len(bits))
        chi[s] = sum(1 << b for b in rng.sample(bits, keep))
    return SyntheticQuasiFamily(n, tuple(sets), chi)


# ---------------------------------------------------------------------------
# axiom checkers

_MINIMAL_INDEX_FN = {
    RESPONSIBILITY: lambda fam: responsibility(fam),
    HOLLER_PACKEL: lambda fam: holler_packel(fam, RAW),
    DEEGAN_PACKEL: lambda fam: deegan_packel(fam, RAW),
}


def _index_of_game(kind: str, game: GameOracle) -> IndexVector:
    return compute_index(game, kind, RAW)


def _rand_n(rng: random.Random) -> int:
    return rng.randint(4, 7)


def _rand_game(rng: random.Random, n: int) -> TruthTableGame:
    return random_monotone_game(n, rng.uniform(0.2, 0.9), rng)


def _check_msm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    v, vp = _rand_game(rng, n), _rand_game(rng, n)
    fam, famp = minimal_causes(v), minimal_causes(vp)
    idx, idxp = _MINIMAL_INDEX_FN[kind](fam), _MINIMAL_INDEX_FN[kind](famp)
    for i in range(n):
        mi, mip = fam.for_feature(i), famp.for_feature(i)
        if not mi or not mip:
            continue
        k = min(m.bit_count() for m in mi)
        kp = min(m.bit_count() for m in mip)
        # Smaller smallest cause means weakly larger importance.
        if k == kp and idx[i] != idxp[i]:
            bad = "expected equal values for equal smallest-cause sizes"
        elif k < kp and idx[i] < idxp[i]:
            bad = "smaller smallest cause got a smaller value"
        elif k > kp and idx[i] > idxp[i]:
            bad = "larger smallest cause got a larger value"
        else:
            continue
        return {
            "reason": bad,
            "feature": i + 1,
            "game_v": _family_witness(fam),
            "game_v_prime": _family_witness(famp),
            "value_v": str(idx[i]),
            "value_v_prime": str(idxp[i]),
        }
    return None


def _check_ue(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    i = rng.randrange(n)
    base = [m for m in random_antichain(n, 0.6, rng) if not m >> i & 1]
    causes = tuple(base) + (1 << i,)
    game = make_explicit_cause_game(n, causes)
    fam = minimal_causes(game)
    value = _MINIMAL_INDEX_FN[kind](fam)[i]
    if value != 1:
        return {
            "reason": "singleton minimal cause must get value 1",
            "feature": i + 1,
            "game": _family_witness(fam),
            "value": str(value),
        }
    return None


def _check_symmetry(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    pi = list(range(n))
    rng.shuffle(pi)
    permuted = permute(game, pi)
    idx = _index_of_game(kind, game)
    idxp = _index_of_game(kind, permuted)
    # The permuted game pulls coalitions back through pi, so its feature i
    # plays the role of feature pi(i) in the original game.
    for i in range(n):
        if idxp[i] != idx[pi[i]]:
            return {
                "reason": "permuted game broke symmetry",
                "feature": i + 1,
                "permutation": [p + 1 for p in pi],
                "game": _family_witness(game),
                "value": str(idx[pi[i]]),
                "permuted_value": str(idxp[i]),
            }
    return None


def _check_nf(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    # Restrict causes to the first n-1 features so the last one is null.
    sub = random_antichain(n - 1, 0.7, rng)
    game = make_explicit_cause_game(n, sub)
    fam = minimal_causes(game)
    idx = _index_of_game(kind, game)
    for i in range(n):
        if fam.is_null_feature(i) and idx[i] != 0:
            return {
                "reason": "null feature got non-zero value",
                "feature": i + 1,
                "game": _family_witness(fam),
                "value": str(idx[i]),
            }
    return None


def _contraction_sides(kind: str, game: GameOracle, fam: CauseFamily, t_mask: int):
    index_fn = _MINIMAL_INDEX_FN[kind]
    reduced = contract(game, t_mask)
    idx = index_fn(fam)
    idx_reduced = index_fn(minimal_causes(reduced))
    left = idx_reduced[reduced.merged_index]
    right = sum((idx[i] for i in iter_bits(t_mask)), Fraction(0))
    return left, right


def _check_contraction(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    fam = minimal_causes(game)
    if not fam.causes:
        return None
    non_null = [i for i in range(n) if not fam.is_null_feature(i)]
    if len(non_null) < 2:
        return None
    # Random T without null features.
    t_members = rng.sample(non_null, rng.randint(2, len(non_null)))
    t_mask = sum(1 << i for i in t_members)
    left, right = _contraction_sides(kind, game, fam, t_mask)
    if left > right:
        return {
            "reason": "contracted value exceeded the member sum",
            "T": [i + 1 for i in t_members],
            "game": _family_witness(fam),
            "contracted_value": str(left),
            "member_sum": str(right),
        }
    if kind != RESPONSIBILITY:
        return None
    # Equality branch: T a smallest minimal cause for each of its members.
    smallest = min(m.bit_count() for m in fam.causes)
    for cause in fam.causes:
        if cause.bit_count() == smallest and cause.bit_count() >= 2:
            left, right = _contraction_sides(kind, game, fam, cause)
            if left != right:
                return {
                    "reason": "equality branch failed for a globally smallest cause",
                    "T": _causes_1based([cause])[0],
                    "game": _family_witness(fam),
                    "contracted_value": str(left),
                    "member_sum": str(right),
                }
            break
    return None


def _check_mm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    causes_prime = random_antichain(n, 0.8, rng)
    if not causes_prime:
        return None
    kept = tuple(m for m in causes_prime if rng.random() < 0.6)
    v = make_explicit_cause_game(n, kept)
    vp = make_explicit_cause_game(n, causes_prime)
    fam, famp = minimal_causes(v), minimal_causes(vp)
    idx = _MINIMAL_INDEX_FN[kind](fam)
    idxp = _MINIMAL_INDEX_FN[kind](famp)
    for i in range(n):
        if idx[i] > idxp[i]:
            return {
                "reason": "sub-family game got a larger value",
                "feature": i + 1,
                "game_v": _family_witness(fam),
                "game_v_prime": _family_witness(famp),
                "value_v": str(idx[i]),
                "value_v_prime": str(idxp[i]),
            }
        if fam.for_feature(i) == famp.for_feature(i) and idx[i] != idxp[i]:
            return {
                "reason": "equal per-feature families must give equal values",
                "feature": i + 1,
                "game_v": _family_witness(fam),
                "game_v_prime": _family_witness(famp),
                "value_v": str(idx[i]),
                "value_v_prime": str(idxp[i]),
            }
    return None


def _check_tmce(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    fam = minimal_causes(game)
    total = holler_packel(fam, RAW).total()
    expected = Fraction(sum(m.bit_count() for m in fam.causes), 1 << (n - 1))
    if total != expected:
        return {
            "reason": "total differs from the size-sum efficiency value",
            "game": _family_witness(fam),
            "total": str(total),
            "expected": str(expected),
        }
    return None


def _check_mce(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    fam = minimal_causes(game)
    total = deegan_packel(fam, RAW).total()
    expected = Fraction(len(fam.causes), 1 << (n - 1))
    if total != expected:
        return {
            "reason": "total differs from the cause-count efficiency value",
            "game": _family_witness(fam),
            "total": str(total),
            "expected": str(expected),
        }
    return None


def _check_cm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    v, vp = _rand_game(rng, n), _rand_game(rng, n)
    fam, famp = minimal_causes(v), minimal_causes(vp)
    idx = _MINIMAL_INDEX_FN[kind](fam)
    idxp = _MINIMAL_INDEX_FN[kind](famp)
    for i in range(n):
        c, cp = len(fam.for_feature(i)), len(famp.for_feature(i))
        if c == cp and idx[i] != idxp[i]:
            bad = "equal cause counts must give equal values"
        elif c < cp and idx[i] > idxp[i]:
            bad = "fewer causes got a larger value"
        elif c > cp and idx[i] < idxp[i]:
            bad = "more causes got a smaller value"
        else:
            continue
        return {
            "reason": bad,
            "feature": i + 1,
            "game_v": _family_witness(fam),
            "game_v_prime": _family_witness(famp),
            "count_v": c,
            "count_v_prime": cp,
            "value_v": str(idx[i]),
            "value_v_prime": str(idxp[i]),
        }
    return None


def _shrink_pair(rng: random.Random, n: int):
    """An antichain and a copy with one cause replaced by a proper subset,
    arranged so both stay antichains and share all their other causes."""
    for _ in range(30):
        causes = list(random_antichain(n, 0.8, rng))
        big = [m for m in causes if m.bit_count() >= 2]
        if not big:
            continue
        target = rng.choice(big)
        bits = list(iter_bits(target))
        keep = rng.randint(1, len(bits) - 1)
        small = sum(1 << b for b in rng.sample(bits, keep))
        others = [m for m in causes if m != target]
        if any(m & small == small or m & small == m for m in others):
            continue
        shrunk = sorted(others + [small])
        return tuple(shrunk), tuple(causes), small, target
    return None


def _check_ism(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    pair = _shrink_pair(rng, n)
    if pair is None:
        return None
    shrunk_causes, causes, small, target = pair
    v = make_explicit_cause_game(n, shrunk_causes)
    vp = make_explicit_cause_game(n, causes)
    fam, famp = minimal_causes(v), minimal_causes(vp)
    idx = _MINIMAL_INDEX_FN[kind](fam)
    idxp = _MINIMAL_INDEX_FN[kind](famp)
    witness_base = {
        "game_v": _family_witness(fam),
        "game_v_prime": _family_witness(famp),
        "shrunk": _causes_1based([small])[0],
        "original": _causes_1based([target])[0],
    }
    for i in iter_bits(small):
        # Element-wise subset pairing with one strict shrink: value must rise.
        if not idx[i] > idxp[i]:
            return dict(
                witness_base,
                reason="replacing a cause by a proper subset did not strictly "
                "increase the subset members' value",
                feature=i + 1,
                value_v=str(idx[i]),
                value_v_prime=str(idxp[i]),
            )
    for i in range(n):
        if target >> i & 1 or small >> i & 1:
            continue
        if idx[i] != idxp[i]:
            return dict(
                witness_base,
                reason="features outside the replaced cause changed value",
                feature=i + 1,
                value_v=str(idx[i]),
                value_v_prime=str(idxp[i]),
            )
    return None


def _check_qmm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    v = _rand_game(rng, n)
    g = quasi_minimal_causes(v)
    idx = _index_of_game(kind, v)
    # A unanimity game on {i} dominates every G_i.
    i = rng.randrange(n)
    vp = make_explicit_cause_game(n, (1 << i,))
    idxp = _index_of_game(kind, vp)
    gi = set(g.for_feature(i))
    gip = set(quasi_minimal_causes(vp).for_feature(i))
    if gi <= gip and idx[i] > idxp[i]:
        return {
            "reason": "larger quasi-minimal family got a smaller value",
            "feature": i + 1,
            "game_v": _family_witness(minimal_causes(v)),
            "game_v_prime": _family_witness(minimal_causes(vp)),
            "value_v": str(idx[i]),
            "value_v_prime": str(idxp[i]),
        }
    # Equality clause under equal quasi-minimal families: identical game.
    idx_again = _index_of_game(kind, v)
    for j in range(n):
        if idx_again[j] != idx[j]:
            return {"reason": "index is not a function of the game", "feature": j + 1}
    return None


def _check_ge(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    total = shapley(game).total()
    expected = Fraction(game.value(full_mask(n)))
    if total != expected:
        return {
            "reason": "values do not sum to the grand-coalition value",
            "game": _family_witness(game),
            "total": str(total),
            "expected": str(expected),
        }
    return None


def _check_tp(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game = _rand_game(rng, n)
    total = banzhaf(game, RAW).total()
    marginal_sum = 0
    for mask in range(1 << n):
        for i in range(n):
            if not mask >> i & 1:
                marginal_sum += game.value(mask | 1 << i) - game.value(mask)
    expected = Fraction(marginal_sum, 1 << (n - 1))
    if total != expected:
        return {
            "reason": "values do not sum to the total marginal power",
            "game": _family_witness(game),
            "total": str(total),
            "expected": str(expected),
        }
    return None


def _synthetic_witness(fam: SyntheticQuasiFamily) -> dict:
    return {
        "sets": _causes_1based(fam.sets),
        "chi": {str(_causes_1based([s])[0]): _causes_1based([fam.chi[s]])[0] for s in fam.sets},
    }


def _check_aqm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    big = random_synthetic_family(n, rng, size=7)
    kept = tuple(s for s in big.sets if rng.random() < 0.6)
    small = SyntheticQuasiFamily(n, kept, {s: big.chi[s] for s in kept})
    w_small = alternate_johnston(small)
    w_big = alternate_johnston(big)
    kept_set = set(kept)
    for i in range(n):
        bit = 1 << i
        if w_small[i] > w_big[i]:
            return dict(
                _synthetic_witness(big),
                reason="sub-family got a larger value",
                feature=i + 1,
            )
        same = all(s in kept_set for s in big.sets if big.chi[s] & bit)
        if same and w_small[i] != w_big[i]:
            return dict(
                _synthetic_witness(big),
                reason="equal per-feature families must give equal values",
                feature=i + 1,
            )
    return None


def _check_aqce(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    fam = random_synthetic_family(n, rng)
    total = alternate_johnston(fam).total()
    if total != len(fam.sets):
        return dict(
            _synthetic_witness(fam),
            reason="values do not sum to the family size",
            total=str(total),
        )
    return None


def _check_as(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    fam = random_synthetic_family(n, rng)
    pi = list(range(n))
    rng.shuffle(pi)

    def image(mask: int) -> int:
        return sum(1 << pi[i] for i in iter_bits(mask))

    permuted = SyntheticQuasiFamily(
        n,
        tuple(sorted(image(s) for s in fam.sets)),
        {image(s): image(fam.chi[s]) for s in fam.sets},
    )
    w = alternate_johnston(fam)
    wp = alternate_johnston(permuted)
    for i in range(n):
        if wp[pi[i]] != w[i]:
            return dict(
                _synthetic_witness(fam),
                reason="permuted family broke symmetry",
                feature=i + 1,
                permutation=[p + 1 for p in pi],
            )
    return None


def _check_anf(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    fam = random_synthetic_family(n, rng)
    w = alternate_johnston(fam)
    for i in range(n):
        bit = 1 << i
        if all(not fam.chi[s] & bit for s in fam.sets) and w[i] != 0:
            return dict(
                _synthetic_witness(fam),
                reason="never-critical feature got non-zero value",
                feature=i + 1,
            )
    return None


def _relation_game(rng: random.Random, n: int):
    """A game with a known strict relation: every minimal cause containing a
    also contains b (via the {a,b} / {b,c} template plus unrelated extras)."""
    a, b, c = rng.sample(range(n), 3)
    others = [i for i in range(n) if i not in (a, b, c)]
    extras = []
    if len(others) >= 2 and rng.random() < 0.5:
        extras.append((1 << others[0]) | (1 << others[1]))
    causes = [(1 << a) | (1 << b), (1 << b) | (1 << c)] + extras
    return make_explicit_cause_game(n, causes), a, b


def _estimator_config(rng: random.Random) -> SamplingConfig:
    return SamplingConfig(samples=rng.randint(8, 48), seed=rng.randrange(1 << 32))


def _check_rqm(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    game, a, b = _relation_game(rng, n)
    report = estimate(game, kind[len(ESTIMATOR_PREFIX):], _estimator_config(rng))
    if report.estimates[a] > report.estimates[b]:
        return {
            "reason": "estimate violated the quasi-minimal containment order",
            "features": [a + 1, b + 1],
            "game": _family_witness(game),
            "seed": report.seed,
            "m": report.m,
            "values": [str(report.estimates[a]), str(report.estimates[b])],
        }
    return None


_check_rmm = _check_rqm  # same construction: M_a inside M_b implies G_a inside G_b


def _check_rs(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    a, b = rng.sample(range(n), 2)
    others = [i for i in range(n) if i not in (a, b)]
    causes = [(1 << a) | (1 << b)]
    if len(others) >= 2 and rng.random() < 0.5:
        causes.append((1 << others[0]) | (1 << others[1]))
    game = make_explicit_cause_game(n, causes)
    report = estimate(game, kind[len(ESTIMATOR_PREFIX):], _estimator_config(rng))
    if report.estimates[a] != report.estimates[b]:
        return {
            "reason": "features with identical cause families got different estimates",
            "features": [a + 1, b + 1],
            "game": _family_witness(game),
            "seed": report.seed,
            "m": report.m,
            "values": [str(report.estimates[a]), str(report.estimates[b])],
        }
    return None


def _check_nf_estimator(kind: str, rng: random.Random) -> Optional[dict]:
    n = _rand_n(rng)
    sub = random_antichain(n - 1, 0.7, rng)
    game = make_explicit_cause_game(n, sub)
    report = estimate(game, kind[len(ESTIMATOR_PREFIX):], _estimator_config(rng))
    fam = minimal_causes(game)
    for i in range(n):
        if fam.is_null_feature(i) and report.estimates[i] != 0:
            return {
                "reason": "null feature got a non-zero estimate",
                "feature": i + 1,
                "game": _family_witness(fam),
                "seed": report.seed,
                "m": report.m,
                "value": str(report.estimates[i]),
            }
    return None


_CHECKERS: dict[str, Callable[[str, random.Random], Optional[dict]]] = {
    "MSM": _check_msm,
    "UE": _check_ue,
    "S": _check_symmetry,
    "NF": _check_nf,
    "C": _check_contraction,
    "MM": _check_mm,
    "TMCE": _check_tmce,
    "MCE": _check_mce,
    "CM": _check_cm,
    "ISM": _check_ism,
    "QMM": _check_qmm,
    "GE": _check_ge,
    "TP": _check_tp,
    "AQM": _check_aqm,
    "AQCE": _check_aqce,
    "AS": _check_as,
    "ANF": _check_anf,
    "RQM": _check_rqm,
    "RMM": _check_rmm,
    "RS": _check_rs,
}


def axioms_for(index_kind: str) -> tuple[str, ...]:
    """All axiom ids applicable to an index procedure."""
    out = [a for a, kinds in APPLICABLE.items() if index_kind in kinds]
    if index_kind in _ESTIMATOR_KINDS:
        out.append("NF")
    return tuple(a for a in AXIOM_IDS if a in out)


def check_axiom(index_kind: str, axiom: str, trials: int = 200, seed: int = 0) -> AxiomCheck:
    """Search a seeded randomized budget for a counterexample to one axiom.

    A pass means no counterexample within the budget; a fail carries a
    concrete, re-checkable witness.
    """
    if axiom not in AXIOM_IDS:
        raise InvalidArgumentError(f"unknown axiom {axiom!r}")
    if axiom == "E":
        raise InvalidArgumentError(
            "(E) is not satisfiable together with the other axioms; "
            "see demonstrate_impossibility()"
        )
    if index_kind in _ESTIMATOR_KINDS and axiom == "NF":
        checker = _check_nf_estimator
    else:
        if index_kind not in APPLICABLE.get(axiom, ()):
            raise InvalidArgumentError(
                f"axiom {axiom} does not apply to index {index_kind!r}"
            )
        checker = _CHECKERS[axiom]
    rng = random.Random((seed, axiom, index_kind).__repr__())
    for _ in range(trials):
        witness = checker(index_kind, rng)
        if witness is not None:
            return AxiomCheck(axiom, index_kind, "fail", trials, witness)
    return AxiomCheck(axiom, index_kind, "pass", trials, None)


# ---------------------------------------------------------------------------
# the impossibility construction


@dataclass(frozen=True)
class TraceStep:
    claim: str
    cites: tuple[str, ...]
    forced: dict


@dataclass(frozen=True)
class ImpossibilityTrace:
    steps: tuple[TraceStep, ...]
    total: Fraction
    contradiction: str


def demonstrate_impossibility() -> ImpossibilityTrace:
    """Replay the four-feature construction showing no index satisfies
    (MM), (E), (S) and (NF): the forced values of the two-cause game sum to 2."""
    n = 4
    v = make_explicit_cause_game(n, (0b0011,))
    vp = make_explicit_cause_game(n, (0b0011, 0b1100))
    fam_v = minimal_causes(v)
    fam_vp = minimal_causes(vp)
    if fam_v.causes != (0b0011,) or fam_vp.causes != (0b0011, 0b1100):
        raise InternalInvariantError("impossibility construction families are off")
    # (S) applies because the swap permutations fix the games extensionally.
    if not games_equal(permute(v, [1, 0, 2, 3]), v):
        raise InternalInvariantError("v is not symmetric under swapping 1 and 2")
    if not games_equal(permute(vp, [2, 3, 0, 1]), vp):
        raise InternalInvariantError("v' is not symmetric under the pair swap")
    half = Fraction(1, 2)
    steps = [
        TraceStep(
            claim="v has the single minimal cause {1,2}; (NF) zeroes features 3 and 4, "
            "(S) under the swap of 1 and 2 equalizes them, (E) makes them sum to 1",
            cites=("E", "S", "NF"),
            forced={"1": half, "2": half, "3": Fraction(0), "4": Fraction(0)},
        ),
        TraceStep(
            claim="v' adds the cause {3,4}; features 1 and 2 keep their whole "
            "per-feature families, so (MM)'s equality clause pins them at 1/2",
            cites=("MM",),
            forced={"1": half, "2": half},
        ),
        TraceStep(
            claim="v' is invariant under swapping {1,2} with {3,4}, so (S) forces "
            "features 3 and 4 to the same 1/2",
            cites=("S",),
            forced={"3": half, "4": half},
        ),
    ]
    for i in (0, 1):
        if fam_v.for_feature(i) != fam_vp.for_feature(i):
            raise InternalInvariantError("(MM) equality premise does not hold")
    total = sum(steps[1].forced.values(), Fraction(0)) + sum(
        steps[2].forced.values(), Fraction(0)
    )
    if total != 2:
        raise InternalInvariantError("forced values should sum to 2")
    return ImpossibilityTrace(
        steps=tuple(steps),
        total=total,
        contradiction=f"sum of forced values on v' is {total} != 1 required by (E)",
    )


# ---------------------------------------------------------------------------
# PARTITION reduction vectors


@dataclass(frozen=True)
class PartitionExpectation:
    values: tuple[int, ...]
    total: int
    even: bool
    n: int
    marker_feature: int  # 0-based index of the weight-1 marker player
    expected_count: int


def partition_game(values) -> tuple[WeightedVotingGame, PartitionExpectation]:
    """The weighted-voting reduction from PARTITION: weights a_1..a_m plus a
    marker of weight 1, threshold (W+1)/2.  When W is even, the marker's
    minimal-cause count equals the number of subsets summing to W/2."""
    a = tuple(int(x) for x in values)
    if not a or any(x < 1 for x in a):
        raise InvalidArgumentError("PARTITION instances are non-empty positive integers")
    total = sum(a)
    even = total % 2 == 0
    expected = 0
    if even:
        half = total // 2
        for r in range(len(a) + 1):
            for combo in itertools.combinations(range(len(a)), r):
                if sum(a[i] for i in combo) == half:
                    expected += 1
    game = WeightedVotingGame(a + (1,), Fraction(total + 1, 2))
    return game, PartitionExpectation(
        values=a,
        total=total,
        even=even,
        n=len(a) + 1,
        marker_feature=len(a),
        expected_count=expected,
    )


# ---------------------------------------------------------------------------
# contraction cross-check


def contracted_family_via_formula(game: GameOracle, t_coalition):
    """The merged feature's minimal causes predicted from the base family.

    Generating family {(S minus T) + [T] : S a minimal cause meeting T},
    reduced to its minimal elements; returned in the contracted index space
    together with the directly enumerated [T]-containing minimal causes.
    """
    reduced = contract(game, t_coalition)
    t_mask = reduced.t_mask
    fam = minimal_causes(game)
    old_to_new = {}
    for j, olds in enumerate(reduced.new_to_old):
        for old in olds:
            old_to_new[old] = j
    merged_bit = 1 << reduced.merged_index
    generated = set()
    for s in fam.causes:
        if s & t_mask:
            new_mask = merged_bit
            for i in iter_bits(s & ~t_mask):
                new_mask |= 1 << old_to_new[i]
            generated.add(new_mask)
    minimalized = tuple(
        sorted(
            m
            for m in generated
            if not any(o != m and o & m == o for o in generated)
        )
    )
    enumerated = tuple(
        m for m in minimal_causes(reduced).causes if m & merged_bit
    )
    return minimalized, enumerated
