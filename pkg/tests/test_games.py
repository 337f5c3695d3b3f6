import random
from fractions import Fraction

import numpy as np
import pytest

from causalpower import (
    Coalition,
    InvalidArgumentError,
    InvalidCauseFamilyError,
    InvalidGameError,
    compute_index,
    contract,
    games_equal,
    is_monotone,
    make_explicit_cause_game,
    make_truth_table,
    make_unanimity,
    make_weighted_voting,
    minimal_causes,
    permute,
    random_antichain,
    random_monotone_game,
)

from reference import subsets


def mask(members):
    return sum(1 << (i - 1) for i in members)  # 1-based helper


class TestWeightedVoting:
    def test_threshold_sum(self):
        g = make_weighted_voting([1, 1, 2, 1], Fraction(5, 2))
        assert g.value(mask([3, 4])) == 1  # weights 2 + 1 >= 2.5
        assert g.value(mask([1, 2])) == 0

    def test_empty_coalition_loses(self):
        g = make_weighted_voting([3, 5], "0.5")
        assert g.value(0) == 0

    def test_dictator(self):
        g = make_weighted_voting([1], 1)
        assert g.value(1) == 1

    def test_negative_weight_rejected(self):
        with pytest.raises(InvalidGameError):
            make_weighted_voting([1, -1], 1)

    def test_nonpositive_threshold_rejected(self):
        # A threshold the empty coalition meets would break v(empty)=0.
        with pytest.raises(InvalidGameError):
            make_weighted_voting([1, 1], 0)

    def test_decimal_strings_parsed_exactly(self):
        g = make_weighted_voting(["0.1", "0.2"], "0.3")
        assert g.value(mask([1, 2])) == 1  # exactly 0.3, no float noise
        assert g.value(mask([2])) == 0

    def test_threshold_gap_perturbation_invariance(self):
        weights = [Fraction(1), Fraction(2), Fraction(4)]
        q = Fraction(7, 2)
        g = make_weighted_voting(weights, q)
        sums = sorted(
            {sum((weights[i] for i in range(3) if s >> i & 1), Fraction(0)) for s in subsets(3)}
        )
        gap = min(abs(s - q) for s in sums if s != q)
        for delta in (gap / 3, -gap / 3, gap / 2, -gap / 2):
            perturbed = make_weighted_voting(weights, q + delta)
            assert all(perturbed.value(s) == g.value(s) for s in subsets(3))

    def test_table_matches_scalar(self):
        g = make_weighted_voting([1, 3, 3, 5, 2], 7)
        table = g.win_table()
        assert all(bool(table[s]) == bool(g.value(s)) for s in subsets(5))


class TestTruthTable:
    def test_unanimity_table(self):
        g = make_truth_table(2, [0, 0, 0, 1])
        assert [g.value(s) for s in range(4)] == [0, 0, 0, 1]
        assert g.kind == "truth-table"

    def test_dictator_table(self):
        g = make_truth_table(1, [0, 1])
        assert g.value(1) == 1

    def test_monotonicity_violation_names_pair(self):
        with pytest.raises(InvalidGameError) as exc:
            make_truth_table(2, [0, 1, 0, 0])
        assert "{1}" in str(exc.value) and "{1,2}" in str(exc.value)

    def test_winning_empty_coalition_rejected(self):
        with pytest.raises(InvalidGameError):
            make_truth_table(1, [1, 1])

    def test_wrong_size_rejected(self):
        with pytest.raises(InvalidGameError):
            make_truth_table(2, [0, 1, 1])


class TestExplicitCauses:
    def test_example_with_shared_feature(self):
        g = make_explicit_cause_game(5, [mask([1, 2]), mask([1, 3]), mask([1, 4])])
        assert g.value(mask([1, 2])) == 1
        assert g.value(mask([2, 3, 4, 5])) == 0
        assert minimal_causes(g).causes == (mask([1, 2]), mask([1, 3]), mask([1, 4]))

    def test_single_pair_cause(self):
        g = make_explicit_cause_game(4, [mask([1, 2])])
        assert g.value(mask([1, 2])) == 1
        assert g.value(mask([1, 3, 4])) == 0

    def test_dictator_cause(self):
        g = make_explicit_cause_game(3, [mask([1])])
        assert [g.value(s) for s in subsets(3)] == [s & 1 for s in subsets(3)]

    def test_non_antichain_rejected(self):
        with pytest.raises(InvalidCauseFamilyError):
            make_explicit_cause_game(3, [mask([1]), mask([1, 2])])

    def test_empty_cause_rejected(self):
        with pytest.raises(InvalidCauseFamilyError):
            make_explicit_cause_game(3, [0])

    def test_table_matches_scalar(self):
        g = make_explicit_cause_game(6, [mask([1, 2]), mask([3, 4, 5]), mask([6])])
        table = g.win_table()
        assert all(bool(table[s]) == bool(g.value(s)) for s in subsets(6))


class TestContract:
    def test_unanimity_contracts_to_dictator(self):
        g = make_unanimity(2, mask([1, 2]))
        reduced = contract(g, mask([1, 2]))
        assert reduced.n == 1
        assert reduced.value(0) == 0
        assert reduced.value(1) == 1

    def test_merged_set_evaluates_base_on_t(self):
        g = make_explicit_cause_game(5, [mask([1, 2]), mask([1, 3]), mask([1, 4])])
        reduced = contract(g, mask([1, 2]))
        assert reduced.value(1 << reduced.merged_index) == 1  # v({1,2}) = 1

    def test_sets_without_merged_feature_delegate(self):
        g = make_explicit_cause_game(4, [mask([1, 2]), mask([3, 4])])
        reduced = contract(g, mask([1, 2]))
        # New index space: [T] plus old features 3, 4 re-indexed densely.
        for new_mask in subsets(reduced.n):
            if new_mask >> reduced.merged_index & 1:
                continue
            old_mask = 0
            for j in range(reduced.n):
                if new_mask >> j & 1:
                    old_mask |= 1 << reduced.new_to_old[j][0]
            assert reduced.value(new_mask) == g.value(old_mask)

    def test_small_t_rejected(self):
        g = make_unanimity(3, mask([1, 2]))
        with pytest.raises(InvalidArgumentError):
            contract(g, mask([1]))

    def test_mapping_metadata(self):
        g = make_unanimity(5, mask([1, 2, 3, 4, 5]))
        reduced = contract(g, mask([2, 4]))
        assert reduced.n == 4
        assert reduced.new_to_old[reduced.merged_index] == (1, 3)
        flat = [i for olds in reduced.new_to_old for i in olds]
        assert sorted(flat) == [0, 1, 2, 3, 4]

    def test_table_matches_scalar(self):
        g = make_weighted_voting([1, 2, 3, 4], 5)
        reduced = contract(g, mask([2, 4]))
        table = reduced.win_table()
        assert all(bool(table[s]) == bool(reduced.value(s)) for s in subsets(reduced.n))

    def test_preserves_monotonicity(self):
        rng = random.Random(7)
        for trial in range(25):
            n = rng.randint(3, 12)
            g = random_monotone_game(n, rng.uniform(0.1, 0.9), rng.randrange(1 << 30))
            members = rng.sample(range(n), rng.randint(2, n))
            reduced = contract(g, sum(1 << i for i in members))
            assert is_monotone(reduced)


class TestPermute:
    def test_identity(self):
        g = make_weighted_voting([1, 2, 3], 3)
        assert games_equal(permute(g, [0, 1, 2]), g)

    def test_dictator_swap(self):
        g = make_explicit_cause_game(2, [mask([1])])
        swapped = permute(g, [1, 0])
        assert swapped.value(mask([2])) == 1
        assert swapped.value(mask([1])) == 0

    def test_involution(self):
        g = make_weighted_voting([1, 2, 3], 3)
        assert games_equal(permute(permute(g, [1, 0, 2]), [1, 0, 2]), g)

    def test_non_bijection_rejected(self):
        g = make_weighted_voting([1, 1], 1)
        with pytest.raises(InvalidArgumentError):
            permute(g, [0, 0])

    def test_preserves_monotonicity(self):
        rng = random.Random(11)
        for trial in range(25):
            n = rng.randint(3, 12)
            g = random_monotone_game(n, rng.uniform(0.1, 0.9), rng.randrange(1 << 30))
            pi = list(range(n))
            rng.shuffle(pi)
            assert is_monotone(permute(g, pi))

    def test_table_matches_scalar(self):
        g = make_weighted_voting([1, 2, 3, 1], 4)
        p = permute(g, [2, 0, 3, 1])
        table = p.win_table()
        assert all(bool(table[s]) == bool(p.value(s)) for s in subsets(4))


def test_symmetry_at_game_level_all_six_indices():
    # The permuted game pulls coalitions back through pi, so feature i of the
    # permuted game plays the role feature pi(i) plays in the original.
    rng = random.Random(3)
    for trial in range(10):
        n = rng.randint(3, 8)
        g = random_monotone_game(n, rng.uniform(0.2, 0.9), rng.randrange(1 << 30))
        pi = list(range(n))
        rng.shuffle(pi)
        pg = permute(g, pi)
        for kind in ("responsibility", "holler-packel", "deegan-packel", "johnston", "shapley", "banzhaf"):
            base = compute_index(g, kind)
            permuted = compute_index(pg, kind)
            assert all(permuted[i] == base[pi[i]] for i in range(n))


def test_random_game_round_trip():
    # Enumerating the up-closure of an antichain recovers the antichain.
    for seed in range(30):
        antichain = random_antichain(6, 0.7, seed)
        game = random_monotone_game(6, 0.7, seed)
        assert minimal_causes(game).causes == antichain


def test_wins_accepts_coalitions_and_iterables():
    g = make_weighted_voting([1, 1, 2], 2)
    assert g.wins(Coalition.from_members([2], 3))
    assert g.wins([0, 1])
    assert not g.wins([0])


def test_oracle_determinism_and_thread_safety_contract():
    g = make_weighted_voting([1, 1, 2], 2)
    values = [g.value(5) for _ in range(100)]
    assert set(values) == {1}
    t1 = g.win_table()
    t2 = g.win_table()
    assert t1 is t2  # cached, immutable
    assert not np.shares_memory(t1, np.empty(1))
