import itertools
import random
from fractions import Fraction

import pytest

from causalpower import (
    CapacityError,
    CausalModel,
    ConstraintSet,
    InvalidInterventionError,
    ModelError,
    ModelIncompleteError,
    Variable,
    direct_effect_game,
    is_monotone,
    make_weighted_voting,
    minimal_causes,
    responsibility,
    sat,
    total_effect_game,
)

from helpers import arsonist_constraints, arsonist_model, arsonist_point
from reference import subsets

U1, U2, A1, A2 = 0, 1, 2, 3  # arsonist feature indices


@pytest.fixture
def arsonist():
    model = arsonist_model()
    game = total_effect_game(model, arsonist_point(), arsonist_constraints(model))
    return model, game


class TestEvaluate:
    def test_both_matches_dropped(self):
        out = arsonist_model().evaluate({"U1": 1, "U2": 1})
        assert out == {"U1": 1, "U2": 1, "A1": 1, "A2": 1, "B": 1}

    def test_no_match_dropped(self):
        assert arsonist_model().evaluate({"U1": 0, "U2": 0})["B"] == 0

    def test_either_match_burns(self):
        assert arsonist_model().evaluate({"U1": 1, "U2": 0})["B"] == 1

    def test_missing_context_rejected(self):
        with pytest.raises(ModelError):
            arsonist_model().evaluate({"U1": 1})


class TestIntervene:
    def test_single_intervention_leaves_other_chain(self):
        model = arsonist_model().intervene({"A1": 0})
        assert model.evaluate({"U1": 1, "U2": 1})["B"] == 1

    def test_empty_intervention_is_identity(self):
        base = arsonist_model()
        same = base.intervene({})
        for u1, u2 in itertools.product((0, 1), repeat=2):
            ctx = {"U1": u1, "U2": u2}
            assert base.evaluate(ctx) == same.evaluate(ctx)

    def test_both_arsonists_stopped(self):
        model = arsonist_model().intervene({"A1": 0, "A2": 0})
        assert model.evaluate({"U1": 1, "U2": 1})["B"] == 0

    def test_exogenous_intervention_allowed(self):
        model = arsonist_model().intervene({"U1": 0})
        assert model.evaluate({"U2": 0})["B"] == 0

    def test_output_target_rejected(self):
        with pytest.raises(InvalidInterventionError):
            arsonist_model().intervene({"B": 0})

    def test_out_of_domain_value_rejected(self):
        with pytest.raises(InvalidInterventionError):
            arsonist_model().intervene({"A1": 7})


class TestSat:
    def test_downstream_propagation_accepts(self):
        model = arsonist_model()
        x = arsonist_point()
        xprime = {"U1": 1, "U2": 1, "A1": 0, "A2": 1}
        assert sat(model, ["A1"], xprime, x)

    def test_unexplained_change_rejected(self):
        model = arsonist_model()
        x = arsonist_point()
        xprime = {"U1": 1, "U2": 1, "A1": 0, "A2": 0}  # A2 must follow U2=1
        assert not sat(model, ["A1"], xprime, x)

    def test_full_coalition_accepts_anything(self):
        model = arsonist_model()
        x = arsonist_point()
        for values in itertools.product((0, 1), repeat=4):
            xprime = dict(zip(("U1", "U2", "A1", "A2"), values))
            assert sat(model, ["U1", "U2", "A1", "A2"], xprime, x)

    def test_propagation_fixed_point(self):
        # Whatever values we pin on S, the propagated point satisfies sat.
        model = arsonist_model()
        x = model.validate_point(arsonist_point())
        rng = random.Random(5)
        for _ in range(50):
            mask = rng.randrange(1 << 4)
            overrides = tuple(rng.choice((0, 1)) for _ in range(4))
            propagated = model.propagate(x, mask, overrides)
            assert model.sat(mask, propagated, x)


class TestTotalEffectGame:
    def test_arsonist_coalition_values(self, arsonist):
        _, game = arsonist
        assert game.value(1 << A1) == 0
        assert game.value(1 << A1 | 1 << A2) == 1
        assert game.value(1 << U1 | 1 << U2) == 1

    def test_empty_constraint_set_gives_zero_game(self):
        model = arsonist_model()
        game = total_effect_game(model, arsonist_point(), ConstraintSet(model, []))
        assert all(game.value(s) == 0 for s in subsets(4))

    def test_point_only_constraint_set_gives_zero_game(self):
        model = arsonist_model()
        game = total_effect_game(
            model, arsonist_point(), ConstraintSet(model, [arsonist_point()])
        )
        assert all(game.value(s) == 0 for s in subsets(4))

    def test_minimal_causes(self, arsonist):
        _, game = arsonist
        fam = minimal_causes(game)
        expected = {
            1 << U1 | 1 << U2,
            1 << U1 | 1 << A2,
            1 << A1 | 1 << U2,
            1 << A1 | 1 << A2,
        }
        assert set(fam.causes) == expected

    def test_responsibility_half_each(self, arsonist):
        _, game = arsonist
        rho = responsibility(minimal_causes(game))
        assert rho.values == (Fraction(1, 2),) * 4

    def test_monotone(self, arsonist):
        _, game = arsonist
        assert is_monotone(game)

    def test_witness_is_first_canonical_candidate(self, arsonist):
        _, game = arsonist
        witness = game.witness(1 << U1 | 1 << U2)
        assert witness == (0, 0, 0, 0)
        assert game.witness(1 << A1) is None


class TestDirectEffectGame:
    def test_feature_one_flip(self):
        domains = [(0, 1), (0, 1)]
        constraints = ConstraintSet.all_domain_points(domains)
        game = direct_effect_game(lambda v: v[0], (0, 0), constraints)
        assert game.value(0b01) == 1
        assert game.value(0b10) == 0

    def test_point_only_constraint_set(self):
        constraints = ConstraintSet([(0, 1), (0, 1)], [(0, 0)])
        game = direct_effect_game(lambda v: v[0], (0, 0), constraints)
        assert all(game.value(s) == 0 for s in subsets(2))

    def test_weighted_voting_embedding(self):
        # A threshold model at the all-zeros point over all binary vectors
        # reproduces the weighted voting game exactly.
        rng = random.Random(9)
        for _ in range(5):
            n = rng.randint(2, 10)
            weights = [rng.randint(0, 5) for _ in range(n)]
            q = rng.randint(1, max(1, sum(weights)))
            wvg = make_weighted_voting(weights, q)
            constraints = ConstraintSet.all_domain_points([(0, 1)] * n)
            direct = direct_effect_game(
                lambda v: int(sum(w * x for w, x in zip(weights, v)) >= q),
                (0,) * n,
                constraints,
            )
            assert all(direct.value(s) == wvg.value(s) for s in subsets(n))

    def test_black_box_called_once_per_candidate(self):
        calls = []
        constraints = ConstraintSet.all_domain_points([(0, 1)] * 3)

        def f(v):
            calls.append(v)
            return v[0] & v[1]

        game = direct_effect_game(f, (0, 0, 0), constraints)
        for s in subsets(3):
            game.value(s)
        assert len(calls) == len(constraints) + 1


def test_total_equals_direct_when_all_features_exogenous():
    # With no endogenous features besides the output there is nothing to
    # propagate, so the two notions of cause coincide.
    and_table = {k: int(all(k)) for k in itertools.product((0, 1), repeat=3)}
    model = CausalModel(
        [
            Variable("X1", "exogenous", (0, 1)),
            Variable("X2", "exogenous", (0, 1)),
            Variable("X3", "exogenous", (0, 1)),
            Variable("Y", "endogenous", (0, 1), ("X1", "X2", "X3"), and_table),
        ],
        output="Y",
    )
    point = {"X1": 0, "X2": 0, "X3": 0}
    constraints = ConstraintSet.all_domain_points(model)
    total = total_effect_game(model, point, constraints)
    x = model.validate_point(point)
    direct = direct_effect_game(
        model.output_at, x, ConstraintSet.all_domain_points([(0, 1)] * 3)
    )
    assert all(total.value(s) == direct.value(s) for s in subsets(3))


def test_evaluate_invariant_under_declaration_order():
    base = arsonist_model()
    shuffled = CausalModel(
        [
            Variable("A2", "endogenous", (0, 1), ("U2",), {(0,): 0, (1,): 1}),
            Variable("U2", "exogenous", (0, 1)),
            Variable("B", "endogenous", (0, 1), ("A1", "A2"), {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}),
            Variable("U1", "exogenous", (0, 1)),
            Variable("A1", "endogenous", (0, 1), ("U1",), {(0,): 0, (1,): 1}),
        ],
        output="B",
    )
    for u1, u2 in itertools.product((0, 1), repeat=2):
        ctx = {"U1": u1, "U2": u2}
        assert base.evaluate(ctx) == shuffled.evaluate(ctx)


class TestValidation:
    def test_cycle_rejected(self):
        with pytest.raises(ModelError):
            CausalModel(
                [
                    Variable("P", "endogenous", (0, 1), ("Q",), {(0,): 0, (1,): 1}),
                    Variable("Q", "endogenous", (0, 1), ("P",), {(0,): 0, (1,): 1}),
                    Variable("Y", "endogenous", (0, 1), ("P",), {(0,): 0, (1,): 1}),
                ],
                output="Y",
            )

    def test_output_must_be_sink(self):
        with pytest.raises(ModelError):
            CausalModel(
                [
                    Variable("U", "exogenous", (0, 1)),
                    Variable("Y", "endogenous", (0, 1), ("U",), {(0,): 0, (1,): 1}),
                    Variable("Z", "endogenous", (0, 1), ("Y",), {(0,): 0, (1,): 1}),
                ],
                output="Y",
            )

    def test_non_binary_output_rejected(self):
        with pytest.raises(ModelError):
            CausalModel(
                [
                    Variable("U", "exogenous", (0, 1)),
                    Variable("Y", "endogenous", (0, 1, 2), ("U",), {(0,): 0, (1,): 1}),
                ],
                output="Y",
            )

    def test_incomplete_table_rejected(self):
        with pytest.raises(ModelIncompleteError):
            CausalModel(
                [
                    Variable("U", "exogenous", (0, 1)),
                    Variable("Y", "endogenous", (0, 1), ("U",), {(0,): 0}),
                ],
                output="Y",
            )

    def test_evaluate_reports_missing_entry(self):
        # Tables are validated eagerly; mutating one afterwards still fails
        # loudly instead of producing garbage.
        table = {(0,): 0, (1,): 1}
        model = CausalModel(
            [
                Variable("U", "exogenous", (0, 1)),
                Variable("A", "endogenous", (0, 1), ("U",), table),
                Variable("Y", "endogenous", (0, 1), ("A",), {(0,): 0, (1,): 1}),
            ],
            output="Y",
        )
        del table[(1,)]
        with pytest.raises(ModelIncompleteError):
            model.evaluate({"U": 1})

    def test_inconsistent_point_rejected_with_repair(self):
        model = arsonist_model()
        with pytest.raises(ModelError) as exc:
            model.validate_point({"U1": 1, "U2": 1, "A1": 0, "A2": 1})
        assert "'A1': 1" in str(exc.value)

    def test_duplicate_candidates_rejected(self):
        model = arsonist_model()
        with pytest.raises(ModelError):
            ConstraintSet(model, [arsonist_point(), dict(arsonist_point())])

    def test_all_domain_points_capacity(self):
        domains = [(0, 1)] * 21
        with pytest.raises(CapacityError):
            ConstraintSet.all_domain_points(domains)
