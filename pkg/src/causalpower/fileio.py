"""JSON file formats: direct game descriptions and causal-model bundles.

A game file carries {"type": "weighted_voting" | "truth_table" |
"explicit_causes", "n": ..., ...payload}.  Truth tables travel as a
hex-encoded bit string indexed by coalition mask; weights and thresholds as
decimal strings parsed exactly as rationals.  A causal-model file instead
carries "variables", "output", "point_of_interest" and "constraint_set",
and fully determines the induced total-effect game.

Feature indices are 1-based in every file; names, when present, are
preserved end to end.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .causal import CausalModel, ConstraintSet, Variable, total_effect_game
from .coalition import mask_of, members_of
from .errors import ValidationError
from .games import (
    ExplicitCauseGame,
    GameOracle,
    TruthTableGame,
    WeightedVotingGame,
    make_explicit_cause_game,
    make_truth_table,
    make_weighted_voting,
)

GAME_TYPES = ("weighted_voting", "truth_table", "explicit_causes")


@dataclass(frozen=True)
class LoadedSource:
    """A fully resolved input file: the induced game plus feature names."""

    game: GameOracle
    names: tuple[str, ...]
    source_kind: str  # "game" | "causal-model"
    model: Optional[CausalModel] = None

    def name_of(self, i: int) -> str:
        return self.names[i]


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _parse_rational(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{what} must be a decimal string or integer, got a bool")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValidationError(
            f"{what} must be a decimal string (exact), not a JSON float: {value!r}"
        )
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{what} is not a valid rational: {value!r} ({exc})")
    raise ValidationError(f"{what} must be a decimal string or integer, got {type(value).__name__}")


def _expect(doc: dict, key: str, what: str):
    if key not in doc:
        raise ValidationError(f"{what} is missing the {key!r} field")
    return doc[key]


def _feature_names(doc: dict, n: int) -> tuple[str, ...]:
    names = doc.get("features")
    if names is None:
        return tuple(str(i + 1) for i in range(n))
    if (
        not isinstance(names, list)
        or len(names) != n
        or any(not isinstance(x, str) for x in names)
    ):
        raise ValidationError(f"'features' must be a list of {n} strings")
    if len(set(names)) != n:
        raise ValidationError("feature names must be unique")
    return tuple(names)


def hex_table_encode(table) -> str:
    bits = 0
    for mask, value in enumerate(table):
        if value:
            bits |= 1 << mask
    width = (len(table) + 3) // 4
    return format(bits, f"0{width}x")


def hex_table_decode(text: str, n: int) -> list[int]:
    width = ((1 << n) + 3) // 4
    if not isinstance(text, str) or len(text) != width:
        raise ValidationError(
            f"truth table for n={n} must be a {width}-digit hex string"
        )
    try:
        bits = int(text, 16)
    except ValueError:
        raise ValidationError(f"truth table is not valid hex: {text!r}")
    if bits >> (1 << n):
        raise ValidationError("truth table has bits beyond 2^n entries")
    return [(bits >> mask) & 1 for mask in range(1 << n)]


def game_from_dict(doc: dict) -> LoadedSource:
    game_type = _expect(doc, "type", "game file")
    if game_type not in GAME_TYPES:
        raise ValidationError(f"unknown game type {game_type!r}; expected one of {GAME_TYPES}")
    n = _expect(doc, "n", "game file")
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"'n' must be a positive integer, got {n!r}")
    names = _feature_names(doc, n)
    if game_type == "weighted_voting":
        weights = _expect(doc, "weights", "weighted voting game")
        if not isinstance(weights, list) or len(weights) != n:
            raise ValidationError(f"'weights' must be a list of {n} entries")
        threshold = _expect(doc, "threshold", "weighted voting game")
        game = make_weighted_voting(
            [_parse_rational(w, f"weight {i + 1}") for i, w in enumerate(weights)],
            _parse_rational(threshold, "threshold"),
        )
    elif game_type == "truth_table":
        table = hex_table_decode(_expect(doc, "table", "truth table game"), n)
        game = make_truth_table(n, table)
    else:
        causes = _expect(doc, "causes", "explicit causes game")
        if not isinstance(causes, list):
            raise ValidationError("'causes' must be a list of 1-based index lists")
        masks = []
        for cause in causes:
            if not isinstance(cause, list) or any(
                not isinstance(i, int) or not 1 <= i <= n for i in cause
            ):
                raise ValidationError(
                    f"cause {cause!r} must be a list of 1-based indices in 1..{n}"
                )
            masks.append(mask_of([i - 1 for i in cause], n))
        game = make_explicit_cause_game(n, masks)
    return LoadedSource(game=game, names=names, source_kind="game")


def game_to_dict(game: GameOracle, names=None) -> dict:
    doc: dict = {"n": game.n}
    if names is not None:
        doc["features"] = list(names)
    if isinstance(game, WeightedVotingGame):
        doc["type"] = "weighted_voting"
        doc["weights"] = [str(w) for w in game.weights]
        doc["threshold"] = str(game.threshold)
    elif isinstance(game, ExplicitCauseGame):
        doc["type"] = "explicit_causes"
        doc["causes"] = [[i + 1 for i in members_of(m)] for m in game.causes]
    elif isinstance(game, TruthTableGame):
        doc["type"] = "truth_table"
        doc["table"] = hex_table_encode(game.win_table())
    else:
        doc["type"] = "truth_table"
        doc["table"] = hex_table_encode(game.win_table())
    return doc


def _variable_from_dict(doc: dict) -> Variable:
    name = _expect(doc, "name", "variable")
    kind = _expect(doc, "kind", "variable")
    domain = _expect(doc, "domain", f"variable {name!r}")
    if not isinstance(domain, list) or not domain:
        raise ValidationError(f"variable {name!r} needs a non-empty 'domain' list")
    parents = doc.get("parents", [])
    if not isinstance(parents, list):
        raise ValidationError(f"variable {name!r}: 'parents' must be a list")
    table = None
    if "table" in doc:
        raw = doc["table"]
        if not isinstance(raw, dict):
            raise ValidationError(
                f"variable {name!r}: 'table' must map parent tuples to values"
            )
        table = {}
        for key, value in raw.items():
            try:
                parsed = json.loads(key)
            except json.JSONDecodeError:
                raise ValidationError(
                    f"variable {name!r}: table key {key!r} is not a JSON array"
                )
            if not isinstance(parsed, list) or len(parsed) != len(parents):
                raise ValidationError(
                    f"variable {name!r}: table key {key!r} must list one value "
                    f"per parent ({len(parents)})"
                )
            table[tuple(parsed)] = value
    return Variable(
        name=name,
        kind=kind,
        domain=tuple(domain),
        parents=tuple(parents),
        table=table,
    )


def model_from_dict(doc: dict) -> tuple[CausalModel, tuple, ConstraintSet]:
    variables = _expect(doc, "variables", "causal model file")
    if not isinstance(variables, list) or not variables:
        raise ValidationError("'variables' must be a non-empty list")
    model = CausalModel(
        [_variable_from_dict(v) for v in variables],
        _expect(doc, "output", "causal model file"),
    )
    point_doc = _expect(doc, "point_of_interest", "causal model file")
    if not isinstance(point_doc, dict):
        raise ValidationError("'point_of_interest' must map variable names to values")
    point = model.validate_point(point_doc)
    constraints_doc = _expect(doc, "constraint_set", "causal model file")
    if constraints_doc == "all_domain_points":
        constraints = ConstraintSet.all_domain_points(model)
    elif isinstance(constraints_doc, list):
        constraints = ConstraintSet(model, constraints_doc)
    else:
        raise ValidationError(
            "'constraint_set' must be a list of assignments or \"all_domain_points\""
        )
    return model, point, constraints


def source_from_dict(doc: dict) -> LoadedSource:
    if not isinstance(doc, dict):
        raise ValidationError("input document must be a JSON object")
    if "variables" in doc:
        model, point, constraints = model_from_dict(doc)
        game = total_effect_game(model, point, constraints)
        return LoadedSource(
            game=game, names=model.features, source_kind="causal-model", model=model
        )
    return game_from_dict(doc)


def load_source(path: str) -> LoadedSource:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ValidationError(f"{path}: not UTF-8 ({exc})")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return source_from_dict(doc)
