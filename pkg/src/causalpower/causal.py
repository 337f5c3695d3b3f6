"""Structural causal models and the causal value functions built from them.

A model is a finite, acyclic system: exogenous variables get their values
from outside, endogenous ones from lookup tables over their parents.  The
features of the induced game are all variables except the binary output,
which must be a sink.

The consistency predicate accepts a candidate point iff it equals the
propagation of the point of interest under the intervention that pins the
coalition to the candidate's values: exogenous features outside the
coalition keep their original values, endogenous features outside it are
recomputed through the structural functions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .coalition import Coalition, coerce_mask
from .errors import (
    CapacityError,
    InvalidArgumentError,
    InvalidInterventionError,
    ModelError,
    ModelIncompleteError,
)
from .games import GameOracle

EXOGENOUS = "exogenous"
ENDOGENOUS = "endogenous"

CONSTRAINT_PRODUCT_CAP = 1 << 20


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str
    domain: tuple
    parents: tuple[str, ...] = ()
    table: Optional[Mapping[tuple, object]] = None

    def __post_init__(self):
        if self.kind not in (EXOGENOUS, ENDOGENOUS):
            raise ModelError(f"variable {self.name!r}: unknown kind {self.kind!r}")
        if not self.domain:
            raise ModelError(f"variable {self.name!r}: empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise ModelError(f"variable {self.name!r}: duplicate domain values")
        if self.kind == EXOGENOUS and (self.parents or self.table):
            raise ModelError(f"exogenous variable {self.name!r} cannot have parents or a table")
        if self.kind == ENDOGENOUS and self.table is None:
            raise ModelError(f"endogenous variable {self.name!r} needs a structural table")


class CausalModel:
    """An acyclic structural causal model with a binary output variable."""

    def __init__(self, variables: Sequence[Variable], output: str):
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ModelError("variable names must be unique")
        self._vars = {v.name: v for v in variables}
        self.variables = tuple(variables)
        if output not in self._vars:
            raise ModelError(f"output variable {output!r} is not defined")
        self.output = output
        out_var = self._vars[output]
        if out_var.kind != ENDOGENOUS:
            raise ModelError("output variable must be endogenous")
        if len(out_var.domain) != 2:
            raise ModelError(
                f"output variable {output!r} must be binary, domain has {len(out_var.domain)} values"
            )
        for v in variables:
            for p in v.parents:
                if p not in self._vars:
                    raise ModelError(f"variable {v.name!r} references unknown parent {p!r}")
                if p == output:
                    raise ModelError(f"output must be a sink, but {v.name!r} depends on it")
        self.features = tuple(n for n in names if n != output)
        self.feature_index = {n: i for i, n in enumerate(self.features)}
        self.exogenous = tuple(n for n in names if self._vars[n].kind == EXOGENOUS)
        self._endo_topo = self._toposort()
        self._validate_tables()
        self._feature_mask_exogenous = 0
        for name in self.exogenous:
            self._feature_mask_exogenous |= 1 << self.feature_index[name]

    @property
    def n(self) -> int:
        return len(self.features)

    def variable(self, name: str) -> Variable:
        return self._vars[name]

    def domain_of(self, name: str) -> tuple:
        return self._vars[name].domain

    def _toposort(self) -> tuple[str, ...]:
        """Endogenous variables in dependency order (output last by sink-ness)."""
        endo = [v.name for v in self.variables if v.kind == ENDOGENOUS]
        placed = set(self.exogenous)
        order: list[str] = []
        pending = list(endo)
        while pending:
            progressed = False
            remaining = []
            for name in pending:
                if all(p in placed for p in self._vars[name].parents):
                    order.append(name)
                    placed.add(name)
                    progressed = True
                else:
                    remaining.append(name)
            if not progressed:
                raise ModelError(f"causal network has a cycle through {sorted(remaining)}")
            pending = remaining
        return tuple(order)

    def _validate_tables(self) -> None:
        for name in self._endo_topo:
            var = self._vars[name]
            expected = set(
                itertools.product(*(self._vars[p].domain for p in var.parents))
            )
            keys = set(var.table.keys())
            missing = expected - keys
            if missing:
                raise ModelIncompleteError(
                    f"structural table of {name!r} is missing entry for parents "
                    f"{var.parents} = {sorted(missing, key=repr)[0]!r}"
                )
            extra = keys - expected
            if extra:
                raise ModelError(
                    f"structural table of {name!r} has an entry outside the parent "
                    f"domains: {sorted(extra, key=repr)[0]!r}"
                )
            for key, value in var.table.items():
                if value not in var.domain:
                    raise ModelError(
                        f"structural table of {name!r} outputs {value!r}, "
                        f"not in its domain {var.domain}"
                    )

    # -- assignments -------------------------------------------------------

    def assignment_tuple(self, assignment: Mapping[str, object]) -> tuple:
        """Convert a name-keyed feature assignment to a feature-order tuple."""
        missing = [n for n in self.features if n not in assignment]
        if missing:
            raise ModelError(f"assignment is missing features {missing}")
        values = []
        for name in self.features:
            v = assignment[name]
            if v not in self._vars[name].domain:
                raise ModelError(
                    f"value {v!r} for {name!r} is outside its domain {self._vars[name].domain}"
                )
            values.append(v)
        return tuple(values)

    def assignment_dict(self, values: Sequence) -> dict:
        return dict(zip(self.features, values))

    def _table_value(self, name: str, key: tuple):
        try:
            return self._vars[name].table[key]
        except KeyError:
            raise ModelIncompleteError(
                f"structural table of {name!r} has no entry for parents = {key!r}"
            ) from None

    def output_at(self, x: Sequence):
        """The output value the model assigns to a full feature assignment."""
        parents = self._vars[self.output].parents
        key = tuple(x[self.feature_index[p]] for p in parents)
        return self._table_value(self.output, key)

    def propagate(self, x: Sequence, mask: int, overrides: Sequence) -> tuple:
        """Propagate the intervention that pins the masked features to ``overrides``.

        Exogenous features outside the mask keep their value from ``x``;
        endogenous features outside it are recomputed in topological order.
        Returns the resulting full feature assignment.
        """
        vals: dict[str, object] = {}
        for name in self.exogenous:
            idx = self.feature_index[name]
            vals[name] = overrides[idx] if mask >> idx & 1 else x[idx]
        for name in self._endo_topo:
            if name == self.output:
                continue
            idx = self.feature_index[name]
            if mask >> idx & 1:
                vals[name] = overrides[idx]
            else:
                var = self._vars[name]
                key = tuple(vals[p] for p in var.parents)
                vals[name] = self._table_value(name, key)
        return tuple(vals[n] for n in self.features)

    def evaluate(self, context: Mapping[str, object]) -> dict:
        """Compute every variable (including the output) from exogenous values."""
        x = []
        for name in self.features:
            var = self._vars[name]
            if var.kind == EXOGENOUS:
                if name not in context:
                    raise ModelError(f"context is missing exogenous variable {name!r}")
                if context[name] not in var.domain:
                    raise ModelError(
                        f"value {context[name]!r} for {name!r} is outside its domain"
                    )
                x.append(context[name])
            else:
                x.append(var.domain[0])  # placeholder, recomputed below
        features = self.propagate(tuple(x), 0, tuple(x))
        result = self.assignment_dict(features)
        result[self.output] = self.output_at(features)
        return result

    def intervene(self, targets: Mapping[str, object]) -> "CausalModel":
        """Replace the targeted variables by constants (exogenous allowed)."""
        if self.output in targets:
            raise InvalidInterventionError("the output variable cannot be intervened on")
        for name, value in targets.items():
            if name not in self._vars:
                raise InvalidInterventionError(f"unknown intervention target {name!r}")
            if value not in self._vars[name].domain:
                raise InvalidInterventionError(
                    f"value {value!r} for {name!r} is outside its domain"
                )
        new_vars = []
        for var in self.variables:
            if var.name in targets:
                new_vars.append(
                    Variable(
                        name=var.name,
                        kind=ENDOGENOUS,
                        domain=var.domain,
                        parents=(),
                        table={(): targets[var.name]},
                    )
                )
            else:
                new_vars.append(var)
        return CausalModel(new_vars, self.output)

    def sat(self, coalition, xprime, x) -> bool:
        """True iff ``xprime`` equals the propagation of ``x`` under S <- xprime_S."""
        mask = self._coerce_feature_mask(coalition)
        xp = self._coerce_assignment(xprime)
        xv = self._coerce_assignment(x)
        return self.propagate(xv, mask, xp) == xp

    def _coerce_assignment(self, assignment) -> tuple:
        if isinstance(assignment, Mapping):
            return self.assignment_tuple(assignment)
        values = tuple(assignment)
        if len(values) != self.n:
            raise ModelError(f"expected {self.n} feature values, got {len(values)}")
        for name, v in zip(self.features, values):
            if v not in self._vars[name].domain:
                raise ModelError(f"value {v!r} for {name!r} is outside its domain")
        return values

    def _coerce_feature_mask(self, coalition) -> int:
        if isinstance(coalition, (Coalition, int)):
            return coerce_mask(coalition, self.n)
        indices = []
        for item in coalition:
            if isinstance(item, str):
                if item == self.output:
                    raise InvalidArgumentError("the output variable is not a feature")
                if item not in self.feature_index:
                    raise InvalidArgumentError(f"unknown feature {item!r}")
                indices.append(self.feature_index[item])
            else:
                indices.append(item)
        return coerce_mask(indices, self.n)

    def validate_point(self, point) -> tuple:
        """Check a point of interest for model consistency; suggest a repair."""
        x = self._coerce_assignment(point)
        propagated = self.propagate(x, 0, x)
        if propagated != x:
            fixes = {
                name: propagated[i]
                for i, name in enumerate(self.features)
                if propagated[i] != x[i]
            }
            raise ModelError(
                "point of interest is inconsistent with the structural functions; "
                f"propagating its exogenous part gives {fixes!r} instead"
            )
        return x


class ConstraintSet:
    """The finite list of feasible alternative points, canonically ordered."""

    def __init__(self, model_or_domains, candidates: Iterable):
        if isinstance(model_or_domains, CausalModel):
            domains = tuple(
                model_or_domains.domain_of(n) for n in model_or_domains.features
            )
            self._coerce = model_or_domains._coerce_assignment
        else:
            domains = tuple(tuple(d) for d in model_or_domains)
            self._coerce = None
        self.domains = domains
        rows = []
        for cand in candidates:
            row = self._coerce(cand) if self._coerce else tuple(cand)
            if len(row) != len(domains):
                raise ModelError(
                    f"candidate has {len(row)} values, expected {len(domains)}"
                )
            key = []
            for value, domain in zip(row, domains):
                if value not in domain:
                    raise ModelError(
                        f"candidate value {value!r} is outside its domain {domain}"
                    )
                key.append(domain.index(value))
            rows.append((tuple(key), row))
        rows.sort(key=lambda kv: kv[0])
        for (ka, a), (kb, b) in zip(rows, rows[1:]):
            if ka == kb:
                raise ModelError(f"constraint set contains duplicate candidate {a!r}")
        self.candidates = tuple(row for _, row in rows)

    @classmethod
    def all_domain_points(cls, model_or_domains) -> "ConstraintSet":
        if isinstance(model_or_domains, CausalModel):
            domains = tuple(model_or_domains.domain_of(n) for n in model_or_domains.features)
        else:
            domains = tuple(tuple(d) for d in model_or_domains)
        total = 1
        for d in domains:
            total *= len(d)
            if total > CONSTRAINT_PRODUCT_CAP:
                raise CapacityError(
                    f"all_domain_points would enumerate more than 2^20 candidates"
                )
        return cls(domains, itertools.product(*domains))

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self):
        return iter(self.candidates)


class TotalEffectGame(GameOracle):
    """Total-effect value function: a coalition wins iff some feasible
    candidate, consistent with intervening on the coalition, flips the
    output."""

    kind = "causal-value"

    def __init__(self, model: CausalModel, point, constraints: ConstraintSet):
        super().__init__(model.n)
        self.model = model
        self.point = model.validate_point(point)
        self.constraints = constraints
        self.base_output = model.output_at(self.point)
        self._flips = tuple(
            model.output_at(c) != self.base_output for c in constraints.candidates
        )
        exo = model._feature_mask_exogenous
        self._exo_diffs = tuple(
            _diff_mask(c, self.point) & exo for c in constraints.candidates
        )
        self._memo: dict[int, Optional[tuple]] = {}

    def value(self, mask: int) -> int:
        return 1 if self.witness(mask) is not None else 0

    def witness(self, mask: int) -> Optional[tuple]:
        """The first feasible candidate (canonical order) that wins for the mask."""
        if mask in self._memo:
            return self._memo[mask]
        found = None
        for cand, flips, exo_diff in zip(
            self.constraints.candidates, self._flips, self._exo_diffs
        ):
            if not flips:
                continue
            # Exogenous features outside the coalition must equal the point.
            if exo_diff & ~mask:
                continue
            if self.model.propagate(self.point, mask, cand) == cand:
                found = cand
                break
        self._memo[mask] = found
        return found


class DirectEffectGame(GameOracle):
    """Direct-effect value function: only coalition features may change, no
    downstream propagation.  The output function is a black box, queried once
    per candidate at construction."""

    kind = "causal-value"

    def __init__(self, func: Callable, point: Sequence, constraints: ConstraintSet):
        point = tuple(point)
        super().__init__(len(point))
        if len(constraints.domains) != len(point):
            raise InvalidArgumentError("point and constraint set disagree on feature count")
        self.point = point
        self.constraints = constraints
        self.base_output = func(point)
        self._diff_flip = tuple(
            (_diff_mask(c, point), func(c) != self.base_output)
            for c in constraints.candidates
        )
        self._memo: dict[int, Optional[tuple]] = {}

    def value(self, mask: int) -> int:
        return 1 if self.witness(mask) is not None else 0

    def witness(self, mask: int) -> Optional[tuple]:
        if mask in self._memo:
            return self._memo[mask]
        found = None
        for cand, (diff, flips) in zip(self.constraints.candidates, self._diff_flip):
            if flips and not diff & ~mask:
                found = cand
                break
        self._memo[mask] = found
        return found


def _diff_mask(a: Sequence, b: Sequence) -> int:
    mask = 0
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            mask |= 1 << i
    return mask


def sat(model: CausalModel, coalition, xprime, x) -> bool:
    return model.sat(coalition, xprime, x)


def total_effect_game(model: CausalModel, point, constraints: ConstraintSet) -> TotalEffectGame:
    return TotalEffectGame(model, point, constraints)


def direct_effect_game(func: Callable, point, constraints: ConstraintSet) -> DirectEffectGame:
    return DirectEffectGame(func, point, constraints)
