"""Causal explanations of binary classifier decisions.

Builds a monotone binary value function over feature coalitions (from a
structural causal model or directly), enumerates its minimal and
quasi-minimal causes, and aggregates them into six power indices, exactly or
by seeded Monte Carlo sampling.  Every axiom the indices are characterized
by ships as an executable randomized check.
"""

from .coalition import Coalition
from .errors import (
    CapacityError,
    CausalPowerError,
    InternalInvariantError,
    InvalidArgumentError,
    InvalidCauseFamilyError,
    InvalidGameError,
    InvalidInterventionError,
    ModelError,
    ModelIncompleteError,
    ValidationError,
)
from .games import (
    ContractedGame,
    ExplicitCauseGame,
    GameOracle,
    PermutedGame,
    TruthTableGame,
    UnanimityGame,
    WeightedVotingGame,
    contract,
    games_equal,
    is_monotone,
    make_explicit_cause_game,
    make_truth_table,
    make_unanimity,
    make_weighted_voting,
    permute,
)
from .causal import (
    CausalModel,
    ConstraintSet,
    DirectEffectGame,
    TotalEffectGame,
    Variable,
    direct_effect_game,
    sat,
    total_effect_game,
)
from .enumeration import (
    CauseFamily,
    critical_set,
    minimal_causes,
    quasi_minimal_causes,
)
from .indices import (
    INDEX_KINDS,
    IndexVector,
    banzhaf,
    compute_index,
    deegan_packel,
    holler_packel,
    johnston,
    responsibility,
    shapley,
)
from .sampling import (
    EstimateReport,
    SamplingConfig,
    estimate,
    estimate_deegan_packel,
    estimate_holler_packel,
    estimate_johnston,
    estimate_responsibility,
    sample_size,
)
from .axioms import (
    AxiomCheck,
    ImpossibilityTrace,
    SyntheticQuasiFamily,
    alternate_johnston,
    check_axiom,
    demonstrate_impossibility,
    partition_game,
    random_antichain,
    random_monotone_game,
)
from .fileio import LoadedSource, load_source

__version__ = "0.1.0"

__all__ = [
    "Coalition",
    "GameOracle",
    "WeightedVotingGame",
    "TruthTableGame",
    "ExplicitCauseGame",
    "UnanimityGame",
    "ContractedGame",
    "PermutedGame",
    "make_weighted_voting",
    "make_truth_table",
    "make_explicit_cause_game",
    "make_unanimity",
    "contract",
    "permute",
    "is_monotone",
    "games_equal",
    "CausalModel",
    "Variable",
    "ConstraintSet",
    "TotalEffectGame",
    "DirectEffectGame",
    "total_effect_game",
    "direct_effect_game",
    "sat",
    "CauseFamily",
    "minimal_causes",
    "quasi_minimal_causes",
    "critical_set",
    "IndexVector",
    "INDEX_KINDS",
    "responsibility",
    "holler_packel",
    "deegan_packel",
    "johnston",
    "shapley",
    "banzhaf",
    "compute_index",
    "SamplingConfig",
    "EstimateReport",
    "sample_size",
    "estimate",
    "estimate_johnston",
    "estimate_deegan_packel",
    "estimate_holler_packel",
    "estimate_responsibility",
    "AxiomCheck",
    "SyntheticQuasiFamily",
    "alternate_johnston",
    "check_axiom",
    "demonstrate_impossibility",
    "ImpossibilityTrace",
    "partition_game",
    "random_antichain",
    "random_monotone_game",
    "LoadedSource",
    "load_source",
    "CausalPowerError",
    "ValidationError",
    "InvalidGameError",
    "InvalidCauseFamilyError",
    "InvalidArgumentError",
    "ModelError",
    "ModelIncompleteError",
    "InvalidInterventionError",
    "CapacityError",
    "InternalInvariantError",
]
