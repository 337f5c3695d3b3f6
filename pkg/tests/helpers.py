"""Shared test fixtures: the two-arsonist model and small game builders."""
from causalpower import CausalModel, ConstraintSet, Variable

OR_TABLE = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1}
ID_TABLE = {(0,): 0, (1,): 1}


def arsonist_model() -> CausalModel:
    """Two arsonists: U_i decides intent, A_i = U_i drops the match,
    B = A_1 or A_2 burns the forest.  Features are (U1, U2, A1, A2)."""
    return CausalModel(
        [
            Variable("U1", "exogenous", (0, 1)),
            Variable("U2", "exogenous", (0, 1)),
            Variable("A1", "endogenous", (0, 1), ("U1",), ID_TABLE),
            Variable("A2", "endogenous", (0, 1), ("U2",), ID_TABLE),
            Variable("B", "endogenous", (0, 1), ("A1", "A2"), OR_TABLE),
        ],
        output="B",
    )


def arsonist_point() -> dict:
    return {"U1": 1, "U2": 1, "A1": 1, "A2": 1}


def arsonist_constraints(model: CausalModel) -> ConstraintSet:
    return ConstraintSet.all_domain_points(model)
