"""
Tests for the lexicographic tree search
"""

import pytest

from core.exceptions import NodeLimitExceeded
from core.expressions import Constant, ref
from core.system_models import Catalog, Constraint, Objective, SystemModel
from solver.solver_models import (
    NonDominationCut, Propagation, SolveStatus, SolverConfig, ValueOrder, VariableOrder,
)
from solver.tree_search import LexicographicSolver, solve_lexicographic

ALL_CONFIGS = [
    SolverConfig(variable_order=variable_order, value_order=value_order, propagation=propagation, seed=seed)
    for variable_order in VariableOrder
    for value_order in ValueOrder
    for propagation in Propagation
    for seed in (0, 3)
]


class TestToyModel:
    def test_lexicographic_minimum(self, toy_model):
        result = solve_lexicographic(toy_model)
        assert result.feasible
        assert result.vector == (1.0, 3.0)
        assert result.assignment == {"A": "a1", "B": "b1"}

    def test_cut_moves_to_next_point(self, toy_model):
        result = solve_lexicographic(toy_model, [NonDominationCut(bounds=(1.0, 3.0))])
        assert result.vector == (3.0, 1.0)

    def test_cuts_exhaust_front(self, toy_model):
        cuts = [NonDominationCut(bounds=(1.0, 3.0)), NonDominationCut(bounds=(3.0, 1.0))]
        result = solve_lexicographic(toy_model, cuts)
        assert result.status == SolveStatus.INFEASIBLE
        assert result.assignment is None

    def test_solver_is_reusable(self, toy_model):
        solver = LexicographicSolver(toy_model)
        first = solver.solve()
        second = solver.solve([NonDominationCut(bounds=first.vector)])
        assert first.vector != second.vector
        assert solver.solve().vector == first.vector


@pytest.mark.parametrize("config", ALL_CONFIGS, ids=str)
def test_every_configuration_finds_the_same_optimum(battery_model, config):
    result = LexicographicSolver(battery_model, config).solve()
    assert result.assignment == {"M": "m-small", "B": "b-strong"}
    assert result.vector == (-2.0, 190.0)


def test_node_limit(battery_model):
    config = SolverConfig(propagation=Propagation.NONE, node_limit=1)
    with pytest.raises(NodeLimitExceeded):
        LexicographicSolver(battery_model, config).solve()


def test_statistics_count_nodes(battery_model):
    result = solve_lexicographic(battery_model, config=SolverConfig(propagation=Propagation.NONE))
    stats = result.statistics
    assert stats.solves == 1
    assert stats.nodes_expanded >= 2
    assert stats.wall_time >= 0.0


def _unary_model():
    xs = Catalog.from_rows("X", ["cost"], [("x1", [1.0]), ("x2", [5.0]), ("x3", [2.0])])
    return SystemModel(
        catalogs={"X": xs},
        constraints=[Constraint(name="cheap", lhs=ref("X", "cost"), rhs=Constant(2))],
        objectives=[Objective(name="neg_cost", expr=-ref("X", "cost"))],
    )


def test_unary_filtering():
    model = _unary_model()
    filtered = solve_lexicographic(model, config=SolverConfig(propagation=Propagation.BOUNDS_PLUS_UNARY))
    plain = solve_lexicographic(model, config=SolverConfig(propagation=Propagation.NONE))
    assert filtered.statistics.filtered_tuples == 1
    assert plain.statistics.filtered_tuples == 0
    assert filtered.assignment == plain.assignment == {"X": "x3"}


def test_constant_violated_constraint_is_infeasible():
    model = _unary_model()
    model = model.replace(constraints=list(model.constraints) + [
        Constraint(name="never", lhs=Constant(2), rhs=Constant(1)),
    ])
    assert solve_lexicographic(model).status == SolveStatus.INFEASIBLE


def test_cut_admits():
    cut = NonDominationCut(bounds=(1.0, 3.0))
    assert cut.admits((0.5, 10.0))
    assert cut.admits((2.0, 2.0))
    assert not cut.admits((1.0, 3.0))
    assert not cut.admits((1.0, 4.0))
