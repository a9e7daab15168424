"""
Tests for the front container and the cut-loop engine
"""

import pytest

from core.exceptions import InfeasibleModel, LengthMismatch
from core.expressions import Constant, ref
from core.system_models import Constraint, Direction
from pareto.front_engine import EngineConfig, FrontEngine, compute_front, insert, merge
from pareto.front_models import ParetoFront, ParetoPoint
from solver.solver_models import SearchStatistics, SolveResult, SolveStatus, SolverConfig
from solver.tree_search import LexicographicSolver


def _point(*vector, partition=(), **assignment):
    return ParetoPoint(vector=tuple(float(v) for v in vector), assignment=assignment, partition=partition)


class TestParetoFront:
    def test_add_keeps_non_dominated(self):
        front = ParetoFront.empty(2)
        assert front.add(_point(2, 2))
        assert front.add(_point(1, 3))
        assert not front.add(_point(3, 3))
        assert front.add(_point(1, 1))
        assert front.vectors() == {(1.0, 1.0)}

    def test_duplicate_vector_keeps_incumbent(self):
        front = ParetoFront.empty(2)
        front.add(_point(1, 2, X="first"))
        assert not front.add(_point(1, 2, X="second"))
        assert front.points[0].assignment == {"X": "first"}

    def test_partitions_do_not_compete(self):
        front = ParetoFront.empty(2)
        front.add(_point(1, 1, partition=(("h", 1.0),)))
        assert front.add(_point(2, 2, partition=(("h", 2.0),)))
        assert not front.add(_point(3, 3, partition=(("h", 2.0),)))
        assert front.partitions() == [(("h", 1.0),), (("h", 2.0),)]

    def test_width_checked(self):
        with pytest.raises(LengthMismatch):
            ParetoFront.empty(2).add(_point(1, 2, 3))

    def test_reported_values_and_sorting(self, battery_model):
        front = ParetoFront.for_model(battery_model)
        front.add(_point(-2, 190))
        front.add(_point(-4, 300))
        assert front.directions == [Direction.MAXIMIZE, Direction.MINIMIZE]
        assert front.reported_values(front.points[0]) == [2.0, 190.0]
        assert [p.vector for p in front.sorted_points()] == [(-4.0, 300.0), (-2.0, 190.0)]
        assert front.find((-4.0, 300.0)) is not None
        assert front.find((0.0, 0.0)) is None


class TestInsertMerge:
    def test_insert_leaves_input_unchanged(self):
        front = ParetoFront.empty(2)
        front.add(_point(2, 2))
        result = insert(front, _point(1, 1))
        assert front.vectors() == {(2.0, 2.0)}
        assert result.vectors() == {(1.0, 1.0)}

    def test_insert_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            insert(ParetoFront.empty(2), _point(1))

    def test_merge(self):
        first = ParetoFront.empty(2)
        second = ParetoFront.empty(2)
        for v in [(1, 5), (3, 3)]:
            first.add(_point(*v, side="first"))
        for v in [(3, 3), (2, 2), (5, 1)]:
            second.add(_point(*v, side="second"))
        merged = merge(first, second)
        assert merged.vectors() == {(1.0, 5.0), (2.0, 2.0), (5.0, 1.0)}
        assert merge(first, first).vectors() == first.vectors()

    def test_merge_ties_favour_first(self):
        first = ParetoFront.empty(1)
        second = ParetoFront.empty(1)
        first.add(_point(1, side="first"))
        second.add(_point(1, side="second"))
        assert merge(first, second).points[0].assignment == {"side": "first"}

    def test_merge_width_mismatch(self):
        with pytest.raises(LengthMismatch):
            merge(ParetoFront.empty(2), ParetoFront.empty(3))


class TestFrontEngine:
    def test_toy_front(self, toy_model):
        front = compute_front(toy_model)
        assert front.vectors() == {(1.0, 3.0), (3.0, 1.0)}
        assert front.objective_names == ["cost", "mass"]

    def test_single_feasible_assignment(self, battery_model):
        front = compute_front(battery_model)
        assert len(front) == 1
        [point] = front.points
        assert point.assignment == {"M": "m-small", "B": "b-strong"}
        assert front.reported_values(point) == [2.0, 190.0]

    def test_infeasible_model(self, toy_model):
        model = toy_model.replace(constraints=[
            Constraint(name="impossible", lhs=ref("A", "cost"), rhs=Constant(0)),
        ])
        with pytest.raises(InfeasibleModel):
            compute_front(model)

    def test_statistics_accumulate(self, toy_model):
        engine = FrontEngine()
        engine.compute_front(toy_model)
        # one solve per front point plus the final infeasible one
        assert engine.statistics.solves == 3

    def test_threads_leave_flat_solve_sequential(self, toy_model):
        engine = FrontEngine(EngineConfig(threads=4))
        front = engine.compute_front(toy_model)
        assert [p.vector for p in front.points] == [p.vector for p in compute_front(toy_model).points]
        assert engine.statistics.solves == 3

    def test_pluggable_solver_factory(self, toy_model, mocker):
        factory = mocker.Mock(side_effect=LexicographicSolver)
        config = EngineConfig(solver=SolverConfig(seed=5))
        FrontEngine(config, factory).compute_front(toy_model)
        factory.assert_called_once_with(toy_model, config.solver)

    def test_unsound_solver_is_detected(self, toy_model):
        class Repeating:
            def __init__(self, model, config):
                pass

            def solve(self, cuts=()):
                return SolveResult(
                    status=SolveStatus.OPTIMAL,
                    assignment={"A": "a1", "B": "b1"},
                    vector=(1.0, 3.0),
                    statistics=SearchStatistics(solves=1),
                )

        with pytest.raises(RuntimeError):
            FrontEngine(solver_factory=Repeating).compute_front(toy_model)
