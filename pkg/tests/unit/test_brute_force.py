"""
Tests for the enumeration oracle
"""

import pytest

from core.exceptions import BudgetExceeded
from core.expressions import ref
from core.system_models import Catalog, Objective, SystemModel
from benchmarks.fleet import DESIGN_COLUMNS, DESIGN_INDEX, build_fleet_from_pool
from benchmarks.fleet_models import FleetObjectives, FleetParams, Package
from oracle.brute_force import (
    EnumerationBudget, brute_force_front, brute_force_lex, brute_force_schedule_front,
    same_vectors,
)
from pareto.front_models import ParetoFront, ParetoPoint

DESIGNS = Catalog.from_rows("designs", DESIGN_COLUMNS + [DESIGN_INDEX], [
    ("design-1", [10, 50, 100, 500, 1]),
    ("design-2", [20, 80, 300, 700, 2]),
])
PACKAGES = [
    Package(package_id="pkg-a", mass=40, distance=300),
    Package(package_id="pkg-b", mass=60, distance=500),
    Package(package_id="pkg-c", mass=50, distance=200),
    Package(package_id="pkg-d", mass=30, distance=400),
]


@pytest.fixture
def tied_model():
    """Every assignment has the same cost"""
    return SystemModel(
        catalogs={
            "X": Catalog.from_rows("X", ["w"], [("x2", [1]), ("x1", [1])]),
            "Y": Catalog.from_rows("Y", ["w"], [("y1", [2]), ("y0", [2])]),
        },
        objectives=[Objective(name="w", expr=ref("X", "w") + ref("Y", "w"))],
    )


def test_toy_front(toy_model):
    front = brute_force_front(toy_model)
    assert [p.vector for p in front.points] == [(1.0, 3.0), (3.0, 1.0)]
    assert front.points[0].assignment == {"A": "a1", "B": "b1"}


def test_battery_front(battery_model):
    front = brute_force_front(battery_model)
    assert front.vectors() == {(-2.0, 190.0)}


def test_first_assignment_represents_a_vector(tied_model):
    front = brute_force_front(tied_model)
    assert front.points[0].assignment == {"X": "x2", "Y": "y1"}


def test_lex_ties_go_to_smallest_ids(tied_model):
    vector, assignment = brute_force_lex(tied_model)
    assert vector == (3.0,)
    assert assignment == {"X": "x1", "Y": "y0"}


def test_lex_on_toy(toy_model):
    assert brute_force_lex(toy_model) == ((1.0, 3.0), {"A": "a1", "B": "b1"})


def test_budget(toy_model):
    EnumerationBudget(max_combinations=2).check(2)
    with pytest.raises(BudgetExceeded) as excinfo:
        brute_force_front(toy_model, EnumerationBudget(max_combinations=1))
    assert excinfo.value.combinations == 2


class TestScheduleFront:
    def test_multi_objective(self):
        fleet = build_fleet_from_pool(DESIGNS, PACKAGES, FleetParams(fleet_size=2, max_designs=2))
        front = brute_force_schedule_front(fleet)
        assert front.objective_names == ["makespan", "cost"]
        # pkg-b is too heavy for design-1, so a mixed fleet is the cheapest
        assert front.vectors() == {(100.0, 500.0), (70.0, 600.0)}

    def test_single_objective(self):
        params = FleetParams(fleet_size=2, max_designs=2, objectives=FleetObjectives.SINGLE)
        packages = [Package(package_id="p", mass=40, distance=100)]
        fleet = build_fleet_from_pool(DESIGNS, packages, params)
        front = brute_force_schedule_front(fleet)
        assert front.vectors() == {(200.0,)}

    def test_budget(self):
        fleet = build_fleet_from_pool(DESIGNS, PACKAGES, FleetParams(fleet_size=2))
        with pytest.raises(BudgetExceeded):
            brute_force_schedule_front(fleet, EnumerationBudget(max_combinations=10))


def test_same_vectors_rounding():
    first = ParetoFront.empty(1)
    first.add(ParetoPoint(vector=(0.1 + 0.2,), assignment={}))
    second = ParetoFront.empty(1)
    second.add(ParetoPoint(vector=(0.3,), assignment={}))
    assert not same_vectors(first, second)
    assert same_vectors(first, second, places=9)
