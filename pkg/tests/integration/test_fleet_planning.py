"""
Fleet planning end to end
"""

import pytest

from benchmarks.fleet import (
    FleetPlanner, build_fleet_from_pool, design_pool, load_fleet_params, load_packages,
    schedule_cost_time, schedule_from_assignment,
)
from benchmarks.fleet_models import FleetObjectives, FleetParams
from benchmarks.quadcopter import build_quadcopter_model, quadcopter_specs
from decomposition.decomposer import SubsystemCache
from oracle.brute_force import brute_force_schedule_front
from pareto.front_engine import compute_front


@pytest.fixture(scope="module")
def fleet_quad_model():
    return build_quadcopter_model("fleet")


@pytest.fixture(scope="module")
def quad_front(fleet_quad_model):
    return compute_front(fleet_quad_model)


@pytest.mark.parametrize("objectives", list(FleetObjectives))
def test_fleet_front_matches_enumeration(models_dir, fleet_quad_model, quad_front, objectives):
    designs, provenance = design_pool(quad_front, fleet_quad_model)
    packages = load_packages(models_dir / "fleet" / "small_packages.csv")
    params = load_fleet_params(models_dir / "fleet" / "small_fleet.yaml").model_copy(
        update={"objectives": objectives}
    )
    fleet = build_fleet_from_pool(designs, packages, params, provenance)
    front = compute_front(fleet.model)
    assert front.vectors() == brute_force_schedule_front(fleet).vectors()
    for point in front.points:
        schedule = schedule_from_assignment(point.assignment, fleet)
        makespan, cost = schedule_cost_time(schedule, fleet)
        expected = (makespan, cost) if objectives == FleetObjectives.MULTI else (cost,)
        assert point.vector == expected


def test_planner_solves_the_quadcopter_once(models_dir, fleet_quad_model):
    packages = load_packages(models_dir / "fleet" / "small_packages.csv")
    planner = FleetPlanner(fleet_quad_model, quad_specs=quadcopter_specs(), cache=SubsystemCache())
    first = planner.solve(packages, FleetParams(fleet_size=2, max_designs=2))[1]
    second = planner.solve(packages, FleetParams(fleet_size=3, max_designs=2))[1]
    assert planner.computations == 1
    # a third drone can only shorten the makespan
    assert min(v[0] for v in second.vectors()) <= min(v[0] for v in first.vectors())


def test_decomposed_design_pool_matches_flat(fleet_quad_model, quad_front):
    planner = FleetPlanner(fleet_quad_model, quad_specs=quadcopter_specs())
    assert planner.quad_front().vectors() == quad_front.vectors()
