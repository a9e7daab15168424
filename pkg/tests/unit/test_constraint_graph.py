"""
Tests for the constraint graph and shared functions
"""

import pytest

from core.exceptions import EmptySubsystem, NotASubset
from core.expressions import PropertyKey
from consistency.constraint_graph import build_graph, shared_constraints, shared_functions
from consistency.graph_models import FunctionRole


def test_graph_nodes_and_edges(battery_model):
    graph = build_graph(battery_model)
    assert graph.variable_nodes == ["M", "B"]
    assert set(graph.function_nodes) == {
        "constraint:power:lhs", "constraint:power:rhs", "objective:current", "objective:mass",
    }
    assert graph.function_nodes["constraint:power:rhs"].role == FunctionRole.CONSTRAINT_RHS
    assert graph.function_nodes["objective:current"].role == FunctionRole.MAXIMIZE
    assert graph.edges_of("constraint:power:lhs") == [
        PropertyKey("M", "voltage"), PropertyKey("M", "current"),
    ]
    assert graph.functions_of("B") == [
        "constraint:power:rhs", "objective:mass",
    ]


def test_quadcopter_parallel_edges(quad_model):
    graph = build_graph(quad_model)
    # 4*(M.voltage*M.current) appears once in power and once in flight_time
    power_refs = graph.edges_of("constraint:power:lhs")
    assert power_refs.count(PropertyKey("M", "current")) == 1
    assert "constraint:logic_supply:lhs" in graph.function_nodes
    assert graph.function_nodes["constraint:logic_supply:lhs"].role == FunctionRole.EQUALITY


def test_shared_functions(battery_model):
    assert shared_constraints(battery_model, ["M"]) == ["power"]
    assert shared_functions(battery_model, ["M"]) == {
        "constraint:power:lhs", "constraint:power:rhs", "objective:mass",
    }


def test_subsystem_must_be_non_empty(battery_model):
    with pytest.raises(EmptySubsystem):
        shared_functions(battery_model, [])


def test_subsystem_must_be_subset(battery_model):
    with pytest.raises(NotASubset) as info:
        shared_functions(battery_model, ["M", "Z"])
    assert info.value.missing == ["Z"]
