"""
Tests for the decomposer, the subsystem cache and provenance flattening
"""

import pytest

from core.exceptions import DecompositionError
from core.expressions import PropertyKey, ref
from core.system_models import Catalog, Constraint, Objective, Relation, SystemModel
from decomposition.decomposer import (
    Decomposer, SubsystemCache, decompose_solve, flatten, model_fingerprint,
)
from decomposition.subsystem_models import SubsystemSpec
from pareto.front_engine import EngineConfig, compute_front

UNIT = Catalog.from_rows("U", ["w", "c"], [("u1", [1, 5]), ("u2", [2, 3]), ("u3", [3, 6]), ("u4", [4, 1])])


@pytest.fixture
def replicated_model():
    """Two slots over the same catalog plus one outside variable"""
    ys = Catalog.from_rows("Y", ["w", "c"], [("y1", [1, 1]), ("y2", [4, 0])])
    return SystemModel(
        catalogs={"X1": UNIT.renamed("X1"), "X2": UNIT.renamed("X2"), "Y": ys},
        objectives=[
            Objective(name="weight", expr=ref("X1", "w") + ref("X2", "w") + ref("Y", "w")),
            Objective(name="cost", expr=ref("X1", "c") + ref("X2", "c") + ref("Y", "c")),
        ],
    )


REPLICATED_SPECS = [
    SubsystemSpec(name="unit", variables=["X1"], instance="slot1"),
    SubsystemSpec(name="unit", variables=["X2"], instance="slot2"),
]


def test_decomposed_front_matches_monolithic(replicated_model):
    result = Decomposer().solve(replicated_model, REPLICATED_SPECS)
    assert result.front.vectors() == compute_front(replicated_model).vectors()
    assert result.reduced_variables == ["slot1", "slot2", "Y"]
    for point in result.front.points:
        assert set(point.assignment) == {"X1", "X2", "Y"}


def test_replicated_subsystem_is_solved_once(replicated_model):
    cache = SubsystemCache()
    result = Decomposer(cache=cache).solve(replicated_model, REPLICATED_SPECS)
    assert cache.computations == 1
    assert cache.hits == 1
    assert [r.reused for r in result.reports] == [False, True]
    assert result.reports[1].external_properties == ["X2_w", "X2_c"]


def test_cache_survives_between_solves(replicated_model):
    cache = SubsystemCache()
    decomposer = Decomposer(cache=cache)
    decomposer.solve(replicated_model, REPLICATED_SPECS)
    decomposer.solve(replicated_model, REPLICATED_SPECS)
    assert cache.computations == 1
    assert cache.hits == 3
    assert "unit" in cache


def test_same_name_different_structure(replicated_model):
    specs = [
        SubsystemSpec(name="unit", variables=["X1"], instance="slot1"),
        SubsystemSpec(name="unit", variables=["Y"], instance="slot2"),
    ]
    with pytest.raises(DecompositionError, match="identical"):
        Decomposer().solve(replicated_model, specs)


def test_nested_subsystems(replicated_model):
    specs = [
        SubsystemSpec(name="first", variables=["X1"]),
        SubsystemSpec(name="pair", variables=["first", "X2"]),
    ]
    result = Decomposer().solve(replicated_model, specs)
    assert result.front.vectors() == compute_front(replicated_model).vectors()
    assert result.reduced_variables == ["pair", "Y"]
    assert [r.name for r in result.reports] == ["first", "pair"]


def test_partitioned_equality():
    xs = Catalog.from_rows("X", ["v", "w"], [("x1", [1, 5]), ("x2", [2, 1]), ("x3", [1, 2])])
    ys = Catalog.from_rows("Y", ["v", "w"], [("y1", [1, 1]), ("y2", [2, 3])])
    model = SystemModel(
        catalogs={"X": xs, "Y": ys},
        constraints=[Constraint(name="match", lhs=ref("X", "v"), rhs=ref("Y", "v"), relation=Relation.EQUAL)],
        objectives=[Objective(name="weight", expr=ref("X", "w") + ref("Y", "w"))],
    )
    spec = SubsystemSpec(name="xs", variables=["X"], declared_inconsistent_handles=[PropertyKey("X", "v")])
    result = Decomposer(EngineConfig(threads=2)).solve(model, [spec])
    [point] = result.front.points
    assert point.vector == (3.0,)
    assert point.assignment == {"X": "x3", "Y": "y1"}
    assert result.reports[0].partitions == 2


def test_empty_spec_list_is_plain_solve(toy_model):
    assert decompose_solve(toy_model, []).vectors() == compute_front(toy_model).vectors()


def test_flatten_nested_provenance():
    provenance = {
        "outer": {"outer-1": {"inner": "inner-2", "Z": "z1"}},
        "inner": {"inner-2": {"A": "a3", "B": "b1"}},
    }
    assert flatten({"outer": "outer-1", "Y": "y2"}, provenance) == {
        "A": "a3", "B": "b1", "Z": "z1", "Y": "y2",
    }


def test_model_fingerprint(toy_model, battery_model):
    assert model_fingerprint(toy_model) == model_fingerprint(toy_model.replace())
    assert model_fingerprint(toy_model) != model_fingerprint(battery_model)


def test_model_front_cache(toy_model):
    cache = SubsystemCache()
    first, reused_first = cache.model_front("toy", toy_model, lambda: compute_front(toy_model))
    second, reused_second = cache.model_front("toy", toy_model, lambda: pytest.fail("recomputed"))
    assert (reused_first, reused_second) == (False, True)
    assert first is second
    cache.clear()
    assert len(cache) == 0
