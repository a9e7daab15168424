"""
Tests for the quadcopter benchmark model
"""

import pytest

from core.config import QuadcopterSettings
from core.system_models import Direction
from benchmarks.quadcopter import (
    CATALOG_FILES, QuadcopterVariant, build_quadcopter_model, generate_quadcopter_catalogs,
    quadcopter_params, quadcopter_specs,
)


@pytest.mark.parametrize("variant, objectives", [
    ("single", ["velocity"]),
    ("multi", ["velocity", "mass"]),
    ("fleet", ["velocity", "payload", "cost"]),
])
def test_variant_objectives(variant, objectives):
    model = build_quadcopter_model(variant)
    assert [o.name for o in model.objectives] == objectives
    assert model.objectives[0].direction == Direction.MAXIMIZE


def test_shipped_model_shape(quad_model):
    assert quad_model.variable_names == list(CATALOG_FILES)
    assert {m.name for m in quad_model.metrics} == {"mass", "cost", "payload"}
    assert len(quad_model.constraints) == 14


def test_fleet_variant_uses_landing_rates():
    settings = QuadcopterSettings(landing_camera_rate_per_speed=0.5)
    params = quadcopter_params(QuadcopterVariant.FLEET, settings)
    assert params["camera_rate_per_speed"] == 0.5
    assert params["compute_rate_per_speed"] == settings.landing_compute_rate_per_speed
    assert quadcopter_params(QuadcopterVariant.MULTI, settings)["camera_rate_per_speed"] == 1.5


def test_budget_setting_reaches_model():
    model = build_quadcopter_model("single", settings=QuadcopterSettings(budget=10.0))
    budget = next(c for c in model.constraints if c.name == "budget")
    assert budget.rhs.value == 10.0


def test_generated_catalogs():
    catalogs = generate_quadcopter_catalogs(6, seed=3)
    assert set(catalogs) == set(CATALOG_FILES)
    assert all(len(c) == 6 for c in catalogs.values())
    assert catalogs["B"].variable_name == "B"
    assert generate_quadcopter_catalogs(6, seed=3) == catalogs
    assert generate_quadcopter_catalogs(6, seed=4)["B"] != catalogs["B"]


def test_model_over_generated_catalogs():
    catalogs = generate_quadcopter_catalogs(4, seed=0)
    model = build_quadcopter_model("multi", catalogs=catalogs)
    assert model.combinations() == 4 ** len(CATALOG_FILES)


def test_specs_cover_every_variable():
    specs = quadcopter_specs()
    covered = set()
    for spec in specs:
        covered |= {v for v in spec.variables if v in CATALOG_FILES}
    assert covered == set(CATALOG_FILES) - {"S"}
