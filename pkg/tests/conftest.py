"""
Shared fixtures for the optimizer test suites
"""

import sys
from pathlib import Path

import hypothesis
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from core.expressions import Constant, ref  # noqa: E402
from core.system_models import (  # noqa: E402
    Catalog, Constraint, Direction, Metric, Objective, Relation, SystemModel,
)
from catalogs.model_parser import load_model  # noqa: E402
from benchmarks.quadcopter import build_quadcopter_model  # noqa: E402

hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("ci", deadline=None)
hypothesis.settings.load_profile("ci")

MODELS_DIR = ROOT / "models"


@pytest.fixture
def models_dir() -> Path:
    return MODELS_DIR


@pytest.fixture
def toy_model() -> SystemModel:
    """Two variables, two minimized objectives; front {(1, 3), (3, 1)}"""
    return load_model(MODELS_DIR / "toy" / "toy.model")


@pytest.fixture
def battery_model() -> SystemModel:
    """Motor and battery linked by the power constraint"""
    motors = Catalog.from_rows("M", ["voltage", "current", "mass", "cost"], [
        ("m-small", [11.1, 2.0, 30.0, 10.0]),
        ("m-large", [11.1, 4.0, 50.0, 18.0]),
    ])
    batteries = Catalog.from_rows("B", ["voltage", "current", "mass", "cost"], [
        ("b-weak", [12.0, 7.0, 100.0, 20.0]),
        ("b-strong", [12.0, 10.0, 160.0, 35.0]),
    ])
    power = Constraint(
        name="power",
        lhs=Constant(4.0) * (ref("M", "voltage") * ref("M", "current")),
        rhs=ref("B", "voltage") * ref("B", "current"),
        relation=Relation.LESS_OR_EQUAL,
    )
    mass = ref("M", "mass") + ref("B", "mass")
    return SystemModel(
        catalogs={"M": motors, "B": batteries},
        constraints=[power],
        objectives=[
            Objective(name="current", expr=ref("M", "current"), direction=Direction.MAXIMIZE),
            Objective(name="mass", expr=mass, direction=Direction.MINIMIZE),
        ],
        metrics=[Metric(name="cost", expr=ref("M", "cost") + ref("B", "cost"))],
    )


@pytest.fixture(scope="session")
def quad_model() -> SystemModel:
    return build_quadcopter_model("multi")


@pytest.fixture(scope="session")
def quad_single_model() -> SystemModel:
    return build_quadcopter_model("single")
