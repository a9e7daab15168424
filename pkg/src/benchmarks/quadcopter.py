"""
Quadcopter Benchmark
Builds the shipped quadcopter model for its single, multi and fleet variants
"""

from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union

from loguru import logger

from core.config import QuadcopterSettings
from core.expressions import ref
from core.system_models import Catalog, Direction, Objective, SystemModel
from catalogs.catalog_io import load_catalog
from catalogs.generator import DEFAULT_MAX_RESAMPLES, generate_catalog, load_generator_spec
from catalogs.model_parser import load_model
from catalogs.spec_files import load_subsystem_specs
from decomposition.subsystem_models import SubsystemSpec

PathLike = Union[str, Path]

ROOT_DIR = Path(__file__).resolve().parents[2]
MODEL_DIR = ROOT_DIR / "models" / "quadcopter"
MODEL_FILE = MODEL_DIR / "quadcopter.model"
SPEC_FILE = MODEL_DIR / "subsystems.yaml"
GENERATOR_DIR = ROOT_DIR / "config" / "generators"

# variable -> catalog file stem (also the generator spec stem)
CATALOG_FILES: Dict[str, str] = {
    "VR": "regulator",
    "HB": "half_bridge",
    "MC": "microcontroller",
    "P": "propeller",
    "M": "motor",
    "B": "battery",
    "F": "frame",
    "C": "computer",
    "K": "camera",
    "S": "speed",
}


class QuadcopterVariant(str, Enum):
    SINGLE = "single"   # maximize velocity under the budget
    MULTI = "multi"     # velocity against mass, cost under budget
    FLEET = "fleet"     # velocity, payload and cost with landing-mode rates


def quadcopter_params(
    variant: QuadcopterVariant,
    settings: Optional[QuadcopterSettings] = None,
) -> Dict[str, float]:
    """Model-file parameter values for a variant"""
    settings = settings or QuadcopterSettings()
    params = {
        "budget": settings.budget,
        "hover_margin": settings.hover_margin,
        "flight_time_factor": settings.flight_time_factor,
        "camera_rate_per_speed": settings.camera_rate_per_speed,
        "compute_rate_per_speed": settings.compute_rate_per_speed,
    }
    if variant == QuadcopterVariant.FLEET:
        params["camera_rate_per_speed"] = settings.landing_camera_rate_per_speed
        params["compute_rate_per_speed"] = settings.landing_compute_rate_per_speed
    return params


def _variant_objectives(model: SystemModel, variant: QuadcopterVariant) -> List[Objective]:
    velocity = Objective(name="velocity", expr=ref("S", "velocity"), direction=Direction.MAXIMIZE)
    if variant == QuadcopterVariant.SINGLE:
        return [velocity]
    if variant == QuadcopterVariant.MULTI:
        return [
            velocity,
            Objective(name="mass", expr=model.metric("mass").expr, direction=Direction.MINIMIZE),
        ]
    return [
        velocity,
        Objective(name="payload", expr=model.metric("payload").expr, direction=Direction.MAXIMIZE),
        Objective(name="cost", expr=model.metric("cost").expr, direction=Direction.MINIMIZE),
    ]


def load_catalog_dir(catalog_dir: PathLike) -> Dict[str, Catalog]:
    """Quadcopter catalogs from a directory holding '<stem>.csv' per variable"""
    catalog_dir = Path(catalog_dir)
    return {
        variable: load_catalog(catalog_dir / f"{stem}.csv", variable_name=variable)
        for variable, stem in CATALOG_FILES.items()
    }


def build_quadcopter_model(
    variant: Union[QuadcopterVariant, str] = QuadcopterVariant.MULTI,
    catalog_dir: Optional[PathLike] = None,
    catalogs: Optional[Mapping[str, Catalog]] = None,
    settings: Optional[QuadcopterSettings] = None,
) -> SystemModel:
    """
    Quadcopter model for one variant

    Args:
        variant: single, multi or fleet
        catalog_dir: Directory of catalog files (default: shipped samples)
        catalogs: Preloaded catalogs by variable, e.g. generated ones
        settings: Constraint constants

    Returns:
        SystemModel with the variant's objectives
    """
    variant = QuadcopterVariant(variant)
    provided: Dict[str, Catalog] = dict(catalogs or {})
    if catalog_dir is not None:
        provided = {**load_catalog_dir(catalog_dir), **provided}
    model = load_model(MODEL_FILE, catalogs=provided, params=quadcopter_params(variant, settings))
    model = model.replace(objectives=_variant_objectives(model, variant))
    logger.debug(f"Quadcopter model ({variant.value}): {model.combinations()} combinations")
    return model


def quadcopter_specs(path: Optional[PathLike] = None) -> List[SubsystemSpec]:
    """Shipped subsystem decomposition: ESC, motor, then single-component aggregates"""
    return load_subsystem_specs(path or SPEC_FILE)


def generate_quadcopter_catalogs(
    size: int,
    seed: int = 0,
    generator_dir: Optional[PathLike] = None,
    max_resamples: int = DEFAULT_MAX_RESAMPLES,
) -> Dict[str, Catalog]:
    """
    Synthetic catalogs of `size` components per variable

    Each variable samples from its own seed (seed + position), so growing
    one catalog never changes another.
    """
    generator_dir = Path(generator_dir or GENERATOR_DIR)
    catalogs: Dict[str, Catalog] = {}
    for offset, (variable, stem) in enumerate(CATALOG_FILES.items()):
        spec = load_generator_spec(generator_dir / f"{stem}.yaml")
        spec = spec.with_overrides(count=size, seed=seed + offset)
        catalogs[variable] = generate_catalog(spec, max_resamples).renamed(variable)
    return catalogs
