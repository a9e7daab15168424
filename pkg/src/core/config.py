"""
Configuration Loading
config/config.yaml defaults, overridable through CATSEL_* environment variables
"""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "config.yaml"


class AppSettings(BaseModel):
    name: str = "Catalog Co-Design Optimizer"
    version: str = "1.0.0"
    log_level: str = "INFO"


class SolverSettings(BaseModel):
    variable_order: str = Field(default="smallest_domain_first")
    value_order: str = Field(default="best_objective_first")
    propagation: str = Field(default="bounds_plus_unary")
    node_limit: Optional[int] = Field(default=None, gt=0)
    seed: int = Field(default=0, ge=0)


class EngineSettings(BaseModel):
    threads: int = Field(default=1, ge=1)


class ConsistencySettings(BaseModel):
    enumeration_cap: int = Field(default=10_000_000, gt=0)


class DecompositionSettings(BaseModel):
    partition_cap: int = Field(default=64, gt=0)


class OracleSettings(BaseModel):
    max_combinations: int = Field(default=10_000_000, gt=0)


class GeneratorSettings(BaseModel):
    max_resamples: int = Field(default=1000, gt=0)


class QuadcopterSettings(BaseModel):
    budget: float = 1000.0
    hover_margin: float = 2.0
    flight_time_factor: float = 6.0
    camera_rate_per_speed: float = 1.5
    compute_rate_per_speed: float = 2.0
    # low-speed landing profile used by the fleet variant
    landing_camera_rate_per_speed: float = 0.75
    landing_compute_rate_per_speed: float = 1.0


class FleetSettings(BaseModel):
    fleet_size: int = Field(default=2, ge=1)
    max_designs: int = Field(default=3, ge=1)
    design_penalty: float = Field(default=100.0, ge=0)


class Settings(BaseSettings):
    """Top-level settings object"""

    app: AppSettings = Field(default_factory=AppSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    engine: EngineSettings = Field(default_factory=EngineSettings)
    consistency: ConsistencySettings = Field(default_factory=ConsistencySettings)
    decomposition: DecompositionSettings = Field(default_factory=DecompositionSettings)
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    generator: GeneratorSettings = Field(default_factory=GeneratorSettings)
    quadcopter: QuadcopterSettings = Field(default_factory=QuadcopterSettings)
    fleet: FleetSettings = Field(default_factory=FleetSettings)

    model_config = SettingsConfigDict(
        env_prefix="CATSEL_",
        env_nested_delimiter="__",
        env_file=".env",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # environment beats the YAML file, which arrives as init kwargs
        return env_settings, dotenv_settings, init_settings


def read_yaml(path: Path) -> Dict[str, Any]:
    """Load a YAML mapping; a missing or empty file gives {}"""
    if not path.exists():
        return {}
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at the top level")
    return data


def load_settings(path: Optional[Path] = None) -> Settings:
    """
    Load settings from YAML with environment overrides

    Args:
        path: Config file (default: config/config.yaml)

    Returns:
        Settings object
    """
    data = read_yaml(Path(path) if path else DEFAULT_CONFIG_PATH)
    return Settings(**data)
