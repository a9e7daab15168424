"""
Synthetic Catalogs
Seeded per-property sampling from normal distributions truncated by resampling
"""

import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from core.config import read_yaml
from core.exceptions import CatalogIOError, ResampleLimitExceeded
from core.system_models import Catalog
from catalogs.catalog_io import write_catalog

logger = logging.getLogger(__name__)

GENERATOR_NAME = "numpy-pcg64"
DEFAULT_MAX_RESAMPLES = 1000


class PropertySpec(BaseModel):
    """Distribution of one catalog column"""

    name: str = Field(min_length=1)
    mean: float = 0.0
    std: float = Field(default=0.0, ge=0.0, allow_inf_nan=False)
    lower_bound: Optional[float] = None
    # categorical column drawn uniformly from these values
    choices: Optional[List[float]] = None
    decimals: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_choices(self) -> "PropertySpec":
        if self.choices is not None and not self.choices:
            raise ValueError(f"Property '{self.name}' has an empty choices list")
        return self


class GeneratorSpec(BaseModel):
    """Recipe for one synthetic catalog"""

    variable_name: str = Field(min_length=1)
    count: int = Field(ge=1)
    seed: int = Field(default=0, ge=0)
    id_prefix: Optional[str] = None
    properties: List[PropertySpec] = Field(min_length=1)

    @model_validator(mode="after")
    def _unique_names(self) -> "GeneratorSpec":
        names = [p.name for p in self.properties]
        if len(set(names)) != len(names):
            raise ValueError(f"Generator for '{self.variable_name}' repeats property names")
        return self

    def with_overrides(self, count: Optional[int] = None, seed: Optional[int] = None) -> "GeneratorSpec":
        changes = {}
        if count is not None:
            changes["count"] = count
        if seed is not None:
            changes["seed"] = seed
        return self.model_copy(update=changes)


def _draw(rng: np.random.Generator, prop: PropertySpec, size: int) -> np.ndarray:
    values = rng.normal(prop.mean, prop.std, size=size)
    if prop.decimals is not None:
        values = np.round(values, prop.decimals)
    return values


def _sample_column(
    rng: np.random.Generator,
    prop: PropertySpec,
    count: int,
    max_resamples: int,
) -> np.ndarray:
    if prop.choices is not None:
        values = np.asarray(prop.choices, dtype=float)[rng.integers(0, len(prop.choices), size=count)]
        if prop.decimals is not None:
            values = np.round(values, prop.decimals)
        return values

    # bound is checked after rounding
    values = _draw(rng, prop, count)
    if prop.lower_bound is not None:
        rounds = 0
        low = values < prop.lower_bound
        while low.any():
            if rounds >= max_resamples:
                raise ResampleLimitExceeded(prop.name, max_resamples)
            values[low] = _draw(rng, prop, int(low.sum()))
            low = values < prop.lower_bound
            rounds += 1
    return values


def generate_catalog(spec: GeneratorSpec, max_resamples: int = DEFAULT_MAX_RESAMPLES) -> Catalog:
    """
    Sample a catalog

    Columns are drawn in declaration order from one PCG64 stream seeded
    with spec.seed, so equal specs give bit-identical catalogs.

    Args:
        spec: Generator specification
        max_resamples: Resampling rounds allowed below a lower bound

    Returns:
        Catalog of spec.count components

    Raises:
        ResampleLimitExceeded: A lower bound is practically unreachable
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    columns = [_sample_column(rng, prop, spec.count, max_resamples) for prop in spec.properties]

    prefix = spec.id_prefix if spec.id_prefix is not None else f"{spec.variable_name}-"
    digits = len(str(spec.count))
    rows = [
        (f"{prefix}{i + 1:0{digits}d}", [float(column[i]) for column in columns])
        for i in range(spec.count)
    ]
    catalog = Catalog.from_rows(spec.variable_name, [p.name for p in spec.properties], rows)
    logger.debug(f"Generated {spec.count} components for '{spec.variable_name}' (seed {spec.seed})")
    return catalog


def header_comments(spec: GeneratorSpec) -> List[str]:
    """Comment lines recording how a catalog was generated"""
    return [f"generated by {GENERATOR_NAME} seed={spec.seed} count={spec.count}"]


def write_generated(
    spec: GeneratorSpec,
    path: Union[str, Path],
    max_resamples: int = DEFAULT_MAX_RESAMPLES,
) -> Path:
    """Generate a catalog and write it with its seed header"""
    catalog = generate_catalog(spec, max_resamples)
    return write_catalog(catalog, path, comments=header_comments(spec))


def load_generator_spec(path: Union[str, Path]) -> GeneratorSpec:
    """
    Read a generator spec from YAML

    Raises:
        CatalogIOError: Missing or invalid file
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Generator spec not found: {path}")
    try:
        return GeneratorSpec(**read_yaml(path))
    except ValueError as e:
        raise CatalogIOError(f"{path}: {e}") from e
