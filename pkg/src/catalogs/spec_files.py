"""
Spec Files
YAML subsystem specifications for decomposed solves
"""

import logging
from pathlib import Path
from typing import Any, List, Mapping, Optional, Union

from core.config import read_yaml
from core.exceptions import CatalogIOError, ModelSyntaxError
from core.expressions import PropertyKey
from catalogs.model_parser import parse_expression
from decomposition.subsystem_models import AggregationRewrite, SubsystemSpec

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _rewrite(entry: Mapping[str, Any], params: Mapping[str, float]) -> AggregationRewrite:
    expr = entry.get("expr")
    return AggregationRewrite(
        function_id=str(entry["function"]),
        derived=str(entry["derived"]),
        expr=parse_expression(str(expr), params) if expr is not None else None,
    )


def subsystem_spec(entry: Mapping[str, Any], params: Optional[Mapping[str, float]] = None) -> SubsystemSpec:
    """
    Build one SubsystemSpec from its YAML mapping

        name: esc
        variables: [VR, HB, MC]
        handles: [MC.logic_voltage]
        rewrites:
          - function: "constraint:hover:lhs"
            derived: esc_mass
            expr: "HB.mass + MC.mass + VR.mass"
    """
    params = params or {}
    return SubsystemSpec(
        name=str(entry["name"]),
        variables=[str(v) for v in entry["variables"]],
        instance=entry.get("instance"),
        declared_inconsistent_handles=[PropertyKey.parse(str(h)) for h in entry.get("handles") or []],
        aggregation_rewrites=[_rewrite(r, params) for r in entry.get("rewrites") or []],
    )


def load_subsystem_specs(
    path: PathLike,
    params: Optional[Mapping[str, float]] = None,
) -> List[SubsystemSpec]:
    """
    Read a subsystem spec file, innermost subsystem first

    Args:
        path: YAML file with a top-level 'subsystems' list
        params: Values for bare names inside rewrite expressions

    Returns:
        Specs in file order

    Raises:
        CatalogIOError: Missing file or malformed entry
        ModelSyntaxError: A rewrite expression does not parse
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Subsystem spec file not found: {path}")
    try:
        data = read_yaml(path)
        specs = [subsystem_spec(entry, params) for entry in data.get("subsystems") or []]
    except ModelSyntaxError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CatalogIOError(f"{path}: invalid subsystem spec ({e})") from e
    logger.debug(f"Loaded {len(specs)} subsystem specs from {path}")
    return specs
