"""
Front Export
Pareto fronts and aggregate catalogs as CSV tables with YAML provenance sidecars
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd
import yaml
from loguru import logger

from core.evaluator import metric_values
from core.exceptions import CatalogIOError
from core.system_models import Direction, SystemModel
from catalogs.catalog_io import format_value, load_catalog, write_catalog
from decomposition.subsystem_models import AggregateComponent
from pareto.front_models import ParetoFront, ParetoPoint

PathLike = Union[str, Path]

METRIC_PREFIX = "metric:"
INFEASIBLE_MARKER = "# status: infeasible"


def sidecar_path(path: PathLike) -> Path:
    """'front.csv' -> 'front.provenance.yaml'"""
    path = Path(path)
    return path.with_name(f"{path.stem}.provenance.yaml")


def _dump_yaml(data: Dict[str, Any], path: Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        yaml.safe_dump(data, handle, sort_keys=False, default_flow_style=False, allow_unicode=True)


class FrontExporter:
    """
    Writes and reads front files

    Rows are ordered by canonical objective vector, values are written in
    user directions, and nothing time- or host-dependent goes into the
    files, so equal fronts give byte-identical output.
    """

    def __init__(self):
        """Initialize front exporter"""
        logger.debug("Front Exporter initialized")

    def front_table(self, front: ParetoFront, model: Optional[SystemModel] = None) -> pd.DataFrame:
        """
        One row per front point

        Columns: objectives, then one component id column per variable,
        then `metric:<name>` columns when a model is given.
        """
        points = front.sorted_points()
        variables = self._variables(front, model)
        columns = list(front.objective_names) + variables
        metric_names: List[str] = []
        if model is not None:
            metric_names = [m.name for m in model.metrics]
            columns += [f"{METRIC_PREFIX}{name}" for name in metric_names]

        rows = []
        for point in points:
            row = [format_value(v) for v in front.reported_values(point)]
            row += [point.assignment.get(v, "") for v in variables]
            if metric_names:
                values = metric_values(model, point.assignment)
                row += [format_value(values[name]) for name in metric_names]
            rows.append(row)
        return pd.DataFrame(rows, columns=columns, dtype=str)

    @staticmethod
    def _variables(front: ParetoFront, model: Optional[SystemModel]) -> List[str]:
        if model is not None:
            return model.variable_names
        seen: Dict[str, None] = {}
        for point in front.points:
            for name in point.assignment:
                seen.setdefault(name, None)
        return list(seen)

    def export_front(
        self,
        front: ParetoFront,
        path: PathLike,
        model: Optional[SystemModel] = None,
    ) -> Path:
        """
        Write a front file and its provenance sidecar

        Args:
            front: Front to export
            path: CSV file to write
            model: Model the front belongs to (adds metric columns)

        Returns:
            Path of the CSV file
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        table = self.front_table(front, model)

        with open(path, "w", encoding="utf-8", newline="") as handle:
            if not front.points:
                handle.write(f"{INFEASIBLE_MARKER}\n")
            table.to_csv(handle, index=False, lineterminator="\n")

        points = []
        for point in front.sorted_points():
            entry: Dict[str, Any] = {"assignment": dict(point.assignment)}
            if point.partition:
                entry["partition"] = [[name, value] for name, value in point.partition]
            points.append(entry)
        _dump_yaml(
            {
                "status": "optimal" if front.points else "infeasible",
                "objectives": [
                    {"name": name, "direction": direction.value}
                    for name, direction in zip(front.objective_names, front.directions)
                ],
                "variables": self._variables(front, model),
                "points": points,
            },
            sidecar_path(path),
        )
        logger.info(f"Exported front of {len(front)} points to {path}")
        return path

    def load_front(self, path: PathLike) -> ParetoFront:
        """
        Read a front written by export_front

        Raises:
            CatalogIOError: Missing file or sidecar, or inconsistent contents
        """
        path = Path(path)
        sidecar = sidecar_path(path)
        if not path.exists() or not sidecar.exists():
            raise CatalogIOError(f"Front file or its provenance sidecar is missing: {path}")
        with open(sidecar, "r", encoding="utf-8") as handle:
            meta = yaml.safe_load(handle) or {}

        objectives = meta.get("objectives") or []
        names = [o["name"] for o in objectives]
        directions = [Direction(o["direction"]) for o in objectives]
        table = pd.read_csv(path, comment="#", dtype=str, keep_default_na=False)
        entries = meta.get("points") or []
        if len(entries) != len(table):
            raise CatalogIOError(f"{path}: {len(table)} rows but {len(entries)} provenance entries")

        front = ParetoFront(objective_names=names, directions=directions)
        for (_, row), entry in zip(table.iterrows(), entries):
            try:
                values = [float(row[name]) for name in names]
            except (KeyError, ValueError) as e:
                raise CatalogIOError(f"{path}: bad objective value ({e})") from e
            vector = tuple(
                -value if direction == Direction.MAXIMIZE else value
                for value, direction in zip(values, directions)
            )
            partition = tuple((str(n), float(v)) for n, v in entry.get("partition") or [])
            front.points.append(ParetoPoint(
                vector=vector,
                assignment={str(k): str(v) for k, v in entry["assignment"].items()},
                partition=partition,
            ))
        logger.debug(f"Loaded front of {len(front)} points from {path}")
        return front

    def write_aggregate(self, aggregate: AggregateComponent, path: PathLike) -> Path:
        """Write an aggregate catalog plus its provenance sidecar"""
        path = write_catalog(
            aggregate.catalog, path, comments=[f"aggregate of subsystem {aggregate.spec_name}"]
        )
        _dump_yaml(
            {
                "spec_name": aggregate.spec_name,
                "variable_name": aggregate.variable_name,
                "handle_columns": list(aggregate.handle_columns),
                "provenance": {cid: dict(a) for cid, a in aggregate.provenance.items()},
            },
            sidecar_path(path),
        )
        logger.info(f"Wrote aggregate '{aggregate.variable_name}' ({len(aggregate.catalog)} tuples) to {path}")
        return path

    def read_aggregate(self, path: PathLike) -> AggregateComponent:
        """
        Read an aggregate written by write_aggregate

        Raises:
            CatalogIOError: Missing sidecar or ids without provenance
        """
        path = Path(path)
        sidecar = sidecar_path(path)
        if not sidecar.exists():
            raise CatalogIOError(f"Aggregate sidecar missing: {sidecar}")
        with open(sidecar, "r", encoding="utf-8") as handle:
            meta = yaml.safe_load(handle) or {}
        catalog = load_catalog(path, variable_name=meta.get("variable_name"))
        provenance = {
            str(cid): {str(k): str(v) for k, v in assignment.items()}
            for cid, assignment in (meta.get("provenance") or {}).items()
        }
        missing = [c.component_id for c in catalog.components if c.component_id not in provenance]
        if missing:
            raise CatalogIOError(f"{path}: no provenance for {missing}")
        return AggregateComponent(
            spec_name=meta.get("spec_name", catalog.variable_name),
            catalog=catalog,
            provenance=provenance,
            handle_columns=list(meta.get("handle_columns") or []),
        )


def export_front(front: ParetoFront, path: PathLike, model: Optional[SystemModel] = None) -> Path:
    """Write a front file with a fresh exporter"""
    return FrontExporter().export_front(front, path, model)


def load_front(path: PathLike) -> ParetoFront:
    """Read a front file with a fresh exporter"""
    return FrontExporter().load_front(path)


def write_aggregate(aggregate: AggregateComponent, path: PathLike) -> Path:
    return FrontExporter().write_aggregate(aggregate, path)


def read_aggregate(path: PathLike) -> AggregateComponent:
    return FrontExporter().read_aggregate(path)
