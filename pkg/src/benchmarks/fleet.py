"""
Delivery Fleet
Fleet model over a pool of Pareto-optimal quadcopter designs
"""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd
from loguru import logger

from core.config import read_yaml
from core.evaluator import metric_values
from core.exceptions import CapacityViolation, CatalogIOError, FleetError, InfeasiblePayload
from core.expressions import Constant, Div, Expression, Max, Min, Mul, Sub, ref, sum_of
from core.system_models import (
    Catalog, Constraint, Direction, Metric, Objective, Relation, SystemModel,
)
from catalogs.catalog_io import load_catalog
from catalogs.front_export import METRIC_PREFIX
from decomposition.decomposer import Decomposer, SubsystemCache
from decomposition.subsystem_models import SubsystemSpec
from pareto.front_engine import EngineConfig, FrontEngine, SolverFactory
from pareto.front_models import ParetoFront

from .fleet_models import FleetModel, FleetObjectives, FleetParams, FleetSchedule, Package

PathLike = Union[str, Path]

DESIGN_COLUMNS = ["velocity", "payload", "cost", "mass"]
DESIGN_INDEX = "design"
QUADCOPTER_FRONT = "quadcopter"


def slot_id(k: int) -> str:
    return f"slot-{k + 1}"


def _design_id(i: int, count: int) -> str:
    return f"design-{i + 1:0{len(str(count))}d}"


def _pool_catalog(rows: List[Tuple[str, List[float]]]) -> Catalog:
    return Catalog.from_rows("designs", DESIGN_COLUMNS + [DESIGN_INDEX], rows)


def design_pool(front: ParetoFront, model: Optional[SystemModel] = None) -> Tuple[Catalog, Dict[str, Dict[str, str]]]:
    """
    Catalog of quadcopter designs from a front

    Each column is taken from the objective of the same name, else from
    the model's metric of that name.

    Args:
        front: Quadcopter front
        model: Model the front was computed on (supplies metrics)

    Returns:
        (design catalog, design id -> quadcopter assignment)

    Raises:
        FleetError: A design column is neither objective nor metric
    """
    points = front.sorted_points()
    rows: List[Tuple[str, List[float]]] = []
    provenance: Dict[str, Dict[str, str]] = {}
    for i, point in enumerate(points):
        reported = dict(zip(front.objective_names, front.reported_values(point)))
        metrics = metric_values(model, point.assignment) if model is not None else {}
        values = []
        for column in DESIGN_COLUMNS:
            if column in reported:
                values.append(float(reported[column]))
            elif column in metrics:
                values.append(float(metrics[column]))
            else:
                raise FleetError(f"Quadcopter front has no objective or metric '{column}'")
        design = _design_id(i, len(points))
        rows.append((design, values + [float(i + 1)]))
        provenance[design] = dict(point.assignment)
    return _pool_catalog(rows), provenance


def design_pool_from_file(path: PathLike) -> Tuple[Catalog, Dict[str, Dict[str, str]]]:
    """
    Catalog of designs from an exported quadcopter front file

    Columns are read as `<name>` or `metric:<name>`; remaining columns are
    taken as the component id per quadcopter variable.

    Raises:
        CatalogIOError: Missing file or column
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Quadcopter front file not found: {path}")
    table = pd.read_csv(path, comment="#", dtype=str, keep_default_na=False)
    sources = {}
    for column in DESIGN_COLUMNS:
        for candidate in (column, f"{METRIC_PREFIX}{column}"):
            if candidate in table.columns:
                sources[column] = candidate
                break
        else:
            raise CatalogIOError(f"{path}: front file has no '{column}' column")
    id_columns = [
        c for c in table.columns
        if c not in DESIGN_COLUMNS and not c.startswith(METRIC_PREFIX)
    ]

    rows: List[Tuple[str, List[float]]] = []
    provenance: Dict[str, Dict[str, str]] = {}
    for i, (_, row) in enumerate(table.iterrows()):
        design = _design_id(i, len(table))
        try:
            values = [float(row[sources[c]]) for c in DESIGN_COLUMNS]
        except ValueError as e:
            raise CatalogIOError(f"{path}: row {i + 1}: {e}") from e
        rows.append((design, values + [float(i + 1)]))
        provenance[design] = {c: str(row[c]) for c in id_columns if str(row[c])}
    if not rows:
        raise CatalogIOError(f"{path}: quadcopter front is empty")
    return _pool_catalog(rows), provenance


def _slot_catalog(variable: str, size: int) -> Catalog:
    columns = [f"at_{k + 1}" for k in range(size)]
    rows = [(slot_id(k), [1.0 if i == k else 0.0 for i in range(size)]) for k in range(size)]
    return Catalog.from_rows(variable, columns, rows)


def build_fleet_from_pool(
    designs: Catalog,
    packages: Sequence[Package],
    params: FleetParams,
    provenance: Optional[Dict[str, Dict[str, str]]] = None,
) -> FleetModel:
    """
    Fleet model over a design catalog

    Slot k picks a design (variable Q<k>); package j picks a slot
    (variable P<j>). Slots carry non-decreasing design indices, which
    removes permutations of identical fleets.

    Args:
        designs: Catalog with velocity, payload, cost, mass and design columns
        packages: Deliveries, each flown out and back by one quadcopter
        params: Fleet size, design limit and pricing
        provenance: Quadcopter assignment behind each design

    Returns:
        FleetModel

    Raises:
        FleetError: No packages or an empty design pool
        InfeasiblePayload: A package is heavier than every design's payload
    """
    if not packages:
        raise FleetError("Fleet model needs at least one package")
    if not len(designs):
        raise FleetError("Fleet model needs at least one quadcopter design")
    best_payload = max(designs.column("payload"))
    for package in packages:
        if package.mass > best_payload:
            raise InfeasiblePayload(package.package_id, package.mass)

    n = params.fleet_size
    slots = [f"Q{k + 1}" for k in range(n)]
    package_vars = [f"P{j + 1}" for j in range(len(packages))]

    catalogs: Dict[str, Catalog] = {q: designs.renamed(q) for q in slots}
    catalogs.update({p: _slot_catalog(p, n) for p in package_vars})

    constraints: List[Constraint] = []
    for package, p in zip(packages, package_vars):
        carried = sum_of([Mul(ref(p, f"at_{k + 1}"), ref(q, "payload")) for k, q in enumerate(slots)])
        constraints.append(Constraint(
            name=f"capacity_{p}", lhs=Constant(package.mass), rhs=carried,
            relation=Relation.LESS_OR_EQUAL,
        ))
    for k in range(n - 1):
        constraints.append(Constraint(
            name=f"design_order_{k + 1}",
            lhs=ref(slots[k], DESIGN_INDEX),
            rhs=ref(slots[k + 1], DESIGN_INDEX),
            relation=Relation.LESS_OR_EQUAL,
        ))

    # sorted slots: each design change adds one distinct design
    changes: Expression = sum_of([
        Min((Constant(1.0), Sub(ref(slots[k + 1], DESIGN_INDEX), ref(slots[k], DESIGN_INDEX))))
        for k in range(n - 1)
    ])
    if n > 1 and params.max_designs < n:
        constraints.append(Constraint(
            name="design_count", lhs=changes, rhs=Constant(float(params.max_designs - 1)),
            relation=Relation.LESS_OR_EQUAL,
        ))

    makespan = Max(tuple(
        Div(
            sum_of([
                Mul(Constant(2.0 * package.distance), ref(p, f"at_{k + 1}"))
                for package, p in zip(packages, package_vars)
            ]),
            ref(q, "velocity"),
        )
        for k, q in enumerate(slots)
    ))
    purchase = sum_of([ref(q, "cost") for q in slots])
    cost = purchase if n == 1 else purchase + Mul(Constant(params.design_penalty), changes)

    objectives = [Objective(name="cost", expr=cost, direction=Direction.MINIMIZE)]
    if FleetObjectives(params.objectives) == FleetObjectives.MULTI:
        objectives.insert(0, Objective(name="makespan", expr=makespan, direction=Direction.MINIMIZE))
    metrics = [
        Metric(name="makespan", expr=makespan),
        Metric(name="designs", expr=Constant(1.0) + changes if n > 1 else Constant(1.0)),
    ]

    model = SystemModel(catalogs=catalogs, constraints=constraints, objectives=objectives, metrics=metrics)
    logger.info(
        f"Fleet model: {n} slots, {len(designs)} designs, {len(packages)} packages, "
        f"{len(objectives)} objective(s)"
    )
    return FleetModel(
        designs=designs,
        provenance=dict(provenance or {}),
        packages=list(packages),
        params=params,
        slot_variables=slots,
        package_variables=package_vars,
        model=model,
    )


def build_fleet_model(
    quad_front: ParetoFront,
    packages: Sequence[Package],
    params: FleetParams,
    quad_model: Optional[SystemModel] = None,
) -> FleetModel:
    """Fleet model whose design pool is a quadcopter front"""
    designs, provenance = design_pool(quad_front, quad_model)
    return build_fleet_from_pool(designs, packages, params, provenance)


def schedule_cost_time(schedule: FleetSchedule, fleet: FleetModel) -> Tuple[float, float]:
    """
    Makespan and cost of a schedule, independent of any solver

    Args:
        schedule: Design per slot and slot per package
        fleet: Fleet model

    Returns:
        (makespan, cost)

    Raises:
        CapacityViolation: A package exceeds its quadcopter's payload
    """
    designs = fleet.designs
    totals = [0.0] * len(schedule.designs)
    for package in fleet.packages:
        slot = schedule.packages[package.package_id]
        if package.mass > designs.value(schedule.designs[slot], "payload"):
            raise CapacityViolation(package.package_id, slot_id(slot))
        totals[slot] += 2.0 * package.distance
    makespan = max(
        total / designs.value(design, "velocity") for total, design in zip(totals, schedule.designs)
    )
    cost = sum(designs.value(design, "cost") for design in schedule.designs)
    cost += fleet.params.design_penalty * (len(set(schedule.designs)) - 1)
    return makespan, cost


def schedule_from_assignment(assignment: Dict[str, str], fleet: FleetModel) -> FleetSchedule:
    """Read a solver assignment of the fleet model as a schedule"""
    slots = {slot_id(k): k for k in range(len(fleet.slot_variables))}
    return FleetSchedule(
        designs=[assignment[q] for q in fleet.slot_variables],
        packages={
            package.package_id: slots[assignment[p]]
            for package, p in zip(fleet.packages, fleet.package_variables)
        },
    )


def load_fleet_params(
    path: PathLike,
    overrides: Optional[Dict[str, Any]] = None,
    defaults: Optional[Dict[str, Any]] = None,
) -> FleetParams:
    """
    Read fleet parameters from YAML

    Overrides win over the file, which wins over defaults.

    Raises:
        CatalogIOError: Missing or invalid file
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Fleet parameter file not found: {path}")
    data = {**(defaults or {}), **read_yaml(path)}
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return FleetParams(**data)
    except ValueError as e:
        raise CatalogIOError(f"{path}: {e}") from e


def load_packages(path: PathLike) -> List[Package]:
    """
    Read a package table (columns id, mass, distance)

    Raises:
        CatalogIOError: Missing columns or invalid values
    """
    catalog = load_catalog(path, variable_name="packages")
    for column in ("mass", "distance"):
        if not catalog.has_property(column):
            raise CatalogIOError(f"{path}: package table needs a '{column}' column")
    try:
        return [
            Package(
                package_id=component.component_id,
                mass=catalog.value(component.component_id, "mass"),
                distance=catalog.value(component.component_id, "distance"),
            )
            for component in catalog.components
        ]
    except ValueError as e:
        raise CatalogIOError(f"{path}: {e}") from e


class FleetPlanner:
    """
    Plans delivery fleets from one quadcopter design front

    The quadcopter front is computed once through the subsystem cache and
    reused for every fleet size and package set the planner is asked about.
    """

    def __init__(
        self,
        quad_model: SystemModel,
        config: Optional[EngineConfig] = None,
        quad_specs: Sequence[SubsystemSpec] = (),
        cache: Optional[SubsystemCache] = None,
        solver_factory: Optional[SolverFactory] = None,
    ):
        """
        Initialize fleet planner

        Args:
            quad_model: Quadcopter model with velocity, payload and cost objectives
            config: Engine configuration
            quad_specs: Subsystems to decompose the quadcopter solve by
            cache: Front cache shared with other planners
            solver_factory: Builds cut solvers
        """
        self.quad_model = quad_model
        self.config = config or EngineConfig()
        self.quad_specs = list(quad_specs)
        self.cache = cache if cache is not None else SubsystemCache()
        self.solver_factory = solver_factory
        logger.info("FleetPlanner initialized")

    @property
    def computations(self) -> int:
        """Quadcopter fronts actually computed"""
        return self.cache.computations

    def _compute_quad_front(self) -> ParetoFront:
        if self.quad_specs:
            decomposer = Decomposer(self.config, self.solver_factory, SubsystemCache())
            return decomposer.solve(self.quad_model, self.quad_specs).front
        return FrontEngine(self.config, self.solver_factory).compute_front(self.quad_model)

    def quad_front(self) -> ParetoFront:
        front, reused = self.cache.model_front(QUADCOPTER_FRONT, self.quad_model, self._compute_quad_front)
        logger.info(f"Quadcopter front: {len(front)} designs{' (reused)' if reused else ''}")
        return front

    def build(self, packages: Sequence[Package], params: FleetParams) -> FleetModel:
        return build_fleet_model(self.quad_front(), packages, params, self.quad_model)

    def solve(self, packages: Sequence[Package], params: FleetParams) -> Tuple[FleetModel, ParetoFront]:
        """
        Fleet front for a package set

        Returns:
            (fleet model, front of its makespan/cost objectives)

        Raises:
            InfeasiblePayload: A package fits no design
            InfeasibleModel: No schedule satisfies the fleet constraints
        """
        fleet = self.build(packages, params)
        front = FrontEngine(self.config, self.solver_factory).compute_front(fleet.model)
        logger.info(f"Fleet front: {len(front)} schedules for {params.fleet_size} quadcopters")
        return fleet, front
