"""
Subsystem Optimizer
External properties, subsystem fronts, aggregate catalogs and composition
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, Field

from core.exceptions import (
    DecompositionError,
    EmptyFront,
    InconsistentSubsystem,
    InfeasibleModel,
    NonSeparableFunction,
    PartitionCapExceeded,
    UnknownProperty,
    UnroutableReference,
)
from core.expressions import (
    Constant, Expression, PropertyKey, PropertyRef, iter_property_refs, ref, transform,
)
from core.system_models import (
    Catalog, Constraint, Direction, Metric, Objective, SystemModel,
)
from consistency.classifier import classify_in, override_map, value_ranges
from consistency.constraint_graph import (
    check_subsystem, function_nodes, lhs_id, objective_id, rhs_id, shared_functions,
)
from consistency.graph_models import ClassificationKind, PropertyClassification
from consistency.polarity import value_interval
from decomposition.rewrites import (
    Term, apply_rewrites, build_sum, default_definition, linear_terms, split_terms, term_key,
)
from decomposition.subsystem_models import (
    AggregateComponent,
    ExportKind,
    ExternalDirection,
    ExternalProperty,
    SubsystemSpec,
)
from pareto.front_engine import FrontEngine
from pareto.front_models import ParetoFront, ParetoPoint

logger = logging.getLogger(__name__)

FEASIBILITY_COLUMN = "feasible"


def column_name(key: PropertyKey) -> str:
    """Aggregate column carrying a raw subsystem property"""
    return f"{key.variable_name}_{key.property_name}"


class SubsystemPlan(BaseModel):
    """Everything derived from (model, spec) before any solve"""

    spec: SubsystemSpec
    members: List[str]
    aggregate_name: str
    rewritten: Dict[str, Expression] = Field(default_factory=dict)
    derived: Dict[str, Expression] = Field(default_factory=dict)
    columns: List[ExternalProperty] = Field(default_factory=list)
    handles: List[PropertyKey] = Field(default_factory=list)
    classifications: List[PropertyClassification] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    @property
    def member_set(self) -> Set[str]:
        return set(self.members)


# ---------------------------------------------------------------------------
# Rewrites
# ---------------------------------------------------------------------------

def prepare_rewrites(
    model: SystemModel,
    spec: SubsystemSpec,
    members: Set[str],
) -> Tuple[Dict[str, Expression], Dict[str, List[Term]]]:
    """
    Apply the subsystem's aggregation rewrites to the shared functions

    Returns:
        (function id -> rewritten expression, derived name -> definition terms)

    Raises:
        NonSeparableFunction: A rewrite does not fit its function
    """
    nodes = {node.function_id: node for node in function_nodes(model)}
    shared = shared_functions(model, members)
    aggregate = spec.aggregate_name

    by_function: Dict[str, List[str]] = {}
    definitions: Dict[str, List[Term]] = {}
    for rewrite in spec.aggregation_rewrites:
        if rewrite.function_id not in nodes:
            logger.warning(f"Rewrite '{rewrite.derived}' names unknown function '{rewrite.function_id}'; skipped")
            continue
        if rewrite.function_id not in shared:
            logger.warning(
                f"Rewrite '{rewrite.derived}' names '{rewrite.function_id}', which is not shared "
                f"by subsystem '{spec.name}'; skipped"
            )
            continue
        names = by_function.setdefault(rewrite.function_id, [])
        if rewrite.derived not in names:
            names.append(rewrite.derived)
        if rewrite.expr is not None and rewrite.derived not in definitions:
            outside = {k.variable_name for k in iter_property_refs(rewrite.expr)} - members
            if outside:
                raise NonSeparableFunction(
                    f"Derived '{rewrite.derived}' reads variables outside the subsystem: "
                    f"{', '.join(sorted(outside))}"
                )
            definitions[rewrite.derived] = linear_terms(rewrite.expr)

    rewritten: Dict[str, Expression] = {}
    for function_id in nodes:
        names = by_function.get(function_id)
        if not names:
            continue
        expr = nodes[function_id].expr
        claimed = {
            term_key(atom)
            for name in names if name in definitions
            for _, atom in definitions[name]
        }
        for name in names:
            if name not in definitions:
                terms = default_definition(expr, members, claimed)
                if not terms:
                    raise NonSeparableFunction(
                        f"'{function_id}' has no subsystem terms left for derived '{name}'"
                    )
                definitions[name] = terms
                claimed.update(term_key(atom) for _, atom in terms)
        rewritten[function_id] = apply_rewrites(
            function_id,
            expr,
            members,
            [(name, definitions[name]) for name in names],
            aggregate,
        )
    return rewritten, definitions


# ---------------------------------------------------------------------------
# Planning and external properties
# ---------------------------------------------------------------------------

def _direction(verdict: PropertyClassification) -> ExternalDirection:
    if verdict.kind == ClassificationKind.CONSISTENT_MAX:
        return ExternalDirection.MAXIMIZE_IT
    return ExternalDirection.MINIMIZE_IT


def plan_subsystem(model: SystemModel, spec: SubsystemSpec) -> SubsystemPlan:
    """
    Certify a subsystem and work out what its aggregate exports

    Args:
        model: Parent model
        spec: Subsystem specification

    Returns:
        SubsystemPlan

    Raises:
        InconsistentSubsystem: Shared functions hold inconsistent properties
            that no partition handle covers
        DecompositionError: Invalid spec for this model
    """
    members = check_subsystem(model, spec.variables)
    if members == set(model.variable_names):
        raise DecompositionError(f"Subsystem '{spec.name}' must leave some variables outside")
    aggregate = spec.aggregate_name
    if aggregate in model.variable_names:
        raise DecompositionError(
            f"Aggregate name '{aggregate}' of subsystem '{spec.name}' is already a variable"
        )

    handles = list(spec.declared_inconsistent_handles)
    for handle in handles:
        if handle.variable_name not in members:
            raise DecompositionError(f"Handle {handle} is not a property of subsystem '{spec.name}'")
        model.catalog(handle.variable_name).property_index(handle.property_name)

    rewritten, definitions = prepare_rewrites(model, spec, members)
    shared = shared_functions(model, members)
    nodes = [
        node.model_copy(update={"expr": rewritten.get(node.function_id, node.expr)})
        for node in function_nodes(model)
        if node.function_id in shared
    ]

    ranges = value_ranges(model)
    for name, terms in definitions.items():
        ranges[PropertyKey(aggregate, name)] = value_interval(build_sum(terms), ranges)
    overrides = override_map(model)

    # subsystem-side references per constraint or objective
    inner_refs: Dict[str, Set[PropertyKey]] = {}
    for node in nodes:
        inner_refs.setdefault(node.source, set()).update(
            k for k in iter_property_refs(node.expr)
            if k.variable_name in members or k.variable_name == aggregate
        )

    keys: Dict[PropertyKey, None] = {}
    for node in nodes:
        for key in iter_property_refs(node.expr):
            keys.setdefault(key, None)

    source_of = {node.function_id: node.source for node in nodes}
    verdicts: Dict[PropertyKey, PropertyClassification] = {}
    violations = []
    for key in keys:
        verdict = classify_in(nodes, key, ranges, overrides)
        verdicts[key] = verdict
        if verdict.is_consistent or key in handles:
            continue
        for function_id, pol in verdict.witnesses:
            outside = key.variable_name not in members and key.variable_name != aggregate
            if outside and inner_refs[source_of[function_id]] <= set(handles):
                continue
            violations.append((function_id, str(key), pol))
    if violations:
        raise InconsistentSubsystem(spec.name, violations)

    columns: List[ExternalProperty] = []
    for key in keys:
        if key.variable_name in members and key not in handles:
            columns.append(ExternalProperty(
                column=column_name(key),
                direction=_direction(verdicts[key]),
                kind=ExportKind.PROPERTY,
                property=key,
                expr=PropertyRef(key),
            ))
        elif key.variable_name == aggregate:
            columns.append(ExternalProperty(
                column=key.property_name,
                direction=_direction(verdicts[key]),
                kind=ExportKind.DERIVED,
                expr=build_sum(definitions[key.property_name]),
            ))
    for objective in model.objectives:
        touched = objective.variables()
        if touched and touched <= members:
            columns.append(ExternalProperty(
                column=objective.name,
                direction=(
                    ExternalDirection.MAXIMIZE_IT
                    if objective.direction == Direction.MAXIMIZE
                    else ExternalDirection.MINIMIZE_IT
                ),
                kind=ExportKind.OBJECTIVE,
                expr=objective.expr,
            ))

    names = [c.column for c in columns] + [column_name(h) for h in handles]
    if len(set(names)) != len(names):
        raise DecompositionError(f"Subsystem '{spec.name}' exports duplicate column names: {names}")

    plan = SubsystemPlan(
        spec=spec,
        members=[v for v in model.variable_names if v in members],
        aggregate_name=aggregate,
        rewritten=rewritten,
        derived={name: build_sum(terms) for name, terms in definitions.items()},
        columns=columns,
        handles=handles,
        classifications=list(verdicts.values()),
    )
    logger.debug(
        f"Subsystem '{spec.name}': exports {[c.column for c in columns]}, "
        f"handles {[str(h) for h in handles]}"
    )
    return plan


def external_properties(model: SystemModel, spec: SubsystemSpec) -> List[ExternalProperty]:
    """
    Properties a subsystem must be optimized for

    Raw properties and derived properties of the shared functions, each
    with the direction its classification demands. Objectives that live
    entirely inside the subsystem are exported as well but are not
    listed here.

    Raises:
        InconsistentSubsystem: Uncovered inconsistent properties
    """
    plan = plan_subsystem(model, spec)
    return [c for c in plan.columns if c.kind != ExportKind.OBJECTIVE]


# ---------------------------------------------------------------------------
# Subsystem fronts
# ---------------------------------------------------------------------------

def partition_values(
    model: SystemModel,
    handles: List[PropertyKey],
    cap: int,
) -> List[Dict[PropertyKey, float]]:
    """
    Every combination of distinct handle values

    Raises:
        PartitionCapExceeded: More combinations than cap
    """
    if not handles:
        return [{}]
    distinct = [
        sorted(set(model.catalog(h.variable_name).column(h.property_name))) for h in handles
    ]
    count = 1
    for values in distinct:
        count *= len(values)
    if count > cap:
        raise PartitionCapExceeded(count, cap)
    return [dict(zip(handles, combo)) for combo in itertools.product(*distinct)]


def child_model(
    model: SystemModel,
    plan: SubsystemPlan,
    handle_values: Optional[Dict[PropertyKey, float]] = None,
) -> Optional[SystemModel]:
    """
    Model of the subsystem alone, optionally restricted to one partition

    Returns:
        SystemModel, or None when the partition leaves a catalog empty
    """
    handle_values = handle_values or {}
    members = plan.member_set
    catalogs: Dict[str, Catalog] = {}
    for name in plan.members:
        catalog = model.catalogs[name]
        pinned = [(catalog.property_index(k.property_name), v)
                  for k, v in handle_values.items() if k.variable_name == name]
        if pinned:
            catalog = catalog.filtered(lambda c: all(c.values[i] == v for i, v in pinned))
            if len(catalog) == 0:
                return None
        catalogs[name] = catalog

    constraints = [
        c for c in model.constraints if c.variables() and c.variables() <= members
    ]
    objectives = [
        Objective(name=c.column, expr=c.expr, direction=c.direction.objective_direction)
        for c in plan.columns
    ] or [Objective(name=FEASIBILITY_COLUMN, expr=Constant(0.0))]
    return SystemModel(catalogs=catalogs, constraints=constraints, objectives=objectives)


def optimize_plan(
    model: SystemModel,
    plan: SubsystemPlan,
    engine: Optional[FrontEngine] = None,
) -> Tuple[ParetoFront, int]:
    """
    Pareto front of a planned subsystem, one sub-front per partition

    Returns:
        (front, number of partitions)

    Raises:
        EmptyFront: No partition is feasible
    """
    engine = engine or FrontEngine()
    partitions = partition_values(model, plan.handles, engine.config.partition_cap)

    def solve_one(values: Dict[PropertyKey, float]) -> Tuple[Optional[ParetoFront], FrontEngine]:
        worker = FrontEngine(engine.config, engine.solver_factory)
        child = child_model(model, plan, values)
        if child is None:
            return None, worker
        try:
            return worker.compute_front(child), worker
        except InfeasibleModel:
            return None, worker

    if engine.config.threads > 1 and len(partitions) > 1:
        with ThreadPoolExecutor(max_workers=engine.config.threads) as pool:
            results = list(pool.map(solve_one, partitions))
    else:
        results = [solve_one(values) for values in partitions]

    columns = [c.column for c in plan.columns] or [FEASIBILITY_COLUMN]
    directions = [c.direction.objective_direction for c in plan.columns] or [Direction.MINIMIZE]
    front = ParetoFront(objective_names=columns, directions=directions)
    for values, (sub_front, worker) in zip(partitions, results):
        engine.statistics.accumulate(worker.statistics)
        if sub_front is None:
            logger.debug(f"Subsystem '{plan.spec.name}' partition {values} is infeasible")
            continue
        tag = tuple((str(h), values[h]) for h in plan.handles)
        for point in sub_front.sorted_points():
            front.add(ParetoPoint(vector=point.vector, assignment=point.assignment, partition=tag))

    if not front.points:
        raise EmptyFront(f"Subsystem '{plan.spec.name}' has no feasible assignment")
    logger.info(
        f"Subsystem '{plan.spec.name}': {len(front)} front points over {len(partitions)} partition(s)"
    )
    return front, len(partitions)


def optimize_subsystem(
    model: SystemModel,
    spec: SubsystemSpec,
    engine: Optional[FrontEngine] = None,
) -> ParetoFront:
    """
    Pareto front of a subsystem over its external properties

    Args:
        model: Parent model
        spec: Subsystem specification
        engine: Front engine (default configuration if omitted)

    Returns:
        ParetoFront whose objectives are the aggregate columns; points of
        a partitioned subsystem are tagged with their handle values

    Raises:
        InconsistentSubsystem: Uncovered inconsistent properties
        EmptyFront: The subsystem is infeasible
    """
    front, _ = optimize_plan(model, plan_subsystem(model, spec), engine)
    return front


# ---------------------------------------------------------------------------
# Aggregates and composition
# ---------------------------------------------------------------------------

def build_aggregate(front: ParetoFront, spec: SubsystemSpec) -> AggregateComponent:
    """
    Turn a subsystem front into a catalog

    One tuple per front point, ordered by objective vector; columns are
    the front objectives (in user directions) followed by handle columns.

    Raises:
        EmptyFront: The front has no points
    """
    points = front.sorted_points()
    if not points:
        raise EmptyFront(f"Cannot aggregate the empty front of '{spec.name}'")

    name = spec.aggregate_name
    handles = list(spec.declared_inconsistent_handles)
    handle_columns = [column_name(h) for h in handles]
    digits = len(str(len(points)))

    rows = []
    provenance: Dict[str, Dict[str, str]] = {}
    for index, point in enumerate(points, start=1):
        component_id = f"{name}-{index:0{digits}d}"
        tag = dict(point.partition)
        values = front.reported_values(point) + [tag[str(h)] for h in handles]
        rows.append((component_id, values))
        provenance[component_id] = dict(point.assignment)

    catalog = Catalog.from_rows(name, list(front.objective_names) + handle_columns, rows)
    return AggregateComponent(
        spec_name=spec.name,
        catalog=catalog,
        provenance=provenance,
        handle_columns=handle_columns,
    )


def _router(members: Set[str], aggregate: str, columns: Set[str], function_id: str):
    def leaf(node: PropertyRef) -> Expression:
        key = node.key
        if key.variable_name == aggregate:
            if key.property_name not in columns:
                raise UnroutableReference(function_id, str(key))
            return node
        if key.variable_name not in members:
            return node
        column = column_name(key)
        if column not in columns:
            raise UnroutableReference(function_id, str(key))
        return ref(aggregate, column)
    return leaf


def _rewrite_metric(
    expr: Expression,
    members: Set[str],
    definitions: Dict[str, List[Term]],
    aggregate: str,
) -> Expression:
    inside, _, _ = split_terms(linear_terms(expr), members)
    available = {term_key(atom) for _, atom in inside}
    chosen: List[Tuple[str, List[Term]]] = []
    used: Set[str] = set()
    for name, terms in definitions.items():
        keys = {term_key(atom) for _, atom in terms}
        if keys <= available and not keys & used:
            chosen.append((name, terms))
            used |= keys
    if not chosen:
        return expr
    return apply_rewrites(f"metric:{aggregate}", expr, members, chosen, aggregate)


def compose(model: SystemModel, spec: SubsystemSpec, aggregate: AggregateComponent) -> SystemModel:
    """
    Replace a subsystem by its aggregate

    Internal constraints are dropped (the aggregate already satisfies
    them), shared functions are rewritten onto aggregate columns, and
    objectives living inside the subsystem read their aggregate column.

    Args:
        model: Parent model
        spec: Subsystem specification
        aggregate: Aggregate built from the subsystem front

    Returns:
        Reduced SystemModel

    Raises:
        UnroutableReference: A surviving function needs an unexported property
    """
    members = check_subsystem(model, spec.variables)
    rewritten, definitions = prepare_rewrites(model, spec, members)
    name = aggregate.variable_name
    columns = set(aggregate.catalog.property_names)

    def route(function_id: str, expr: Expression) -> Expression:
        return transform(expr, _router(members, name, columns, function_id))

    constraints: List[Constraint] = []
    for constraint in model.constraints:
        touched = constraint.variables()
        if touched and touched <= members:
            continue
        if touched & members:
            left_id, right_id = lhs_id(constraint.name), rhs_id(constraint.name)
            constraint = Constraint(
                name=constraint.name,
                lhs=route(left_id, rewritten.get(left_id, constraint.lhs)),
                rhs=route(right_id, rewritten.get(right_id, constraint.rhs)),
                relation=constraint.relation,
            )
        constraints.append(constraint)

    objectives: List[Objective] = []
    for objective in model.objectives:
        touched = objective.variables()
        function_id = objective_id(objective.name)
        if touched and touched <= members:
            if objective.name not in columns:
                raise UnroutableReference(function_id, objective.name)
            objective = Objective(
                name=objective.name, expr=ref(name, objective.name), direction=objective.direction
            )
        elif touched & members:
            objective = Objective(
                name=objective.name,
                expr=route(function_id, rewritten.get(function_id, objective.expr)),
                direction=objective.direction,
            )
        objectives.append(objective)

    metrics: List[Metric] = []
    for metric in model.metrics:
        touched = {k.variable_name for k in iter_property_refs(metric.expr)}
        if not touched & members:
            metrics.append(metric)
            continue
        try:
            expr = _rewrite_metric(metric.expr, members, definitions, name)
            metrics.append(Metric(name=metric.name, expr=route(f"metric:{metric.name}", expr)))
        except (UnroutableReference, NonSeparableFunction, UnknownProperty):
            logger.warning(f"Metric '{metric.name}' cannot be expressed on aggregate '{name}'; dropped")

    catalogs: Dict[str, Catalog] = {}
    for variable in model.variable_names:
        if variable in members:
            if name not in catalogs:
                catalogs[name] = aggregate.catalog
            continue
        catalogs[variable] = model.catalogs[variable]

    kept = {c.name for c in constraints}
    overrides = [
        o for o in model.polarity_overrides
        if o.variable_name not in members
        and (not o.function_id.startswith("constraint:") or o.function_id.split(":")[1] in kept)
    ]

    reduced = model.replace(
        catalogs=catalogs,
        constraints=constraints,
        objectives=objectives,
        metrics=metrics,
        polarity_overrides=overrides,
    )
    logger.debug(
        f"Composed '{name}' ({len(aggregate.catalog)} tuples): "
        f"{len(model.variable_names)} -> {len(reduced.variable_names)} variables"
    )
    return reduced
