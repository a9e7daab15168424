"""
Decomposer
Folds subsystem solves into the parent model and flattens the result back
"""

import hashlib
import logging
import threading
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.evaluator import is_feasible, objective_vector
from core.exceptions import DecompositionError
from core.expressions import Expression, PropertyKey, pretty_print, ref, transform
from core.system_models import Assignment, SystemModel
from decomposition.subsystem_models import DecompositionResult, SubsystemReport, SubsystemSpec
from decomposition.subsystem_optimizer import (
    SubsystemPlan,
    build_aggregate,
    column_name,
    compose,
    optimize_plan,
    plan_subsystem,
)
from pareto.front_engine import EngineConfig, FrontEngine, SolverFactory
from pareto.front_models import ParetoFront, ParetoPoint

logger = logging.getLogger(__name__)

# aggregate variable -> aggregate component id -> internal assignment
Provenance = Dict[str, Dict[str, Dict[str, str]]]


def _positional(members: Sequence[str]) -> Dict[str, str]:
    return {name: f"#{i}" for i, name in enumerate(members)}


def _renamed(expr: Expression, names: Dict[str, str]) -> str:
    def leaf(node):
        key = node.key
        return ref(names.get(key.variable_name, key.variable_name), key.property_name)
    return pretty_print(transform(expr, leaf))


def fingerprint(model: SystemModel, plan: SubsystemPlan) -> str:
    """
    Structural hash of a planned subsystem

    Member variables are replaced by their position, so replicated
    instances over identical catalogs hash the same.
    """
    names = _positional(plan.members)
    digest = hashlib.sha256()

    def feed(text: str) -> None:
        digest.update(text.encode("utf-8"))
        digest.update(b"\n")

    for name in plan.members:
        catalog = model.catalogs[name]
        feed(f"catalog {names[name]} {','.join(catalog.property_names)}")
        for component in catalog.components:
            feed(f"{component.component_id}:{','.join(repr(v) for v in component.values)}")
    members = plan.member_set
    for constraint in model.constraints:
        touched = constraint.variables()
        if touched and touched <= members:
            feed(
                f"constraint {_renamed(constraint.lhs, names)} "
                f"{constraint.relation.value} {_renamed(constraint.rhs, names)}"
            )
    for column in plan.columns:
        feed(f"column {column.kind.value} {column.direction.value} {_renamed(column.expr, names)}")
    for handle in plan.handles:
        feed(f"handle {names[handle.variable_name]}.{handle.property_name}")
    return digest.hexdigest()


def model_fingerprint(model: SystemModel) -> str:
    """Structural hash of a whole model: catalogs, constraints and objectives"""
    digest = hashlib.sha256()
    for name in model.variable_names:
        catalog = model.catalogs[name]
        digest.update(f"catalog {name} {','.join(catalog.property_names)}\n".encode("utf-8"))
        for component in catalog.components:
            digest.update(
                f"{component.component_id}:{','.join(repr(v) for v in component.values)}\n".encode("utf-8")
            )
    for constraint in model.constraints:
        digest.update(
            f"constraint {pretty_print(constraint.lhs)} {constraint.relation.value} "
            f"{pretty_print(constraint.rhs)}\n".encode("utf-8")
        )
    for objective in model.objectives:
        digest.update(f"{objective.direction.value} {pretty_print(objective.expr)}\n".encode("utf-8"))
    return digest.hexdigest()


class _CacheEntry:
    __slots__ = ("fingerprint", "front", "members", "handles", "partitions")

    def __init__(self, fingerprint: str, front: ParetoFront, members: List[str],
                 handles: List[PropertyKey], partitions: int):
        self.fingerprint = fingerprint
        self.front = front
        self.members = members
        self.handles = handles
        self.partitions = partitions


class SubsystemCache:
    """
    Thread-safe store of solved subsystem fronts keyed by spec name

    A cached front is handed back renamed onto the requesting instance's
    variables, handles and columns. `computations` counts real solves.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._entries: Dict[str, _CacheEntry] = {}
        self.computations = 0
        self.hits = 0

    def __contains__(self, name: str) -> bool:
        with self._lock:
            return name in self._entries

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.computations = 0
            self.hits = 0

    def front_for(
        self,
        name: str,
        fingerprint_: str,
        plan: SubsystemPlan,
        compute: Callable[[], Tuple[ParetoFront, int]],
    ) -> Tuple[ParetoFront, int, bool]:
        """
        Cached front for a subsystem, computing it on first use

        Args:
            name: Spec name
            fingerprint_: Structural hash of the plan
            plan: Plan of the requesting instance
            compute: Produces (front, partitions) for this plan

        Returns:
            (front laid out for this plan, partitions, reused)

        Raises:
            DecompositionError: The name is cached for a different structure
        """
        # held during compute so each name is solved exactly once
        with self._lock:
            entry = self._entries.get(name)
            if entry is None:
                front, partitions = compute()
                self._entries[name] = _CacheEntry(
                    fingerprint_, front, list(plan.members), list(plan.handles), partitions
                )
                self.computations += 1
                return front, partitions, False

            if entry.fingerprint != fingerprint_:
                raise DecompositionError(
                    f"Subsystem '{name}' was solved for a different structure; "
                    f"replicated specs must be identical"
                )
            self.hits += 1
            return self._relabel(entry, plan), entry.partitions, True

    def model_front(
        self,
        name: str,
        model: SystemModel,
        compute: Callable[[], ParetoFront],
    ) -> Tuple[ParetoFront, bool]:
        """
        Cached front of a whole model, e.g. one design replicated over fleet slots

        Returns:
            (front, reused)

        Raises:
            DecompositionError: The name is cached for a different model
        """
        digest = model_fingerprint(model)
        with self._lock:
            entry = self._entries.get(name)
            if entry is None:
                front = compute()
                self._entries[name] = _CacheEntry(digest, front, model.variable_names, [], 1)
                self.computations += 1
                return front, False
            if entry.fingerprint != digest:
                raise DecompositionError(f"Front '{name}' was computed for a different model")
            self.hits += 1
            return entry.front, True

    @staticmethod
    def _relabel(entry: _CacheEntry, plan: SubsystemPlan) -> ParetoFront:
        variables = dict(zip(entry.members, plan.members))
        handles = {str(old): str(new) for old, new in zip(entry.handles, plan.handles)}
        columns = [c.column for c in plan.columns] or list(entry.front.objective_names)
        front = ParetoFront(objective_names=columns, directions=list(entry.front.directions))
        for point in entry.front.points:
            front.points.append(ParetoPoint(
                vector=point.vector,
                assignment={variables[v]: cid for v, cid in point.assignment.items()},
                partition=tuple((handles[h], value) for h, value in point.partition),
            ))
        return front


def flatten(assignment: Assignment, provenance: Provenance) -> Dict[str, str]:
    """Replace aggregate choices by the component-level assignments behind them"""
    flat: Dict[str, str] = {}
    for variable, component_id in assignment.items():
        if variable in provenance:
            flat.update(flatten(provenance[variable][component_id], provenance))
        else:
            flat[variable] = component_id
    return flat


class Decomposer:
    """
    Solves a model through a sequence of subsystem aggregates

    Specs are applied innermost first; each one is certified, solved for
    its Pareto front, turned into an aggregate catalog and composed into
    the running model. The reduced model is then solved and every front
    point is flattened and re-evaluated on the original model.
    """

    def __init__(
        self,
        config: Optional[EngineConfig] = None,
        solver_factory: Optional[SolverFactory] = None,
        cache: Optional[SubsystemCache] = None,
    ):
        """
        Initialize decomposer

        Args:
            config: Engine configuration
            solver_factory: Builds cut solvers (default: tree search)
            cache: Subsystem front cache shared across solves
        """
        self.config = config or EngineConfig()
        self.solver_factory = solver_factory
        self.cache = cache if cache is not None else SubsystemCache()
        self.engine = FrontEngine(self.config, solver_factory)
        logger.info(f"Decomposer initialized (threads={self.config.threads})")

    def solve(self, model: SystemModel, specs: Sequence[SubsystemSpec]) -> DecompositionResult:
        """
        Pareto front of a model through its subsystem decomposition

        Args:
            model: Original model
            specs: Subsystems, innermost first

        Returns:
            DecompositionResult whose front uses component-level assignments

        Raises:
            InconsistentSubsystem: A spec is not decomposable at its stage
            EmptyFront: A subsystem is infeasible
            InfeasibleModel: The reduced model is infeasible
            DecompositionError: A flattened assignment violates the original model
        """
        start = time.perf_counter()
        current = model
        provenance: Provenance = {}
        reports: List[SubsystemReport] = []

        for spec in specs:
            level_start = time.perf_counter()
            plan = plan_subsystem(current, spec)
            front, partitions, reused = self.cache.front_for(
                spec.name,
                fingerprint(current, plan),
                plan,
                lambda: optimize_plan(current, plan, self.engine),
            )
            aggregate = build_aggregate(front, spec)
            provenance[aggregate.variable_name] = aggregate.provenance

            combinations = 1
            for name in plan.members:
                combinations *= len(current.catalogs[name])
            reports.append(SubsystemReport(
                name=spec.name,
                instance=aggregate.variable_name,
                variables=list(plan.members),
                components=sum(len(current.catalogs[name]) for name in plan.members),
                combinations=combinations,
                external_properties=[c.column for c in plan.columns]
                + [column_name(h) for h in plan.handles],
                front_size=len(front),
                partitions=partitions,
                wall_time=time.perf_counter() - level_start,
                reused=reused,
            ))
            current = compose(current, spec, aggregate)
            logger.info(
                f"Subsystem '{spec.aggregate_name}': {len(front)} aggregate tuples"
                f"{' (reused)' if reused else ''}"
            )

        reduced_front = self.engine.compute_front(current)

        front = ParetoFront.for_model(model)
        for point in reduced_front.sorted_points():
            assignment = flatten(point.assignment, provenance)
            if not is_feasible(assignment, model):
                raise DecompositionError(
                    f"Flattened assignment {assignment} violates the original constraints"
                )
            front.add(ParetoPoint(vector=tuple(objective_vector(model, assignment)), assignment=assignment))

        wall_time = time.perf_counter() - start
        logger.info(
            f"Decomposed solve: {len(specs)} subsystem(s), {len(front)} front points "
            f"in {wall_time:.3f}s"
        )
        return DecompositionResult(
            front=front,
            reports=reports,
            reduced_variables=current.variable_names,
            wall_time=wall_time,
        )


def decompose_solve(
    model: SystemModel,
    specs: Sequence[SubsystemSpec],
    solver_factory: Optional[SolverFactory] = None,
    config: Optional[EngineConfig] = None,
    cache: Optional[SubsystemCache] = None,
) -> ParetoFront:
    """
    Pareto front of a model solved through its subsystems

    An empty spec list is a plain front computation.

    Args:
        model: Original model
        specs: Subsystems, innermost first
        solver_factory: Builds cut solvers
        config: Engine configuration
        cache: Subsystem front cache

    Returns:
        ParetoFront over the original objectives with component-level assignments
    """
    return Decomposer(config, solver_factory, cache).solve(model, specs).front
