"""
Brute-Force Oracle
Exhaustive enumeration of every assignment, sharing only the core evaluator
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from benchmarks.fleet import schedule_cost_time, slot_id
from benchmarks.fleet_models import FleetModel, FleetObjectives, FleetSchedule
from core.evaluator import is_feasible, objective_vector
from core.exceptions import BudgetExceeded, CapacityViolation
from core.system_models import Direction, SystemModel
from pareto.front_models import ParetoFront, ParetoPoint

logger = logging.getLogger(__name__)

Vector = Tuple[float, ...]


class EnumerationBudget(BaseModel):
    """Largest number of assignments an oracle call may enumerate"""

    max_combinations: int = Field(default=10_000_000, gt=0)

    class Config:
        frozen = True

    def check(self, combinations: int) -> None:
        if combinations > self.max_combinations:
            raise BudgetExceeded(combinations, self.max_combinations)


def _dominated(a: Vector, b: Vector) -> bool:
    """True if b dominates a"""
    return all(y <= x for x, y in zip(a, b)) and any(y < x for x, y in zip(a, b))


def _non_dominated(candidates: Dict[Vector, Dict[str, str]]) -> List[Tuple[Vector, Dict[str, str]]]:
    vectors = list(candidates)
    return [
        (v, candidates[v]) for v in vectors
        if not any(_dominated(v, other) for other in vectors if other != v)
    ]


def _assignments(model: SystemModel):
    names = model.variable_names
    pools = [[c.component_id for c in model.catalogs[n].components] for n in names]
    for ids in itertools.product(*pools):
        yield dict(zip(names, ids))


def brute_force_front(model: SystemModel, budget: Optional[EnumerationBudget] = None) -> ParetoFront:
    """
    Exact Pareto front by enumerating every assignment

    The first assignment reaching a vector (in catalog order) represents it.

    Args:
        model: System model
        budget: Enumeration budget

    Returns:
        ParetoFront, empty if the model is infeasible

    Raises:
        BudgetExceeded: The model has more assignments than the budget allows
    """
    (budget or EnumerationBudget()).check(model.combinations())
    best: Dict[Vector, Dict[str, str]] = {}
    for assignment in _assignments(model):
        if not is_feasible(assignment, model):
            continue
        vector = tuple(objective_vector(model, assignment))
        best.setdefault(vector, assignment)

    front = ParetoFront.for_model(model)
    for vector, assignment in sorted(_non_dominated(best), key=lambda item: item[0]):
        front.points.append(ParetoPoint(vector=vector, assignment=assignment))
    logger.debug(f"Oracle front: {len(front)} points from {model.combinations()} assignments")
    return front


def brute_force_lex(
    model: SystemModel,
    budget: Optional[EnumerationBudget] = None,
) -> Optional[Tuple[Vector, Dict[str, str]]]:
    """
    Lexicographic optimum by enumeration

    Ties go to the lexicographically smallest tuple of component ids in
    model variable order.

    Returns:
        (canonical vector, assignment), or None if infeasible

    Raises:
        BudgetExceeded: The model has more assignments than the budget allows
    """
    (budget or EnumerationBudget()).check(model.combinations())
    names = model.variable_names
    best: Optional[Tuple[Vector, Tuple[str, ...], Dict[str, str]]] = None
    for assignment in _assignments(model):
        if not is_feasible(assignment, model):
            continue
        key = (tuple(objective_vector(model, assignment)), tuple(assignment[n] for n in names))
        if best is None or key < best[:2]:
            best = (key[0], key[1], assignment)
    if best is None:
        return None
    return best[0], best[2]


def brute_force_schedule_front(fleet: FleetModel, budget: Optional[EnumerationBudget] = None) -> ParetoFront:
    """
    Fleet front by enumerating every design choice and package assignment

    Slots are enumerated without symmetry breaking and schedules are
    priced with schedule_cost_time, not through the fleet SystemModel.

    Args:
        fleet: FleetModel
        budget: Enumeration budget

    Returns:
        ParetoFront over (makespan, cost) or (cost,) following the fleet's objectives

    Raises:
        BudgetExceeded: Too many schedules
    """
    design_ids = [c.component_id for c in fleet.designs.components]
    n = len(fleet.slot_variables)
    m = len(fleet.packages)
    (budget or EnumerationBudget()).check(len(design_ids) ** n * n ** m)
    multi = FleetObjectives(fleet.params.objectives) == FleetObjectives.MULTI

    best: Dict[Vector, Dict[str, str]] = {}
    for designs in itertools.product(design_ids, repeat=n):
        if len(set(designs)) > fleet.params.max_designs:
            continue
        for slots in itertools.product(range(n), repeat=m):
            schedule = FleetSchedule(
                designs=list(designs),
                packages={p.package_id: s for p, s in zip(fleet.packages, slots)},
            )
            try:
                makespan, cost = schedule_cost_time(schedule, fleet)
            except CapacityViolation:
                continue
            vector = (makespan, cost) if multi else (cost,)
            if vector not in best:
                assignment = dict(zip(fleet.slot_variables, designs))
                assignment.update({
                    p: slot_id(s) for p, s in zip(fleet.package_variables, slots)
                })
                best[vector] = assignment

    names = ["makespan", "cost"] if multi else ["cost"]
    front = ParetoFront(objective_names=names, directions=[Direction.MINIMIZE] * len(names))
    for vector, assignment in sorted(_non_dominated(best), key=lambda item: item[0]):
        front.points.append(ParetoPoint(vector=vector, assignment=assignment))
    return front


def same_vectors(first: ParetoFront, second: ParetoFront, places: Optional[int] = None) -> bool:
    """Compare the vector sets of two fronts, optionally after rounding"""
    def rounded(front: ParetoFront) -> Sequence[Vector]:
        if places is None:
            return sorted(front.vectors())
        return sorted(tuple(round(v, places) for v in vector) for vector in front.vectors())
    return rounded(first) == rounded(second)
