"""
Front Engine
Iterative non-domination-cut loop producing the exact Pareto front of a model
"""

import logging
import time
from typing import Callable, List, Optional, Protocol, Sequence

from pydantic import BaseModel, Field

from core.exceptions import InfeasibleModel, LengthMismatch
from core.system_models import SystemModel
from pareto.front_models import ParetoFront, ParetoPoint
from solver.solver_models import NonDominationCut, SearchStatistics, SolveResult, SolverConfig
from solver.tree_search import LexicographicSolver

logger = logging.getLogger(__name__)


class CutSolver(Protocol):
    """Anything that can run a lexicographic solve under cuts"""

    def solve(self, cuts: Sequence[NonDominationCut] = ()) -> SolveResult:
        ...


SolverFactory = Callable[[SystemModel, SolverConfig], CutSolver]


class EngineConfig(BaseModel):
    """
    Front engine configuration

    The cut loop of one front is sequential; `threads` only sizes the pool
    that solves a subsystem's partitions in parallel during decomposition.
    """

    solver: SolverConfig = Field(default_factory=SolverConfig)
    threads: int = Field(default=1, ge=1, description="Workers for parallel partition solves (decomposition only)")
    partition_cap: int = Field(default=64, gt=0)

    class Config:
        frozen = True

    @classmethod
    def from_settings(cls, settings) -> "EngineConfig":
        return cls(
            solver=SolverConfig.from_settings(settings.solver),
            threads=settings.engine.threads,
            partition_cap=settings.decomposition.partition_cap,
        )


class FrontEngine:
    """
    Computes Pareto fronts by repeated lexicographic solves

    Every solve carries one cut per front point found so far, demanding
    strict improvement in at least one objective. The lexicographic
    optimum under those cuts is always Pareto optimal, so each solve adds
    exactly one new point and the loop ends on the first infeasible solve.
    """

    def __init__(
        self,
        config: Optional[EngineConfig] = None,
        solver_factory: Optional[SolverFactory] = None,
    ):
        """
        Initialize front engine

        Args:
            config: Engine configuration
            solver_factory: Builds a cut solver for a model (default: tree search)
        """
        self.config = config or EngineConfig()
        self.solver_factory = solver_factory or LexicographicSolver
        self.statistics = SearchStatistics()
        logger.debug(f"FrontEngine initialized (threads={self.config.threads})")

    def compute_front(self, model: SystemModel) -> ParetoFront:
        """
        Compute the exact Pareto front

        Args:
            model: System model with at least one objective

        Returns:
            ParetoFront with one assignment per non-dominated vector

        Raises:
            InfeasibleModel: No assignment satisfies the constraints
        """
        start = time.perf_counter()
        solver = self.solver_factory(model, self.config.solver)
        front = ParetoFront.for_model(model)
        cuts: List[NonDominationCut] = []

        while True:
            result = solver.solve(cuts)
            self.statistics.accumulate(result.statistics)
            if not result.feasible:
                break
            point = ParetoPoint(vector=result.vector, assignment=result.assignment)
            if not front.add(point):
                # a sound solver never returns a point the cuts exclude
                raise RuntimeError(f"Solver returned dominated vector {result.vector}")
            cuts.append(NonDominationCut(bounds=result.vector))
            logger.debug(f"Front point {len(front)}: {result.vector}")

        if not front.points:
            raise InfeasibleModel("No assignment satisfies the model constraints")

        logger.info(
            f"Pareto front: {len(front)} points in {time.perf_counter() - start:.3f}s "
            f"({self.statistics.nodes_expanded} nodes)"
        )
        return front


def compute_front(
    model: SystemModel,
    solver_factory: Optional[SolverFactory] = None,
    config: Optional[EngineConfig] = None,
) -> ParetoFront:
    """One-shot front computation with a fresh engine"""
    return FrontEngine(config, solver_factory).compute_front(model)


def insert(front: ParetoFront, candidate: ParetoPoint) -> ParetoFront:
    """
    Copy of the front with the candidate inserted

    Raises:
        LengthMismatch: Candidate length differs from the front width
    """
    result = ParetoFront(
        objective_names=list(front.objective_names),
        directions=list(front.directions),
        points=list(front.points),
    )
    result.add(candidate)
    return result


def merge(first: ParetoFront, second: ParetoFront) -> ParetoFront:
    """
    Non-dominated subset of the union of two fronts

    Points of `first` win ties against equal vectors of `second`.

    Raises:
        LengthMismatch: Fronts differ in width
    """
    if first.width != second.width:
        raise LengthMismatch(first.width, second.width)
    result = first.copy_empty()
    for point in list(first.points) + list(second.points):
        result.add(point)
    return result
