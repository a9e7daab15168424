"""
Solver Data Models
Search configuration, statistics, non-domination cuts and solve results
"""

from enum import Enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, Field


class VariableOrder(str, Enum):
    """Static branching order"""
    MODEL_ORDER = "model_order"
    SMALLEST_DOMAIN_FIRST = "smallest_domain_first"


class ValueOrder(str, Enum):
    """Order in which a variable's tuples are tried"""
    BEST_OBJECTIVE_FIRST = "best_objective_first"
    CATALOG_ORDER = "catalog_order"


class Propagation(str, Enum):
    """Pruning strength"""
    NONE = "none"
    BOUNDS_ONLY = "bounds_only"
    BOUNDS_PLUS_UNARY = "bounds_plus_unary"


class SolverConfig(BaseModel):
    """Tree search configuration"""

    variable_order: VariableOrder = VariableOrder.SMALLEST_DOMAIN_FIRST
    value_order: ValueOrder = ValueOrder.BEST_OBJECTIVE_FIRST
    propagation: Propagation = Propagation.BOUNDS_PLUS_UNARY
    node_limit: Optional[int] = Field(default=None, gt=0)
    seed: int = Field(default=0, ge=0)

    class Config:
        frozen = True

    @classmethod
    def from_settings(cls, settings) -> "SolverConfig":
        """Build from the `solver` section of Settings"""
        return cls(
            variable_order=settings.variable_order,
            value_order=settings.value_order,
            propagation=settings.propagation,
            node_limit=settings.node_limit,
            seed=settings.seed,
        )


class SearchStatistics(BaseModel):
    """Counters of one or more searches"""

    nodes_expanded: int = Field(default=0, ge=0)
    backtracks: int = Field(default=0, ge=0)
    pruned: int = Field(default=0, ge=0)
    filtered_tuples: int = Field(default=0, ge=0)
    wall_time: float = Field(default=0.0, ge=0.0, description="Seconds")
    solves: int = Field(default=0, ge=0)

    def accumulate(self, other: "SearchStatistics") -> None:
        """Add another statistics record into this one"""
        self.nodes_expanded += other.nodes_expanded
        self.backtracks += other.backtracks
        self.pruned += other.pruned
        self.filtered_tuples += other.filtered_tuples
        self.wall_time += other.wall_time
        self.solves += other.solves


class NonDominationCut(BaseModel):
    """
    New solutions must be strictly better than `bounds` in some objective

    Bounds are in canonical minimization space, one per model objective.
    """

    bounds: Tuple[float, ...]

    class Config:
        frozen = True

    def admits(self, vector: Tuple[float, ...]) -> bool:
        return any(value < bound for value, bound in zip(vector, self.bounds))


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


class SolveResult(BaseModel):
    """Outcome of one lexicographic solve"""

    status: SolveStatus
    assignment: Optional[Dict[str, str]] = None
    vector: Optional[Tuple[float, ...]] = None
    statistics: SearchStatistics = Field(default_factory=SearchStatistics)

    @property
    def feasible(self) -> bool:
        return self.status == SolveStatus.OPTIMAL
