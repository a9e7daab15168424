"""
Pareto Front Data Models
Front points and the non-dominated set that holds them
"""

from typing import Dict, List, Optional, Set, Tuple

import numpy as np
from pydantic import BaseModel, Field

from core.exceptions import LengthMismatch
from core.system_models import Direction, SystemModel
from pareto.dominance import compare_to_members

# (handle name, value) pairs; points only compete inside equal tags
PartitionTag = Tuple[Tuple[str, float], ...]


class ParetoPoint(BaseModel):
    """One objective vector with the assignment that realizes it"""

    vector: Tuple[float, ...] = Field(description="Canonical minimization space")
    assignment: Dict[str, str]
    partition: PartitionTag = ()

    class Config:
        frozen = True


class ParetoFront(BaseModel):
    """
    Mutually non-dominated set of points

    Dominance is only checked between points carrying the same partition
    tag, so a partitioned front keeps one non-dominated set per tag.
    """

    objective_names: List[str]
    directions: List[Direction]
    points: List[ParetoPoint] = Field(default_factory=list)

    @classmethod
    def for_model(cls, model: SystemModel) -> "ParetoFront":
        """Empty front laid out for a model's objectives"""
        return cls(
            objective_names=[o.name for o in model.objectives],
            directions=[o.direction for o in model.objectives],
        )

    @classmethod
    def empty(cls, width: int) -> "ParetoFront":
        """Empty front of minimized objectives f1..fN"""
        return cls(
            objective_names=[f"f{i + 1}" for i in range(width)],
            directions=[Direction.MINIMIZE] * width,
        )

    @property
    def width(self) -> int:
        return len(self.objective_names)

    def __len__(self) -> int:
        return len(self.points)

    def add(self, point: ParetoPoint) -> bool:
        """
        Insert a point if no peer dominates or duplicates it

        Peers it dominates are removed; on a duplicate vector the
        incumbent stays.

        Args:
            point: Candidate point

        Returns:
            True if the point was added

        Raises:
            LengthMismatch: Vector length differs from the front width
        """
        if len(point.vector) != self.width:
            raise LengthMismatch(self.width, len(point.vector))

        peers = [i for i, p in enumerate(self.points) if p.partition == point.partition]
        if peers:
            members = np.array([self.points[i].vector for i in peers], dtype=float)
            blocked, beaten = compare_to_members(members, np.array(point.vector, dtype=float))
            if blocked:
                return False
            drop = {peers[i] for i in np.flatnonzero(beaten)}
            if drop:
                self.points = [p for i, p in enumerate(self.points) if i not in drop]

        self.points.append(point)
        return True

    def copy_empty(self) -> "ParetoFront":
        return ParetoFront(objective_names=list(self.objective_names), directions=list(self.directions))

    def vectors(self) -> Set[Tuple[float, ...]]:
        return {p.vector for p in self.points}

    def partitions(self) -> List[PartitionTag]:
        seen: Dict[PartitionTag, None] = {}
        for point in self.points:
            seen.setdefault(point.partition, None)
        return list(seen)

    def sorted_points(self) -> List[ParetoPoint]:
        """Points ordered by objective vector, then partition tag"""
        return sorted(self.points, key=lambda p: (p.vector, p.partition))

    def reported_values(self, point: ParetoPoint) -> List[float]:
        """Objective values in user directions (maximized values un-negated)"""
        return [
            -value if direction == Direction.MAXIMIZE else value
            for value, direction in zip(point.vector, self.directions)
        ]

    def find(self, vector: Tuple[float, ...]) -> Optional[ParetoPoint]:
        for point in self.points:
            if point.vector == vector:
                return point
        return None
