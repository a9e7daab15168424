"""
Lexicographic Tree Search
Depth-first branch and bound over catalog assignments
"""

import logging
import time
from typing import Dict, List, Optional, Sequence, Tuple

from core.evaluator import is_feasible, objective_vector
from core.exceptions import NodeLimitExceeded
from core.system_models import SystemModel
from solver.compiled_model import CompiledModel, cut_blocks, lexicographically_blocked
from solver.solver_models import (
    NonDominationCut,
    Propagation,
    SearchStatistics,
    SolveResult,
    SolveStatus,
    SolverConfig,
)

logger = logging.getLogger(__name__)


class _Search:
    """State of one depth-first search"""

    def __init__(
        self,
        compiled: CompiledModel,
        cuts: Sequence[NonDominationCut],
        statistics: SearchStatistics,
    ):
        self.compiled = compiled
        self.cut_bounds = [cut.bounds for cut in cuts]
        self.statistics = statistics
        self.node_limit = compiled.config.node_limit
        self.prune_inside = compiled.config.propagation != Propagation.NONE

        self.lo, self.hi = compiled.fresh_bounds()
        self.chosen: List[int] = [-1] * len(compiled.variables)
        self.depth_count = len(compiled.order)

        self.best: Optional[List[int]] = None
        self.best_vector: Optional[List[float]] = None

    def _blocked(self, leaf: bool) -> bool:
        """Objective-based pruning: cuts and the incumbent"""
        if not self.cut_bounds and self.best_vector is None:
            return False
        if not (leaf or self.prune_inside):
            return False
        lower = self.compiled.objective_bounds(self.lo, self.hi)
        for bounds in self.cut_bounds:
            if cut_blocks(lower, bounds):
                return True
        return self.best_vector is not None and lexicographically_blocked(lower, self.best_vector)

    def run(self) -> None:
        self._descend(0)

    def _descend(self, depth: int) -> None:
        compiled = self.compiled
        v = compiled.order[depth]
        leaf = depth == self.depth_count - 1
        checks = compiled.depth_constraints[depth]

        for component in compiled.value_orders[v]:
            self.statistics.nodes_expanded += 1
            if self.node_limit is not None and self.statistics.nodes_expanded > self.node_limit:
                raise NodeLimitExceeded(self.node_limit)

            compiled.assign(self.lo, self.hi, v, component)
            self.chosen[v] = component

            if any(c.violated(self.lo, self.hi) for c in checks) or self._blocked(leaf):
                self.statistics.pruned += 1
                continue

            if leaf:
                self.best = list(self.chosen)
                self.best_vector = compiled.objective_bounds(self.lo, self.hi)
            else:
                self._descend(depth + 1)

        compiled.release(self.lo, self.hi, v)
        self.chosen[v] = -1
        self.statistics.backtracks += 1


class LexicographicSolver:
    """
    Sound and complete lexicographic solver bound to one model

    The model is compiled once; each call to solve() runs a fresh search
    under a given set of non-domination cuts.
    """

    def __init__(self, model: SystemModel, config: Optional[SolverConfig] = None):
        """
        Initialize solver

        Args:
            model: System model
            config: Search configuration
        """
        self.model = model
        self.config = config or SolverConfig()
        self.compiled = CompiledModel(model, self.config)

    def solve(self, cuts: Sequence[NonDominationCut] = ()) -> SolveResult:
        """
        Find the lexicographically smallest canonical objective vector

        Args:
            cuts: Disjunctive cuts every solution must satisfy

        Returns:
            SolveResult; status INFEASIBLE when nothing satisfies the
            constraints and cuts

        Raises:
            NodeLimitExceeded: The configured node limit was hit
        """
        start = time.perf_counter()
        statistics = SearchStatistics(filtered_tuples=self.compiled.filtered_tuples, solves=1)
        assignment: Optional[Dict[str, str]] = None

        if not self.compiled.infeasible:
            if not self.compiled.variables:
                assignment = self._solve_constant(cuts)
            else:
                search = _Search(self.compiled, cuts, statistics)
                search.run()
                if search.best is not None:
                    assignment = {
                        name: self.compiled.component_id(v, search.best[v])
                        for v, name in enumerate(self.compiled.variables)
                    }

        statistics.wall_time = time.perf_counter() - start
        if assignment is None:
            logger.debug(f"Lexicographic solve infeasible ({statistics.nodes_expanded} nodes)")
            return SolveResult(status=SolveStatus.INFEASIBLE, statistics=statistics)

        vector: Tuple[float, ...] = tuple(objective_vector(self.model, assignment))
        logger.debug(f"Lexicographic solve found {vector} ({statistics.nodes_expanded} nodes)")
        return SolveResult(
            status=SolveStatus.OPTIMAL,
            assignment=assignment,
            vector=vector,
            statistics=statistics,
        )

    def _solve_constant(self, cuts: Sequence[NonDominationCut]) -> Optional[Dict[str, str]]:
        """A model without variables has only the empty assignment"""
        if not is_feasible({}, self.model):
            return None
        vector = tuple(objective_vector(self.model, {}))
        if all(cut.admits(vector) for cut in cuts):
            return {}
        return None


def solve_lexicographic(
    model: SystemModel,
    cuts: Sequence[NonDominationCut] = (),
    config: Optional[SolverConfig] = None,
) -> SolveResult:
    """
    One-shot lexicographic solve

    Args:
        model: System model
        cuts: Non-domination cuts
        config: Search configuration

    Returns:
        SolveResult
    """
    return LexicographicSolver(model, config).solve(cuts)
