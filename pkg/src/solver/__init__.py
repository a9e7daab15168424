"""
Solver Module
Lexicographic backtracking tree search with interval bound pruning
"""

from .solver_models import (
    NonDominationCut, Propagation, SearchStatistics, SolveResult, SolveStatus, SolverConfig,
    ValueOrder, VariableOrder,
)
from .bounds import bound_expression
from .tree_search import LexicographicSolver, solve_lexicographic

__all__ = [
    "NonDominationCut", "Propagation", "SearchStatistics", "SolveResult", "SolveStatus",
    "SolverConfig", "ValueOrder", "VariableOrder",
    "bound_expression", "LexicographicSolver", "solve_lexicographic",
]
