"""
Oracle Module
Exhaustive reference solvers for cross-checking the engines
"""

from .brute_force import (
    EnumerationBudget, brute_force_front, brute_force_lex, brute_force_schedule_front, same_vectors,
)

__all__ = [
    "EnumerationBudget", "brute_force_front", "brute_force_lex", "brute_force_schedule_front",
    "same_vectors",
]
