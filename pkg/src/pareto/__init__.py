"""
Pareto Module
Dominance, front maintenance and the cut-based front engine
"""

from .dominance import dominates
from .front_models import ParetoFront, ParetoPoint
from .front_engine import EngineConfig, FrontEngine, compute_front, insert, merge

__all__ = [
    "dominates", "ParetoFront", "ParetoPoint",
    "EngineConfig", "FrontEngine", "compute_front", "insert", "merge",
]
