"""
Consistency Module
Constraint graph construction and monotonicity classification of properties
"""

from .graph_models import (
    ClassificationKind, ConstraintGraph, FunctionNode, FunctionRole, Polarity,
    PropertyClassification, ValueRange,
)
from .constraint_graph import build_graph, shared_functions
from .polarity import polarity
from .classifier import (
    classify_property, consistency_report, is_fully_consistent, verify_polarity_exhaustive,
)

__all__ = [
    "ClassificationKind", "ConstraintGraph", "FunctionNode", "FunctionRole", "Polarity",
    "PropertyClassification", "ValueRange",
    "build_graph", "shared_functions", "polarity",
    "classify_property", "consistency_report", "is_fully_consistent",
    "verify_polarity_exhaustive",
]
