"""
Core Module
Data model, expressions, evaluation and configuration shared by every engine
"""

from .expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
    iter_property_refs, pretty_print, ref,
)
from .system_models import (
    Assignment, Catalog, ComponentTuple, Constraint, Direction, Metric, Objective,
    Relation, SystemModel,
)
from .evaluator import check_constraint, evaluate, objective_vector

__all__ = [
    "Add", "Constant", "Div", "Expression", "Max", "Min", "Mul", "Neg", "PropertyKey",
    "PropertyRef", "Sub", "iter_property_refs", "pretty_print", "ref",
    "Assignment", "Catalog", "ComponentTuple", "Constraint", "Direction", "Metric",
    "Objective", "Relation", "SystemModel",
    "check_constraint", "evaluate", "objective_vector",
]
