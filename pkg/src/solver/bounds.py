"""
Expression Bounds
Interval enclosure of an expression over all completions of a partial assignment
"""

from typing import Mapping

from core import intervals
from core.expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyRef, Sub,
)
from core.intervals import Interval
from core.system_models import SystemModel


def bound_expression(
    expr: Expression,
    partial: Mapping[str, str],
    model: SystemModel,
) -> Interval:
    """
    Sound bounds of an expression

    Assigned variables contribute their exact tuple values; unassigned
    properties contribute their catalog min/max.

    Args:
        expr: Expression tree
        partial: Possibly incomplete assignment
        model: System model

    Returns:
        (lo, hi) containing evaluate(expr) for every completion

    Raises:
        IntervalDivisionByZero: A denominator interval spans zero
        DivisionByZero: A denominator is exactly zero
    """
    if isinstance(expr, Constant):
        return intervals.point(expr.value)
    if isinstance(expr, PropertyRef):
        component_id = partial.get(expr.key.variable_name)
        if component_id is None:
            return model.property_range(expr.key)
        return intervals.point(model.lookup(expr.key, component_id))
    if isinstance(expr, Neg):
        return intervals.neg(bound_expression(expr.child, partial, model))
    if isinstance(expr, Add):
        return intervals.add(
            bound_expression(expr.left, partial, model),
            bound_expression(expr.right, partial, model),
        )
    if isinstance(expr, Sub):
        return intervals.sub(
            bound_expression(expr.left, partial, model),
            bound_expression(expr.right, partial, model),
        )
    if isinstance(expr, Mul):
        return intervals.mul(
            bound_expression(expr.left, partial, model),
            bound_expression(expr.right, partial, model),
        )
    if isinstance(expr, Div):
        return intervals.div(
            bound_expression(expr.left, partial, model),
            bound_expression(expr.right, partial, model),
        )
    if isinstance(expr, Min):
        return intervals.minimum(bound_expression(arg, partial, model) for arg in expr.args)
    if isinstance(expr, Max):
        return intervals.maximum(bound_expression(arg, partial, model) for arg in expr.args)
    raise TypeError(f"Unknown expression node {type(expr).__name__}")
