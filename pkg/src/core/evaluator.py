"""
Expression Evaluation
Exact evaluation of expressions, constraints and objective vectors
"""

from typing import List, Mapping

from .exceptions import DivisionByZero, UnresolvedProperty
from .expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
)
from .system_models import Assignment, Constraint, Direction, Relation, SystemModel

EQUALITY_TOLERANCE = 1e-9


def evaluate(expr: Expression, assignment: Mapping[str, str], model: SystemModel) -> float:
    """
    Evaluate an expression for an assignment

    Args:
        expr: Expression tree
        assignment: Variable name -> component id
        model: Model owning the catalogs

    Returns:
        Value of the expression

    Raises:
        UnresolvedProperty: A referenced variable is unassigned
        DivisionByZero: A denominator evaluated to exactly zero
    """
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, PropertyRef):
        key = expr.key
        component_id = assignment.get(key.variable_name)
        if component_id is None:
            raise UnresolvedProperty(key.variable_name, key.property_name)
        return model.lookup(key, component_id)
    if isinstance(expr, Neg):
        return -evaluate(expr.child, assignment, model)
    if isinstance(expr, Add):
        return evaluate(expr.left, assignment, model) + evaluate(expr.right, assignment, model)
    if isinstance(expr, Sub):
        return evaluate(expr.left, assignment, model) - evaluate(expr.right, assignment, model)
    if isinstance(expr, Mul):
        return evaluate(expr.left, assignment, model) * evaluate(expr.right, assignment, model)
    if isinstance(expr, Div):
        numerator = evaluate(expr.left, assignment, model)
        denominator = evaluate(expr.right, assignment, model)
        if denominator == 0.0:
            raise DivisionByZero(f"Division by zero in '{expr}'")
        return numerator / denominator
    if isinstance(expr, Min):
        return min(evaluate(arg, assignment, model) for arg in expr.args)
    if isinstance(expr, Max):
        return max(evaluate(arg, assignment, model) for arg in expr.args)
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def evaluate_bindings(expr: Expression, bindings: Mapping[PropertyKey, float]) -> float:
    """
    Evaluate with property values given directly instead of through catalogs

    Raises:
        UnresolvedProperty: A referenced property has no binding
        DivisionByZero: A denominator evaluated to exactly zero
    """
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, PropertyRef):
        try:
            return bindings[expr.key]
        except KeyError:
            raise UnresolvedProperty(expr.key.variable_name, expr.key.property_name) from None
    if isinstance(expr, Neg):
        return -evaluate_bindings(expr.child, bindings)
    if isinstance(expr, Add):
        return evaluate_bindings(expr.left, bindings) + evaluate_bindings(expr.right, bindings)
    if isinstance(expr, Sub):
        return evaluate_bindings(expr.left, bindings) - evaluate_bindings(expr.right, bindings)
    if isinstance(expr, Mul):
        return evaluate_bindings(expr.left, bindings) * evaluate_bindings(expr.right, bindings)
    if isinstance(expr, Div):
        denominator = evaluate_bindings(expr.right, bindings)
        if denominator == 0.0:
            raise DivisionByZero(f"Division by zero in '{expr}'")
        return evaluate_bindings(expr.left, bindings) / denominator
    if isinstance(expr, Min):
        return min(evaluate_bindings(arg, bindings) for arg in expr.args)
    if isinstance(expr, Max):
        return max(evaluate_bindings(arg, bindings) for arg in expr.args)
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def constraint_holds(
    relation: Relation,
    lhs: float,
    rhs: float,
    tolerance: float = EQUALITY_TOLERANCE,
) -> bool:
    """Compare already evaluated constraint sides"""
    if relation == Relation.EQUAL:
        return abs(lhs - rhs) <= tolerance
    return lhs <= rhs


def check_constraint(
    constraint: Constraint,
    assignment: Mapping[str, str],
    model: SystemModel,
    tolerance: float = EQUALITY_TOLERANCE,
) -> bool:
    """
    Check one constraint

    LessOrEqual is an exact comparison; Equal uses an absolute tolerance.

    Returns:
        True if the constraint is satisfied
    """
    lhs = evaluate(constraint.lhs, assignment, model)
    rhs = evaluate(constraint.rhs, assignment, model)
    return constraint_holds(constraint.relation, lhs, rhs, tolerance)


def is_feasible(assignment: Mapping[str, str], model: SystemModel) -> bool:
    """True if every model constraint holds"""
    return all(check_constraint(c, assignment, model) for c in model.constraints)


def objective_vector(model: SystemModel, assignment: Mapping[str, str]) -> List[float]:
    """
    Objective values in canonical minimization space

    Maximize objectives are negated so that smaller is always better.

    Returns:
        One value per objective, in model order
    """
    vector = []
    for objective in model.objectives:
        value = evaluate(objective.expr, assignment, model)
        vector.append(-value if objective.direction == Direction.MAXIMIZE else value)
    return vector


def reported_vector(model: SystemModel, canonical: List[float]) -> List[float]:
    """Undo the canonical negation for reporting"""
    return [
        -value if objective.direction == Direction.MAXIMIZE else value
        for objective, value in zip(model.objectives, canonical)
    ]


def metric_values(model: SystemModel, assignment: Assignment) -> dict:
    """Evaluate every metric of the model"""
    return {metric.name: evaluate(metric.expr, assignment, model) for metric in model.metrics}
