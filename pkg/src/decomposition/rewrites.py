"""
Aggregation Rewrites
Linear-term flattening and derived-property substitution for separable functions
"""

import logging
from typing import Dict, Iterable, List, Optional, Set, Tuple

from core.evaluator import evaluate_bindings
from core.exceptions import NonSeparableFunction
from core.expressions import (
    Add, Constant, Expression, Mul, Neg, Sub, iter_property_refs,
    pretty_print, ref,
)

logger = logging.getLogger(__name__)

# (coefficient, atom)
Term = Tuple[float, Expression]


def _is_constant(expr: Expression) -> bool:
    return not iter_property_refs(expr)


def linear_terms(expr: Expression) -> List[Term]:
    """
    Flatten sums, differences, negations and constant scaling

    Anything else (products of properties, quotients, min/max) is an atom.
    Equal atoms are merged, keeping the position of the first one.

    Args:
        expr: Expression tree

    Returns:
        List of (coefficient, atom)
    """
    raw: List[Term] = []

    def collect(node: Expression, scale: float) -> None:
        if isinstance(node, Add):
            collect(node.left, scale)
            collect(node.right, scale)
        elif isinstance(node, Sub):
            collect(node.left, scale)
            collect(node.right, -scale)
        elif isinstance(node, Neg):
            collect(node.child, -scale)
        elif isinstance(node, Mul) and _is_constant(node.left) and not _is_constant(node.right):
            collect(node.right, scale * evaluate_bindings(node.left, {}))
        elif isinstance(node, Mul) and _is_constant(node.right) and not _is_constant(node.left):
            collect(node.left, scale * evaluate_bindings(node.right, {}))
        elif _is_constant(node):
            raw.append((scale * evaluate_bindings(node, {}), Constant(1.0)))
        else:
            raw.append((scale, node))

    collect(expr, 1.0)

    merged: Dict[str, List] = {}
    for coefficient, atom in raw:
        key = pretty_print(atom)
        if key in merged:
            merged[key][0] += coefficient
        else:
            merged[key] = [coefficient, atom]
    return [(c, a) for c, a in merged.values() if c != 0.0]


def term_key(atom: Expression) -> str:
    return pretty_print(atom)


def term_expression(coefficient: float, atom: Expression) -> Expression:
    if isinstance(atom, Constant) and atom.value == 1.0:
        return Constant(coefficient)
    if coefficient == 1.0:
        return atom
    if coefficient == -1.0:
        return Neg(atom)
    return Mul(Constant(coefficient), atom)


def build_sum(terms: Iterable[Term]) -> Expression:
    """Left-associated sum of scaled atoms; empty gives Constant(0)"""
    total: Optional[Expression] = None
    for coefficient, atom in terms:
        term = term_expression(coefficient, atom)
        total = term if total is None else Add(total, term)
    return total if total is not None else Constant(0.0)


def split_terms(
    terms: List[Term],
    members: Set[str],
) -> Tuple[List[Term], List[Term], List[Term]]:
    """Partition terms into (subsystem-only, outside-only, mixed)"""
    inside, outside, mixed = [], [], []
    for coefficient, atom in terms:
        touched = {k.variable_name for k in iter_property_refs(atom)}
        if not touched or not (touched & members):
            outside.append((coefficient, atom))
        elif touched <= members:
            inside.append((coefficient, atom))
        else:
            mixed.append((coefficient, atom))
    return inside, outside, mixed


def apply_rewrites(
    function_id: str,
    expr: Expression,
    members: Set[str],
    derived: List[Tuple[str, List[Term]]],
    aggregate_name: str,
) -> Expression:
    """
    Substitute derived properties into one separable function

    Each derived definition must match a disjoint group of the function's
    subsystem terms up to one common scale factor. Unmatched subsystem
    terms stay as they are.

    Args:
        function_id: Function id, for error messages
        expr: Function expression
        members: Subsystem variable names
        derived: (derived name, definition terms) to apply
        aggregate_name: Variable name of the aggregate

    Returns:
        Rewritten expression referencing aggregate_name.<derived>

    Raises:
        NonSeparableFunction: A term mixes subsystem and outside properties,
            or a definition does not match the function's terms
    """
    terms = linear_terms(expr)
    inside, _, mixed = split_terms(terms, members)
    if mixed:
        raise NonSeparableFunction(
            f"'{function_id}' has terms mixing subsystem and outside properties: "
            + ", ".join(pretty_print(atom) for _, atom in mixed)
        )

    available = {term_key(atom): coefficient for coefficient, atom in inside}
    group_of: Dict[str, int] = {}
    scales: List[float] = []
    for index, (name, definition) in enumerate(derived):
        ratios = set()
        for coefficient, atom in definition:
            key = term_key(atom)
            if key not in available or key in group_of:
                raise NonSeparableFunction(
                    f"Derived '{name}' term '{key}' does not occur in '{function_id}'"
                )
            ratios.add(available[key] / coefficient)
            group_of[key] = index
        if len(ratios) != 1:
            raise NonSeparableFunction(
                f"Derived '{name}' is not proportional to its terms in '{function_id}'"
            )
        scales.append(ratios.pop())

    rebuilt: List[Term] = []
    emitted: Set[int] = set()
    for coefficient, atom in terms:
        group = group_of.get(term_key(atom))
        if group is None:
            rebuilt.append((coefficient, atom))
        elif group not in emitted:
            emitted.add(group)
            rebuilt.append((scales[group], ref(aggregate_name, derived[group][0])))

    logger.debug(f"Rewrote '{function_id}' with {[name for name, _ in derived]}")
    return build_sum(rebuilt)


def default_definition(
    expr: Expression,
    members: Set[str],
    claimed: Set[str],
) -> List[Term]:
    """Subsystem-only terms of a function not already claimed by explicit definitions"""
    inside, _, _ = split_terms(linear_terms(expr), members)
    return [(c, a) for c, a in inside if term_key(a) not in claimed]

