"""
Compiled Model
Slot-indexed interval closures and static orders prepared once per model
"""

import logging
import math
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from core import intervals
from core.evaluator import EQUALITY_TOLERANCE, check_constraint
from core.exceptions import DivisionByZero, IntervalDivisionByZero
from core.expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
    iter_property_refs,
)
from core.intervals import Interval
from core.system_models import Constraint, Direction, Relation, SystemModel
from solver.solver_models import Propagation, SolverConfig, ValueOrder, VariableOrder

logger = logging.getLogger(__name__)

# Reads (lo, hi) slot arrays, returns an enclosure of the expression
BoundFn = Callable[[List[float], List[float]], Interval]


def compile_expression(expr: Expression, slot_of: Dict[PropertyKey, int]) -> BoundFn:
    """
    Turn an expression into an interval closure over slot arrays

    With every slot degenerate the closure reproduces evaluate() exactly.
    """
    if isinstance(expr, Constant):
        value = (expr.value, expr.value)
        return lambda lo, hi: value
    if isinstance(expr, PropertyRef):
        slot = slot_of[expr.key]
        return lambda lo, hi: (lo[slot], hi[slot])
    if isinstance(expr, Neg):
        child = compile_expression(expr.child, slot_of)
        return lambda lo, hi: intervals.neg(child(lo, hi))
    if isinstance(expr, (Add, Sub, Mul)):
        left = compile_expression(expr.left, slot_of)
        right = compile_expression(expr.right, slot_of)
        op = {Add: intervals.add, Sub: intervals.sub, Mul: intervals.mul}[type(expr)]
        return lambda lo, hi: op(left(lo, hi), right(lo, hi))
    if isinstance(expr, Div):
        left = compile_expression(expr.left, slot_of)
        right = compile_expression(expr.right, slot_of)

        def quotient(lo: List[float], hi: List[float]) -> Interval:
            try:
                return intervals.div(left(lo, hi), right(lo, hi))
            except IntervalDivisionByZero:
                return intervals.UNBOUNDED
        return quotient
    if isinstance(expr, (Min, Max)):
        args = [compile_expression(arg, slot_of) for arg in expr.args]
        combine = intervals.minimum if isinstance(expr, Min) else intervals.maximum
        return lambda lo, hi: combine(arg(lo, hi) for arg in args)
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


class CompiledConstraint:
    """Constraint with compiled sides"""

    __slots__ = ("name", "lhs", "rhs", "equality", "tolerance")

    def __init__(self, constraint: Constraint, slot_of: Dict[PropertyKey, int]):
        self.name = constraint.name
        self.lhs = compile_expression(constraint.lhs, slot_of)
        self.rhs = compile_expression(constraint.rhs, slot_of)
        self.equality = constraint.relation == Relation.EQUAL
        self.tolerance = EQUALITY_TOLERANCE

    def violated(self, lo: List[float], hi: List[float]) -> bool:
        """True when no completion can satisfy the constraint"""
        left = self.lhs(lo, hi)
        right = self.rhs(lo, hi)
        if self.equality:
            return left[0] - right[1] > self.tolerance or right[0] - left[1] > self.tolerance
        return left[0] > right[1]


class CompiledModel:
    """
    Search-ready form of a SystemModel

    Holds the unary-filtered domains, one slot per referenced property,
    the static variable order, per-variable value orders, and the
    constraints checked at each depth.
    """

    def __init__(self, model: SystemModel, config: SolverConfig):
        """
        Compile a model

        Args:
            model: Validated system model
            config: Solver configuration
        """
        self.model = model
        self.config = config
        self.variables = model.variable_names
        self.infeasible = False
        self.filtered_tuples = 0

        var_index = {name: i for i, name in enumerate(self.variables)}

        # Constant constraints are decided once
        for constraint in model.constraints:
            if not constraint.variables() and not check_constraint(constraint, {}, model):
                logger.debug(f"Constraint '{constraint.name}' is violated by constants")
                self.infeasible = True

        self.domains: List[List[int]] = [
            list(range(len(model.catalogs[name]))) for name in self.variables
        ]
        if config.propagation == Propagation.BOUNDS_PLUS_UNARY:
            self._filter_unary()
        if any(not domain for domain in self.domains):
            self.infeasible = True

        # Slots
        keys: Dict[PropertyKey, None] = {}
        for constraint in model.constraints:
            for key in constraint.property_refs():
                keys.setdefault(key, None)
        for objective in model.objectives:
            for key in iter_property_refs(objective.expr):
                keys.setdefault(key, None)
        self.slot_keys: List[PropertyKey] = list(keys)
        self.slot_of: Dict[PropertyKey, int] = {key: i for i, key in enumerate(self.slot_keys)}
        self.var_slots: List[List[int]] = [[] for _ in self.variables]
        self.values: List[List[float]] = []
        for slot, key in enumerate(self.slot_keys):
            catalog = model.catalogs[key.variable_name]
            self.var_slots[var_index[key.variable_name]].append(slot)
            self.values.append(catalog.column(key.property_name))

        self.domain_lo: List[float] = []
        self.domain_hi: List[float] = []
        for slot, key in enumerate(self.slot_keys):
            domain = self.domains[var_index[key.variable_name]]
            column = [self.values[slot][c] for c in domain] or [0.0]
            self.domain_lo.append(min(column))
            self.domain_hi.append(max(column))

        # Objectives in canonical minimization space
        self.objectives: List[BoundFn] = []
        for objective in model.objectives:
            expr = objective.expr
            if objective.direction == Direction.MAXIMIZE:
                expr = Neg(expr)
            self.objectives.append(compile_expression(expr, self.slot_of))

        self.order: List[int] = self._variable_order()
        self.value_orders: List[List[int]] = [
            self._value_order(v) for v in range(len(self.variables))
        ]
        self.depth_constraints: List[List[CompiledConstraint]] = self._schedule_constraints(var_index)

        logger.debug(
            f"Compiled model: {len(self.variables)} variables, {len(self.slot_keys)} slots, "
            f"{self.filtered_tuples} tuples filtered"
        )

    def _filter_unary(self) -> None:
        """Drop tuples that violate a constraint over their own variable alone"""
        unary: Dict[str, List[Constraint]] = {}
        for constraint in self.model.constraints:
            touched = constraint.variables()
            if len(touched) == 1:
                unary.setdefault(next(iter(touched)), []).append(constraint)

        for v, name in enumerate(self.variables):
            constraints = unary.get(name)
            if not constraints:
                continue
            catalog = self.model.catalogs[name]
            kept = []
            for c in self.domains[v]:
                assignment = {name: catalog.components[c].component_id}
                if all(check_constraint(k, assignment, self.model) for k in constraints):
                    kept.append(c)
            self.filtered_tuples += len(self.domains[v]) - len(kept)
            self.domains[v] = kept

    def _variable_order(self) -> List[int]:
        indices = list(range(len(self.variables)))
        if self.config.variable_order == VariableOrder.SMALLEST_DOMAIN_FIRST:
            indices.sort(key=lambda v: (len(self.domains[v]), v))
        return indices

    def _value_order(self, v: int) -> List[int]:
        domain = list(self.domains[v])
        if self.config.seed:
            rng = np.random.Generator(np.random.PCG64(self.config.seed + v))
            rank = {c: int(r) for c, r in zip(domain, rng.permutation(len(domain)))}
        else:
            rank = {c: i for i, c in enumerate(domain)}

        if self.config.value_order == ValueOrder.CATALOG_ORDER or not self.objectives:
            return sorted(domain, key=lambda c: rank[c]) if self.config.seed else domain

        primary = self.objectives[0]
        lo = list(self.domain_lo)
        hi = list(self.domain_hi)
        scored: List[Tuple[float, int, int]] = []
        for c in domain:
            self.assign(lo, hi, v, c)
            try:
                bound = primary(lo, hi)[0]
            except DivisionByZero:
                bound = math.inf
            scored.append((bound, rank[c], c))
        scored.sort()
        return [c for _, _, c in scored]

    def _schedule_constraints(self, var_index: Dict[str, int]) -> List[List[CompiledConstraint]]:
        depth_of = {v: d for d, v in enumerate(self.order)}
        schedule: List[List[CompiledConstraint]] = [[] for _ in self.order]
        last = len(self.order) - 1
        for constraint in self.model.constraints:
            touched = constraint.variables()
            if not touched:
                continue
            compiled = CompiledConstraint(constraint, self.slot_of)
            if self.config.propagation == Propagation.NONE:
                schedule[last].append(compiled)
                continue
            for name in touched:
                schedule[depth_of[var_index[name]]].append(compiled)
        return schedule

    def assign(self, lo: List[float], hi: List[float], v: int, component: int) -> None:
        for slot in self.var_slots[v]:
            value = self.values[slot][component]
            lo[slot] = value
            hi[slot] = value

    def release(self, lo: List[float], hi: List[float], v: int) -> None:
        for slot in self.var_slots[v]:
            lo[slot] = self.domain_lo[slot]
            hi[slot] = self.domain_hi[slot]

    def objective_bounds(self, lo: List[float], hi: List[float]) -> List[float]:
        """Lower bounds of the canonical objectives"""
        return [objective(lo, hi)[0] for objective in self.objectives]

    def component_id(self, v: int, component: int) -> str:
        return self.model.catalogs[self.variables[v]].components[component].component_id

    def fresh_bounds(self) -> Tuple[List[float], List[float]]:
        return list(self.domain_lo), list(self.domain_hi)


def lexicographically_blocked(lower: Sequence[float], incumbent: Sequence[float]) -> bool:
    """True when no completion can be lexicographically smaller than the incumbent"""
    for bound, best in zip(lower, incumbent):
        if bound > best:
            return True
        if bound < best:
            return False
    return True


def cut_blocks(lower: Sequence[float], bounds: Sequence[float]) -> bool:
    """True when every disjunct f_i < b_i is disproved by the lower bounds"""
    return all(value >= bound for value, bound in zip(lower, bounds))
