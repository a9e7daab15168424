"""
Polarity Analysis
Sound sign propagation deciding whether a function is monotone in a property
"""

from typing import Dict, Iterable, Mapping, Tuple, Union

from core import intervals
from core.exceptions import DivisionByZero, IntervalDivisionByZero
from core.expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
)
from core.intervals import Interval
from consistency.graph_models import Polarity, ValueRange

RangeMap = Mapping[PropertyKey, Interval]


def join(a: Polarity, b: Polarity) -> Polarity:
    """Polarity of a sum of two terms"""
    if a == Polarity.CONSTANT:
        return b
    if b == Polarity.CONSTANT or a == b:
        return a
    return Polarity.MIXED


def scale(polarity: Polarity, factor_sign: int) -> Polarity:
    """Polarity of a term multiplied by a factor of known sign (0 = unknown)"""
    if polarity == Polarity.CONSTANT:
        return polarity
    if factor_sign > 0:
        return polarity
    if factor_sign < 0:
        return polarity.flipped()
    return Polarity.MIXED


def as_range_map(ranges: Union[RangeMap, Iterable[ValueRange]]) -> Dict[PropertyKey, Interval]:
    if isinstance(ranges, Mapping):
        return dict(ranges)
    return {r.property: r.interval for r in ranges}


def _analyse(expr: Expression, target: PropertyKey, ranges: RangeMap) -> Tuple[Polarity, Interval]:
    if isinstance(expr, Constant):
        return Polarity.CONSTANT, intervals.point(expr.value)

    if isinstance(expr, PropertyRef):
        value_range = ranges.get(expr.key, intervals.UNBOUNDED)
        if expr.key == target:
            return Polarity.MONOTONE, value_range
        return Polarity.CONSTANT, value_range

    if isinstance(expr, Neg):
        polarity, value = _analyse(expr.child, target, ranges)
        return polarity.flipped(), intervals.neg(value)

    if isinstance(expr, (Add, Sub)):
        left_pol, left = _analyse(expr.left, target, ranges)
        right_pol, right = _analyse(expr.right, target, ranges)
        if isinstance(expr, Add):
            return join(left_pol, right_pol), intervals.add(left, right)
        return join(left_pol, right_pol.flipped()), intervals.sub(left, right)

    if isinstance(expr, Mul):
        left_pol, left = _analyse(expr.left, target, ranges)
        right_pol, right = _analyse(expr.right, target, ranges)
        # l(b)r(b) - l(a)r(a) = (l(b) - l(a)) r(b) + l(a) (r(b) - r(a))
        polarity = join(
            scale(left_pol, intervals.sign(right)),
            scale(right_pol, intervals.sign(left)),
        )
        return polarity, intervals.mul(left, right)

    if isinstance(expr, Div):
        left_pol, left = _analyse(expr.left, target, ranges)
        right_pol, right = _analyse(expr.right, target, ranges)
        if not (intervals.strictly_positive(right) or intervals.strictly_negative(right)):
            if left_pol == Polarity.CONSTANT and right_pol == Polarity.CONSTANT:
                return Polarity.CONSTANT, intervals.UNBOUNDED
            return Polarity.MIXED, intervals.UNBOUNDED
        # 1/r reverses direction on either side of zero and keeps the sign of r
        inverse = intervals.reciprocal(right)
        polarity = join(
            scale(left_pol, intervals.sign(inverse)),
            scale(right_pol.flipped(), intervals.sign(left)),
        )
        try:
            value = intervals.div(left, right)
        except (IntervalDivisionByZero, DivisionByZero):
            value = intervals.UNBOUNDED
        return polarity, value

    if isinstance(expr, (Min, Max)):
        results = [_analyse(arg, target, ranges) for arg in expr.args]
        polarity = Polarity.CONSTANT
        for arg_pol, _ in results:
            polarity = join(polarity, arg_pol)
        combine = intervals.minimum if isinstance(expr, Min) else intervals.maximum
        return polarity, combine(value for _, value in results)

    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def polarity(
    expr: Expression,
    target: PropertyKey,
    ranges: Union[RangeMap, Iterable[ValueRange]],
) -> Polarity:
    """
    Certify the polarity of an expression in one property

    Monotone or Antitone is returned only when interval sign propagation
    proves it for every combination of values inside the given ranges;
    anything uncertain comes back Mixed. Properties missing from `ranges`
    are treated as unbounded.

    Args:
        expr: Function expression
        target: Property whose effect is analysed
        ranges: Value range per property

    Returns:
        Polarity of expr in target
    """
    result, _ = _analyse(expr, target, as_range_map(ranges))
    return result


def value_interval(expr: Expression, ranges: Union[RangeMap, Iterable[ValueRange]]) -> Interval:
    """Interval enclosure of an expression over the given ranges"""
    # target that cannot occur, so only the value half is of interest
    _, value = _analyse(expr, PropertyKey("\0", "\0"), as_range_map(ranges))
    return value
