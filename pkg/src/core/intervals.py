"""
Interval Arithmetic
Closed-interval operations used for sign propagation and bound pruning
"""

import math
from typing import Iterable, Tuple

from .exceptions import DivisionByZero, IntervalDivisionByZero

Interval = Tuple[float, float]

UNBOUNDED: Interval = (-math.inf, math.inf)


def point(value: float) -> Interval:
    return (value, value)


def _hull(values: Tuple[float, ...]) -> Interval:
    # inf * 0 and inf / inf give nan; nothing can be certified then
    if any(math.isnan(v) for v in values):
        return UNBOUNDED
    return (min(values), max(values))


def add(x: Interval, y: Interval) -> Interval:
    lo, hi = x[0] + y[0], x[1] + y[1]
    if math.isnan(lo) or math.isnan(hi):
        return UNBOUNDED
    return (lo, hi)


def sub(x: Interval, y: Interval) -> Interval:
    return add(x, neg(y))


def neg(x: Interval) -> Interval:
    return (-x[1], -x[0])


def mul(x: Interval, y: Interval) -> Interval:
    if x[0] == x[1] and y[0] == y[1]:
        product = x[0] * y[0]
        return (product, product)
    return _hull((x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]))


def div(x: Interval, y: Interval) -> Interval:
    """
    Interval quotient

    Quotients are formed directly (not through a reciprocal) so a degenerate
    interval reproduces exact evaluation bit for bit.

    Raises:
        DivisionByZero: The denominator is exactly zero
        IntervalDivisionByZero: The denominator interval contains zero
    """
    if y[0] <= 0.0 <= y[1]:
        if y[0] == y[1]:
            raise DivisionByZero("Division by zero")
        raise IntervalDivisionByZero(f"Denominator interval [{y[0]}, {y[1]}] contains zero")
    if x[0] == x[1] and y[0] == y[1]:
        quotient = x[0] / y[0]
        return (quotient, quotient)
    return _hull((x[0] / y[0], x[0] / y[1], x[1] / y[0], x[1] / y[1]))


def reciprocal(y: Interval) -> Interval:
    """1 / y for an interval that excludes zero"""
    return div((1.0, 1.0), y)


def minimum(intervals: Iterable[Interval]) -> Interval:
    items = list(intervals)
    return (min(i[0] for i in items), min(i[1] for i in items))


def maximum(intervals: Iterable[Interval]) -> Interval:
    items = list(intervals)
    return (max(i[0] for i in items), max(i[1] for i in items))


def sign(x: Interval) -> int:
    """+1 if x >= 0 everywhere, -1 if x <= 0 everywhere, 0 otherwise"""
    if x[0] >= 0.0:
        return 1
    if x[1] <= 0.0:
        return -1
    return 0


def strictly_positive(x: Interval) -> bool:
    return x[0] > 0.0


def strictly_negative(x: Interval) -> bool:
    return x[1] < 0.0


def contains(x: Interval, value: float) -> bool:
    return x[0] <= value <= x[1]
