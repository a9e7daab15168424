"""
Dominance
Pareto dominance between canonical (minimization) objective vectors
"""

from typing import Sequence, Tuple

import numpy as np

from core.exceptions import LengthMismatch


def check_lengths(a: Sequence[float], b: Sequence[float]) -> None:
    if len(a) != len(b):
        raise LengthMismatch(len(a), len(b))


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """
    True iff a is no worse than b everywhere and strictly better somewhere

    Raises:
        LengthMismatch: Vectors differ in length
    """
    check_lengths(a, b)
    strictly_better = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strictly_better = True
    return strictly_better


def compare_to_members(members: np.ndarray, candidate: np.ndarray) -> Tuple[bool, np.ndarray]:
    """
    Compare a candidate against every row of a member matrix

    Args:
        members: (n, k) array of member vectors
        candidate: (k,) candidate vector

    Returns:
        (blocked, beaten): blocked is True when some member dominates or
        equals the candidate; beaten flags the members the candidate dominates
    """
    no_worse = np.all(members <= candidate, axis=1)
    blocked = bool(np.any(no_worse))
    beaten = np.all(candidate <= members, axis=1) & np.any(candidate < members, axis=1)
    return blocked, beaten
