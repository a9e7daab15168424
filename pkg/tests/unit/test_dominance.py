"""
Tests for Pareto dominance
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from core.exceptions import LengthMismatch
from pareto.dominance import compare_to_members, dominates

values = st.integers(min_value=-5, max_value=5).map(float)
vectors = st.lists(values, min_size=3, max_size=3).map(tuple)


@given(vectors)
def test_irreflexive(a):
    assert not dominates(a, a)


@given(vectors, vectors)
def test_asymmetric(a, b):
    assert not (dominates(a, b) and dominates(b, a))


@given(vectors, vectors, vectors)
def test_transitive(a, b, c):
    if dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


@given(vectors, vectors)
def test_member_comparison_matches_pairwise(a, b):
    blocked, beaten = compare_to_members(np.array([a]), np.array(b))
    assert blocked == (dominates(a, b) or a == b)
    assert bool(beaten[0]) == dominates(b, a)


def test_examples():
    assert dominates((1.0, 2.0), (1.0, 3.0))
    assert not dominates((1.0, 3.0), (3.0, 1.0))
    assert not dominates((0.0,), (0.0,))


def test_length_mismatch():
    with pytest.raises(LengthMismatch) as info:
        dominates((1.0, 2.0), (1.0,))
    assert (info.value.expected, info.value.actual) == (2, 1)
