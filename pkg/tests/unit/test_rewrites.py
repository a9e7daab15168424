"""
Tests for linear-term flattening and derived-property substitution
"""

import pytest

from core.exceptions import NonSeparableFunction
from core.expressions import Constant, Mul, ref
from decomposition.rewrites import (
    apply_rewrites, build_sum, default_definition, linear_terms, split_terms, term_key,
)

A, B, C = ref("X", "a"), ref("X", "b"), ref("Y", "c")


class TestLinearTerms:
    def test_scaling_and_merging(self):
        terms = linear_terms(2 * (A + B) - A + 3)
        assert terms == [(1.0, A), (2.0, B), (3.0, Constant(1.0))]

    def test_cancelled_terms_vanish(self):
        assert linear_terms(A - A + B) == [(1.0, B)]

    def test_products_are_atoms(self):
        terms = linear_terms(4 * (A * C) + B / 2)
        assert terms == [(4.0, A * C), (1.0, B / 2)]

    def test_split(self):
        terms = linear_terms(A + C + A * C + 1)
        inside, outside, mixed = split_terms(terms, {"X"})
        assert inside == [(1.0, A)]
        assert outside == [(1.0, C), (1.0, Constant(1.0))]
        assert mixed == [(1.0, A * C)]

    def test_build_sum(self):
        assert build_sum([]) == Constant(0.0)
        assert build_sum([(1.0, A), (-1.0, B), (3.0, C)]) == A + -B + Mul(Constant(3.0), C)


class TestApplyRewrites:
    def test_substitutes_derived_property(self):
        rewritten = apply_rewrites("objective:m", A + B + C, {"X"}, [("xm", [(1.0, A), (1.0, B)])], "agg")
        assert rewritten == ref("agg", "xm") + C

    def test_common_scale_factor(self):
        rewritten = apply_rewrites(
            "objective:m", 4 * (A + B) + C, {"X"}, [("xm", [(1.0, A), (1.0, B)])], "agg",
        )
        assert rewritten == Mul(Constant(4.0), ref("agg", "xm")) + C

    def test_unmatched_terms_stay(self):
        rewritten = apply_rewrites("objective:m", A + B + C, {"X"}, [("xa", [(1.0, A)])], "agg")
        assert rewritten == ref("agg", "xa") + B + C

    def test_not_proportional(self):
        with pytest.raises(NonSeparableFunction):
            apply_rewrites("objective:m", 2 * A + B, {"X"}, [("xm", [(1.0, A), (1.0, B)])], "agg")

    def test_mixed_term(self):
        with pytest.raises(NonSeparableFunction):
            apply_rewrites("objective:m", A * C + B, {"X"}, [("xb", [(1.0, B)])], "agg")

    def test_missing_term(self):
        with pytest.raises(NonSeparableFunction):
            apply_rewrites("objective:m", A + C, {"X"}, [("xm", [(1.0, A), (1.0, B)])], "agg")


def test_default_definition():
    assert default_definition(A + B + C, {"X"}, set()) == [(1.0, A), (1.0, B)]
    assert default_definition(A + B + C, {"X"}, {term_key(A)}) == [(1.0, B)]
