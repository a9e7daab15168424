"""
Tests for expression trees and their printing
"""

import pytest

from core.expressions import (
    Add, Constant, Div, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
    iter_property_refs, pretty_print, ref, referenced_variables, sum_of, transform,
)
from catalogs.model_parser import parse_expression


class TestPropertyKey:
    def test_str_and_parse(self):
        key = PropertyKey.parse("M.voltage")
        assert key == PropertyKey("M", "voltage")
        assert str(key) == "M.voltage"

    def test_empty_names_rejected(self):
        with pytest.raises(ValueError):
            PropertyKey("", "voltage")
        with pytest.raises(ValueError):
            PropertyKey("M", "")

    def test_parse_needs_dot(self):
        with pytest.raises(ValueError):
            PropertyKey.parse("voltage")


class TestConstruction:
    def test_operators_build_nodes(self):
        expr = 4 * (ref("M", "voltage") * ref("M", "current")) - 1
        assert isinstance(expr, Sub)
        assert isinstance(expr.left, Mul)
        assert expr.left.left == Constant(4.0)

    def test_nodes_are_hashable_and_equal_by_value(self):
        a = ref("B", "mass") + ref("M", "mass")
        b = ref("B", "mass") + ref("M", "mass")
        assert a == b
        assert len({a, b}) == 1

    def test_min_needs_arguments(self):
        with pytest.raises(ValueError):
            Min(())

    def test_sum_of(self):
        assert sum_of([]) == Constant(0.0)
        total = sum_of([ref("A", "x"), ref("B", "x"), ref("C", "x")])
        assert total == Add(Add(ref("A", "x"), ref("B", "x")), ref("C", "x"))


class TestTraversal:
    def test_iter_property_refs_keeps_repeats_in_order(self):
        expr = ref("M", "mass") * ref("P", "mass") + ref("M", "mass")
        assert iter_property_refs(expr) == [
            PropertyKey("M", "mass"), PropertyKey("P", "mass"), PropertyKey("M", "mass"),
        ]

    def test_referenced_variables(self):
        expr = Max((ref("A", "x"), Neg(ref("B", "y")), Constant(3)))
        assert referenced_variables(expr) == {"A", "B"}

    def test_transform_replaces_leaves(self):
        expr = ref("A", "x") / ref("B", "y")
        renamed = transform(expr, lambda node: ref("Z", node.key.property_name))
        assert renamed == Div(ref("Z", "x"), ref("Z", "y"))


class TestPrettyPrint:
    @pytest.mark.parametrize("text", [
        "4 * (M.voltage * M.current)",
        "A.x - (B.y - C.z)",
        "A.x / (B.y * C.z)",
        "-(A.x + B.y)",
        "min(A.x, 3) - max(B.y, 2.5)",
        "A.x * (-2)",
    ])
    def test_reparse_gives_same_tree(self, text):
        expr = parse_expression(text)
        assert parse_expression(pretty_print(expr)) == expr

    def test_integral_constants_print_without_fraction(self):
        assert pretty_print(Constant(7.0)) == "7"
        assert pretty_print(Constant(0.5)) == "0.5"

    def test_left_associative_chain_has_no_parentheses(self):
        expr = Sub(Sub(ref("A", "x"), ref("B", "x")), ref("C", "x"))
        assert pretty_print(expr) == "A.x - B.x - C.x"

    def test_str_uses_pretty_print(self):
        assert str(PropertyRef(PropertyKey("S", "velocity"))) == "S.velocity"
