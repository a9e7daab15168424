"""
Tests for expression bounds over partial assignments
"""

import itertools

import pytest
from hypothesis import given, strategies as st

from core import intervals
from core.evaluator import evaluate
from core.exceptions import IntervalDivisionByZero
from core.expressions import Constant, Max, Min, ref
from core.system_models import Catalog, Objective, SystemModel
from solver.bounds import bound_expression

MODEL = SystemModel(
    catalogs={
        "M": Catalog.from_rows("M", ["current", "mass"], [
            ("m1", [2.0, 30.0]), ("m2", [4.0, 50.0]), ("m3", [3.5, 42.0]),
        ]),
        "B": Catalog.from_rows("B", ["current", "mass"], [
            ("b1", [7.0, 100.0]), ("b2", [10.0, 160.0]),
        ]),
        "T": Catalog.from_rows("T", ["offset"], [("t1", [-3.0]), ("t2", [1.5])]),
    },
    objectives=[Objective(name="mass", expr=ref("M", "mass") + ref("B", "mass"))],
)

EXPRESSIONS = [
    4 * ref("M", "current") - ref("B", "current"),
    ref("B", "current") / ref("M", "current"),
    ref("M", "mass") * ref("T", "offset") + ref("B", "mass"),
    Min((ref("M", "mass"), ref("B", "mass") / 4)) - Max((ref("T", "offset"), Constant(0))),
    -(ref("M", "current") * ref("M", "current")),
]


@st.composite
def partial_assignments(draw):
    partial = {}
    for name, catalog in MODEL.catalogs.items():
        choice = draw(st.sampled_from([None] + [c.component_id for c in catalog.components]))
        if choice is not None:
            partial[name] = choice
    return partial


def completions(partial):
    names = MODEL.variable_names
    options = [
        [partial[name]] if name in partial else [c.component_id for c in MODEL.catalog(name).components]
        for name in names
    ]
    for combo in itertools.product(*options):
        yield dict(zip(names, combo))


@given(partial_assignments(), st.sampled_from(EXPRESSIONS))
def test_bounds_enclose_every_completion(partial, expr):
    interval = bound_expression(expr, partial, MODEL)
    for assignment in completions(partial):
        value = evaluate(expr, assignment, MODEL)
        assert interval[0] - 1e-9 <= value <= interval[1] + 1e-9


def test_complete_assignment_is_exact():
    expr = EXPRESSIONS[0]
    assignment = {"M": "m2", "B": "b1", "T": "t1"}
    assert bound_expression(expr, assignment, MODEL) == intervals.point(evaluate(expr, assignment, MODEL))


def test_unassigned_reference_uses_catalog_range():
    assert bound_expression(ref("M", "mass"), {}, MODEL) == (30.0, 50.0)


def test_denominator_spanning_zero():
    with pytest.raises(IntervalDivisionByZero):
        bound_expression(Constant(1) / ref("T", "offset"), {}, MODEL)
