"""
Tests for property classification and subsystem certification
"""

import pytest

from core.exceptions import EnumerationCapExceeded, UnknownProperty
from core.expressions import PropertyKey, ref
from core.system_models import Catalog, Direction, Objective, PolarityOverride, SystemModel
from consistency.classifier import (
    audit_overrides, classify_all, classify_property, consistency_report,
    is_fully_consistent, verify_polarity_exhaustive,
)
from consistency.graph_models import ClassificationKind, Polarity


def _cancelling_model(overrides=()):
    """Objective X.a - X.a + Y.b couples X and Y"""
    xs = Catalog.from_rows("X", ["a"], [("x1", [1.0]), ("x2", [2.0]), ("x3", [5.0])])
    ys = Catalog.from_rows("Y", ["b"], [("y1", [1.0]), ("y2", [3.0])])
    return SystemModel(
        catalogs={"X": xs, "Y": ys},
        objectives=[Objective(name="diff", expr=ref("X", "a") - ref("X", "a") + ref("Y", "b"))],
        polarity_overrides=list(overrides),
    )


class TestClassifyProperty:
    @pytest.mark.parametrize("key, kind", [
        (PropertyKey("M", "current"), ClassificationKind.INCONSISTENT),
        (PropertyKey("M", "voltage"), ClassificationKind.CONSISTENT_MIN),
        (PropertyKey("B", "current"), ClassificationKind.CONSISTENT_MAX),
        (PropertyKey("B", "voltage"), ClassificationKind.CONSISTENT_MAX),
        (PropertyKey("B", "mass"), ClassificationKind.CONSISTENT_MIN),
    ])
    def test_battery_model(self, battery_model, key, kind):
        assert classify_property(battery_model, key).kind == kind

    def test_witnesses_name_each_function(self, battery_model):
        verdict = classify_property(battery_model, PropertyKey("M", "current"))
        assert verdict.witnesses == [
            ("constraint:power:lhs", Polarity.MONOTONE),
            ("objective:current", Polarity.MONOTONE),
        ]

    def test_unconstrained_property(self, battery_model):
        verdict = classify_property(battery_model, PropertyKey("M", "cost"))
        assert verdict.kind == ClassificationKind.CONSISTENT_MIN
        assert not verdict.constrained
        assert verdict.witnesses == []

    def test_unknown_property(self, battery_model):
        with pytest.raises(UnknownProperty):
            classify_property(battery_model, PropertyKey("M", "torque"))

    def test_equality_makes_inconsistent(self, quad_model):
        verdict = classify_property(quad_model, PropertyKey("VR", "out_voltage"))
        assert verdict.kind == ClassificationKind.INCONSISTENT

    def test_quadcopter_velocity_is_inconsistent(self, quad_model):
        verdict = classify_property(quad_model, PropertyKey("S", "velocity"))
        assert verdict.kind == ClassificationKind.INCONSISTENT
        assert verdict.constrained
        assert set(verdict.witnesses) == {
            ("constraint:frame_speed:lhs", Polarity.MONOTONE),
            ("constraint:camera_rate:lhs", Polarity.MONOTONE),
            ("constraint:compute_rate:lhs", Polarity.MONOTONE),
            ("objective:velocity", Polarity.MONOTONE),
        }

    def test_classify_all_in_model_order(self, battery_model):
        keys = [c.property for c in classify_all(battery_model)]
        assert keys[0].variable_name == "M"
        assert keys[-1].variable_name == "B"
        assert PropertyKey("M", "cost") not in keys


class TestFullConsistency:
    def test_motor_subsystem_is_consistent(self, battery_model):
        consistent, violations = is_fully_consistent(battery_model, ["M"])
        assert consistent
        assert violations == []

    def test_cancelling_term_blocks_certification(self):
        consistent, violations = is_fully_consistent(_cancelling_model(), ["X"])
        assert not consistent
        assert violations == [("objective:diff", "X.a", Polarity.MIXED)]

    def test_declared_constant_restores_certification(self):
        override = PolarityOverride(
            function_id="objective:diff", variable_name="X", property_name="a", polarity="constant",
        )
        consistent, _ = is_fully_consistent(_cancelling_model([override]), ["X"])
        assert consistent

    def test_quadcopter_regulator_subsystem_is_not_consistent(self, quad_model):
        consistent, violations = is_fully_consistent(quad_model, ["VR"])
        assert not consistent
        assert any(fid == "constraint:logic_supply:lhs" for fid, _, _ in violations)


class TestExhaustiveVerification:
    def test_cancelling_term_is_constant(self):
        model = _cancelling_model()
        assert verify_polarity_exhaustive(model, "objective:diff", PropertyKey("X", "a")) == Polarity.CONSTANT
        assert verify_polarity_exhaustive(model, "objective:diff", PropertyKey("Y", "b")) == Polarity.MONOTONE

    def test_square_over_signed_range_is_mixed(self):
        xs = Catalog.from_rows("X", ["a"], [("x1", [-2.0]), ("x2", [0.0]), ("x3", [3.0])])
        model = SystemModel(
            catalogs={"X": xs},
            objectives=[Objective(name="sq", expr=ref("X", "a") * ref("X", "a"))],
        )
        assert verify_polarity_exhaustive(model, "objective:sq", PropertyKey("X", "a")) == Polarity.MIXED

    def test_cap(self):
        with pytest.raises(EnumerationCapExceeded) as info:
            verify_polarity_exhaustive(_cancelling_model(), "objective:diff", PropertyKey("X", "a"), cap=2)
        assert info.value.cap == 2


class TestOverrideAudit:
    def test_agreeing_override(self):
        override = PolarityOverride(
            function_id="objective:diff", variable_name="X", property_name="a", polarity="constant",
        )
        [audit] = audit_overrides(_cancelling_model([override]))
        assert audit.agrees
        assert audit.verified == Polarity.CONSTANT

    def test_contradicted_override(self):
        override = PolarityOverride(
            function_id="objective:diff", variable_name="Y", property_name="b", polarity="antitone",
        )
        [audit] = audit_overrides(_cancelling_model([override]))
        assert audit.agrees is False
        assert audit.verified == Polarity.MONOTONE

    def test_over_cap_is_reported(self):
        override = PolarityOverride(
            function_id="objective:diff", variable_name="X", property_name="a", polarity="constant",
        )
        [audit] = audit_overrides(_cancelling_model([override]), cap=1)
        assert audit.verified is None
        assert "exceeds cap" in audit.note


def test_report_dict(battery_model):
    report = consistency_report(battery_model, {"motor": ["M"], "battery": ["B"]})
    data = report.to_dict()
    assert set(data) == {"properties", "subsystems", "overrides"}
    assert [s["name"] for s in data["subsystems"]] == ["motor", "battery"]
    assert all(s["fully_consistent"] for s in data["subsystems"])
    current = next(p for p in data["properties"] if p["property"] == "M.current")
    assert current["kind"] == "inconsistent"


def test_maximize_objective_direction(battery_model):
    flipped = battery_model.replace(objectives=[
        Objective(name="current", expr=ref("M", "current"), direction=Direction.MINIMIZE),
    ])
    assert classify_property(flipped, PropertyKey("M", "current")).kind == ClassificationKind.CONSISTENT_MIN
