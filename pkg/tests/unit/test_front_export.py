"""
Tests for front files and aggregate catalogs on disk
"""

import pytest
import yaml

from core.exceptions import CatalogIOError
from decomposition.subsystem_models import SubsystemSpec
from decomposition.subsystem_optimizer import build_aggregate
from catalogs.front_export import (
    FrontExporter, export_front, load_front, read_aggregate, sidecar_path, write_aggregate,
)
from pareto.front_engine import compute_front
from pareto.front_models import ParetoFront, ParetoPoint


def test_sidecar_path(tmp_path):
    assert sidecar_path(tmp_path / "front.csv") == tmp_path / "front.provenance.yaml"


def test_toy_front_file(tmp_path, toy_model):
    path = export_front(compute_front(toy_model), tmp_path / "front.csv", toy_model)
    assert path.read_text(encoding="utf-8") == "cost,mass,A,B\n1,3,a1,b1\n3,1,a2,b1\n"
    meta = yaml.safe_load(sidecar_path(path).read_text(encoding="utf-8"))
    assert meta["status"] == "optimal"
    assert meta["variables"] == ["A", "B"]
    assert meta["points"][0]["assignment"] == {"A": "a1", "B": "b1"}


def test_maximized_objectives_and_metrics(tmp_path, battery_model):
    front = compute_front(battery_model)
    table = FrontExporter().front_table(front, battery_model)
    assert list(table.columns) == ["current", "mass", "M", "B", "metric:cost"]
    assert table.iloc[0].tolist() == ["2", "190", "m-small", "b-strong", "45"]

    path = export_front(front, tmp_path / "battery.csv", battery_model)
    loaded = load_front(path)
    assert loaded.vectors() == {(-2.0, 190.0)}
    assert loaded.points[0].assignment == {"M": "m-small", "B": "b-strong"}


def test_infeasible_front(tmp_path, toy_model):
    path = export_front(ParetoFront.for_model(toy_model), tmp_path / "empty.csv", toy_model)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == ["# status: infeasible", "cost,mass,A,B"]
    assert yaml.safe_load(sidecar_path(path).read_text(encoding="utf-8"))["status"] == "infeasible"
    assert len(load_front(path)) == 0


def test_export_is_byte_identical(tmp_path, toy_model):
    front = compute_front(toy_model)
    first = export_front(front, tmp_path / "a" / "front.csv", toy_model)
    second = export_front(front, tmp_path / "b" / "front.csv", toy_model)
    assert first.read_bytes() == second.read_bytes()
    assert sidecar_path(first).read_bytes() == sidecar_path(second).read_bytes()


def test_partition_tags_round_trip(tmp_path):
    front = ParetoFront.empty(1)
    front.add(ParetoPoint(vector=(2.0,), assignment={"X": "x3"}, partition=(("X.v", 1.0),)))
    front.add(ParetoPoint(vector=(1.0,), assignment={"X": "x2"}, partition=(("X.v", 2.0),)))
    loaded = load_front(export_front(front, tmp_path / "tagged.csv"))
    assert {p.partition for p in loaded.points} == {(("X.v", 1.0),), (("X.v", 2.0),)}


def test_missing_sidecar(tmp_path, toy_model):
    path = export_front(compute_front(toy_model), tmp_path / "front.csv", toy_model)
    sidecar_path(path).unlink()
    with pytest.raises(CatalogIOError):
        load_front(path)


def test_aggregate_round_trip(tmp_path, toy_model):
    spec = SubsystemSpec(name="pair", variables=["A", "B"])
    aggregate = build_aggregate(compute_front(toy_model), spec)
    path = write_aggregate(aggregate, tmp_path / "pair.csv")
    loaded = read_aggregate(path)
    assert loaded.catalog == aggregate.catalog
    assert loaded.provenance == aggregate.provenance
    assert loaded.spec_name == "pair"


def test_aggregate_without_provenance(tmp_path, toy_model):
    spec = SubsystemSpec(name="pair", variables=["A", "B"])
    path = write_aggregate(build_aggregate(compute_front(toy_model), spec), tmp_path / "pair.csv")
    sidecar = sidecar_path(path)
    meta = yaml.safe_load(sidecar.read_text(encoding="utf-8"))
    meta["provenance"].pop("pair-1")
    sidecar.write_text(yaml.safe_dump(meta), encoding="utf-8")
    with pytest.raises(CatalogIOError):
        read_aggregate(path)
