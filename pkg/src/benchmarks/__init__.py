"""
Benchmarks Module
Quadcopter and delivery-fleet models, random instances and scaling runs
"""

from .fleet_models import FleetModel, FleetObjectives, FleetParams, FleetSchedule, Package
from .fleet import (
    FleetPlanner, build_fleet_from_pool, build_fleet_model, design_pool, design_pool_from_file,
    load_fleet_params, load_packages, schedule_cost_time, schedule_from_assignment,
)
from .quadcopter import (
    QuadcopterVariant, build_quadcopter_model, generate_quadcopter_catalogs, quadcopter_specs,
)
from .random_models import random_model, random_partition_instance, random_subsystem_instance
from .scaling import (
    DecompositionComparison, ScalingBenchmark, ScalingRow, compare_flat_vs_decomposed,
    run_scaling_sweep,
)

__all__ = [
    "FleetModel", "FleetObjectives", "FleetParams", "FleetSchedule", "Package",
    "FleetPlanner", "build_fleet_from_pool", "build_fleet_model", "design_pool",
    "design_pool_from_file", "load_fleet_params", "load_packages", "schedule_cost_time",
    "schedule_from_assignment",
    "QuadcopterVariant", "build_quadcopter_model", "generate_quadcopter_catalogs",
    "quadcopter_specs",
    "random_model", "random_partition_instance", "random_subsystem_instance",
    "DecompositionComparison", "ScalingBenchmark", "ScalingRow", "compare_flat_vs_decomposed",
    "run_scaling_sweep",
]
