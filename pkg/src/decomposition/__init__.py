"""
Decomposition Module
Subsystem fronts, aggregate components and the decomposed solve pipeline
"""

from .subsystem_models import (
    AggregateComponent, AggregationRewrite, DecompositionResult, ExternalDirection,
    ExternalProperty, SubsystemReport, SubsystemSpec,
)
from .subsystem_optimizer import (
    build_aggregate, compose, external_properties, optimize_subsystem, plan_subsystem,
)
from .decomposer import (
    Decomposer, SubsystemCache, decompose_solve, fingerprint, flatten, model_fingerprint,
)

__all__ = [
    "AggregateComponent", "AggregationRewrite", "DecompositionResult", "ExternalDirection",
    "ExternalProperty", "SubsystemReport", "SubsystemSpec",
    "build_aggregate", "compose", "external_properties", "optimize_subsystem", "plan_subsystem",
    "Decomposer", "SubsystemCache", "decompose_solve", "fingerprint", "flatten",
    "model_fingerprint",
]
