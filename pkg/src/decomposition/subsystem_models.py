"""
Decomposition Data Models
Subsystem specifications, exported properties, aggregates and solve reports
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from core.expressions import Expression, PropertyKey
from core.system_models import Catalog, Direction
from pareto.front_models import ParetoFront


class AggregationRewrite(BaseModel):
    """
    Replace the subsystem terms of a separable function by one derived property

    `expr` optionally defines the derived property over subsystem
    properties; without it the definition is the subsystem part of the
    first function the derived name is applied to.
    """

    function_id: str
    derived: str = Field(min_length=1)
    expr: Optional[Expression] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class SubsystemSpec(BaseModel):
    """User-chosen subsystem to optimize once and replace by an aggregate"""

    name: str = Field(min_length=1)
    variables: List[str] = Field(min_length=1)
    aggregation_rewrites: List[AggregationRewrite] = Field(default_factory=list)
    declared_inconsistent_handles: List[PropertyKey] = Field(default_factory=list)
    # aggregate variable name; replicated subsystems share `name` but not `instance`
    instance: Optional[str] = None

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def aggregate_name(self) -> str:
        return self.instance or self.name


class ExternalDirection(str, Enum):
    MAXIMIZE_IT = "maximize_it"
    MINIMIZE_IT = "minimize_it"

    @property
    def objective_direction(self) -> Direction:
        return Direction.MAXIMIZE if self == ExternalDirection.MAXIMIZE_IT else Direction.MINIMIZE


class ExportKind(str, Enum):
    PROPERTY = "property"
    DERIVED = "derived"
    OBJECTIVE = "objective"


class ExternalProperty(BaseModel):
    """One column of the aggregate and the subsystem objective behind it"""

    column: str
    direction: ExternalDirection
    kind: ExportKind = ExportKind.PROPERTY
    # raw subsystem property, for PROPERTY exports
    property: Optional[PropertyKey] = None
    # value of the column for a subsystem assignment
    expr: Expression

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class AggregateComponent(BaseModel):
    """
    Catalog synthesized from a subsystem front

    `provenance` maps each aggregate component id to the internal
    subsystem assignment it stands for.
    """

    spec_name: str
    catalog: Catalog
    provenance: Dict[str, Dict[str, str]]
    handle_columns: List[str] = Field(default_factory=list)

    @property
    def variable_name(self) -> str:
        return self.catalog.variable_name


class SubsystemReport(BaseModel):
    """Per-subsystem solve summary"""

    name: str
    instance: str
    variables: List[str]
    components: int = Field(ge=0, description="Total catalog tuples inside the subsystem")
    combinations: int = Field(ge=0)
    external_properties: List[str] = Field(default_factory=list)
    front_size: int = Field(ge=0)
    partitions: int = Field(default=1, ge=1)
    wall_time: float = Field(default=0.0, ge=0.0)
    reused: bool = False


class DecompositionResult(BaseModel):
    """Front of the original model plus per-level reports"""

    front: ParetoFront
    reports: List[SubsystemReport] = Field(default_factory=list)
    reduced_variables: List[str] = Field(default_factory=list)
    wall_time: float = Field(default=0.0, ge=0.0)
