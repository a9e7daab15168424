"""
Consistency Data Models
Constraint graph, polarity labels and property classifications
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from core.expressions import Expression, PropertyKey


class Polarity(str, Enum):
    """How a function reacts when one property increases"""
    MONOTONE = "monotone"
    ANTITONE = "antitone"
    CONSTANT = "constant"
    MIXED = "mixed"

    def flipped(self) -> "Polarity":
        if self == Polarity.MONOTONE:
            return Polarity.ANTITONE
        if self == Polarity.ANTITONE:
            return Polarity.MONOTONE
        return self


class FunctionRole(str, Enum):
    """Where a function node sits in the model"""
    CONSTRAINT_LHS = "lhs"
    CONSTRAINT_RHS = "rhs"
    EQUALITY = "equality"
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ClassificationKind(str, Enum):
    CONSISTENT_MAX = "consistent_max"
    CONSISTENT_MIN = "consistent_min"
    INCONSISTENT = "inconsistent"


class FunctionNode(BaseModel):
    """One L_c, R_c or objective function of the constraint graph"""

    function_id: str
    role: FunctionRole
    expr: Expression
    # constraint or objective the node came from
    source: str

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def is_objective(self) -> bool:
        return self.role in (FunctionRole.MINIMIZE, FunctionRole.MAXIMIZE)


class ConstraintGraph(BaseModel):
    """
    Bipartite graph between variables and functions

    Edges are kept as a list so that repeated references to the same
    property give parallel edges.
    """

    variable_nodes: List[str]
    function_nodes: Dict[str, FunctionNode]
    edges: List[Tuple[str, PropertyKey]] = Field(default_factory=list)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    def edges_of(self, function_id: str) -> List[PropertyKey]:
        return [key for fid, key in self.edges if fid == function_id]

    def variables_of(self, function_id: str) -> set:
        return {key.variable_name for key in self.edges_of(function_id)}

    def functions_of(self, variable_name: str) -> List[str]:
        seen: Dict[str, None] = {}
        for fid, key in self.edges:
            if key.variable_name == variable_name:
                seen.setdefault(fid, None)
        return list(seen)

    def properties(self) -> List[PropertyKey]:
        """Distinct properties with at least one edge, in first-seen order"""
        seen: Dict[PropertyKey, None] = {}
        for _, key in self.edges:
            seen.setdefault(key, None)
        return list(seen)


class ValueRange(BaseModel):
    """Catalog-wide range of one property"""

    property: PropertyKey
    lo: float
    hi: float

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _ordered(self) -> "ValueRange":
        if self.lo > self.hi:
            raise ValueError(f"Range of {self.property} is inverted: [{self.lo}, {self.hi}]")
        return self

    @property
    def interval(self) -> Tuple[float, float]:
        return (self.lo, self.hi)


class PropertyClassification(BaseModel):
    """Verdict for one property plus the (function, polarity) pairs behind it"""

    property: PropertyKey
    kind: ClassificationKind
    witnesses: List[Tuple[str, Polarity]] = Field(default_factory=list)
    # False when no function constrains the property in either direction
    constrained: bool = True

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @property
    def is_consistent(self) -> bool:
        return self.kind != ClassificationKind.INCONSISTENT


class SubsystemVerdict(BaseModel):
    name: str
    variables: List[str]
    consistent: bool
    shared_functions: List[str]
    violations: List[Tuple[str, str, Polarity]] = Field(default_factory=list)


class OverrideAudit(BaseModel):
    """Result of checking one declared polarity against enumeration"""

    function_id: str
    property: str
    declared: Polarity
    verified: Optional[Polarity] = None
    agrees: Optional[bool] = None
    note: Optional[str] = None


class ConsistencyReport(BaseModel):
    """Everything check-consistency prints"""

    classifications: List[PropertyClassification]
    subsystems: List[SubsystemVerdict] = Field(default_factory=list)
    overrides: List[OverrideAudit] = Field(default_factory=list)

    class Config:
        arbitrary_types_allowed = True

    def to_dict(self) -> dict:
        """Plain dict for YAML/JSON output"""
        return {
            "properties": [
                {
                    "property": str(c.property),
                    "kind": c.kind.value,
                    "constrained": c.constrained,
                    "witnesses": [[fid, pol.value] for fid, pol in c.witnesses],
                }
                for c in self.classifications
            ],
            "subsystems": [
                {
                    "name": v.name,
                    "variables": v.variables,
                    "fully_consistent": v.consistent,
                    "shared_functions": v.shared_functions,
                    "violations": [[fid, prop, pol.value] for fid, prop, pol in v.violations],
                }
                for v in self.subsystems
            ],
            "overrides": [a.model_dump(mode="json") for a in self.overrides],
        }
