"""
System Data Models
Catalogs, constraints, objectives and the SystemModel that ties them together
"""

import math
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

from .exceptions import ModelValidationError, UnknownProperty, UnknownVariable
from .expressions import Expression, PropertyKey, iter_property_refs

# One chosen component id per variable name
Assignment = Dict[str, str]


class Relation(str, Enum):
    """Constraint relation"""
    LESS_OR_EQUAL = "<="
    EQUAL = "=="


class Direction(str, Enum):
    """Objective direction"""
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


class ComponentTuple(BaseModel):
    """One catalog entry: a component id and its property values"""

    component_id: str = Field(min_length=1)
    values: Tuple[float, ...]

    @field_validator("values")
    @classmethod
    def _finite(cls, values: Tuple[float, ...]) -> Tuple[float, ...]:
        for value in values:
            if not math.isfinite(value):
                raise ValueError(f"Property values must be finite, got {value}")
        return values

    class Config:
        frozen = True


class Catalog(BaseModel):
    """Finite domain of one variable"""

    variable_name: str = Field(min_length=1)
    property_names: List[str]
    components: List[ComponentTuple]

    _property_index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _component_index: Dict[str, int] = PrivateAttr(default_factory=dict)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_shape(self) -> "Catalog":
        if len(set(self.property_names)) != len(self.property_names):
            raise ValueError(f"Catalog '{self.variable_name}' has duplicate property names")
        width = len(self.property_names)
        seen = set()
        for component in self.components:
            if len(component.values) != width:
                raise ValueError(
                    f"Component '{component.component_id}' of '{self.variable_name}' "
                    f"has {len(component.values)} values, expected {width}"
                )
            if component.component_id in seen:
                raise ValueError(
                    f"Duplicate component id '{component.component_id}' in '{self.variable_name}'"
                )
            seen.add(component.component_id)
        return self

    def model_post_init(self, __context) -> None:
        self._property_index = {name: i for i, name in enumerate(self.property_names)}
        self._component_index = {c.component_id: i for i, c in enumerate(self.components)}

    def __len__(self) -> int:
        return len(self.components)

    def property_index(self, property_name: str) -> int:
        """Column index of a property"""
        try:
            return self._property_index[property_name]
        except KeyError:
            raise UnknownProperty(self.variable_name, property_name) from None

    def has_property(self, property_name: str) -> bool:
        return property_name in self._property_index

    def component(self, component_id: str) -> ComponentTuple:
        """Look up a tuple by component id"""
        try:
            return self.components[self._component_index[component_id]]
        except KeyError:
            raise ModelValidationError(
                f"Catalog '{self.variable_name}' has no component '{component_id}'"
            ) from None

    def value(self, component_id: str, property_name: str) -> float:
        return self.component(component_id).values[self.property_index(property_name)]

    def column(self, property_name: str) -> List[float]:
        index = self.property_index(property_name)
        return [c.values[index] for c in self.components]

    def value_range(self, property_name: str) -> Tuple[float, float]:
        """(min, max) of a property column"""
        column = self.column(property_name)
        if not column:
            raise ModelValidationError(f"Catalog '{self.variable_name}' is empty")
        return min(column), max(column)

    def filtered(self, keep: Callable[[ComponentTuple], bool]) -> "Catalog":
        """Copy holding only the tuples for which keep() is true"""
        return Catalog(
            variable_name=self.variable_name,
            property_names=list(self.property_names),
            components=[c for c in self.components if keep(c)],
        )

    def renamed(self, variable_name: str) -> "Catalog":
        return Catalog(
            variable_name=variable_name,
            property_names=list(self.property_names),
            components=list(self.components),
        )

    @classmethod
    def from_rows(
        cls,
        variable_name: str,
        property_names: List[str],
        rows: Iterable[Tuple[str, Iterable[float]]],
    ) -> "Catalog":
        """Build a catalog from (component_id, values) pairs"""
        return cls(
            variable_name=variable_name,
            property_names=list(property_names),
            components=[
                ComponentTuple(component_id=cid, values=tuple(float(v) for v in values))
                for cid, values in rows
            ],
        )


class Constraint(BaseModel):
    """lhs <= rhs, or lhs == rhs"""

    name: str = Field(min_length=1)
    lhs: Expression
    rhs: Expression
    relation: Relation = Relation.LESS_OR_EQUAL

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    def property_refs(self) -> List[PropertyKey]:
        return iter_property_refs(self.lhs) + iter_property_refs(self.rhs)

    def variables(self) -> set:
        return {key.variable_name for key in self.property_refs()}


class Objective(BaseModel):
    """One optimization objective"""

    name: str = Field(min_length=1)
    expr: Expression
    direction: Direction = Direction.MINIMIZE

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    def variables(self) -> set:
        return {key.variable_name for key in iter_property_refs(self.expr)}


class Metric(BaseModel):
    """Named quantity reported with solutions, never optimized"""

    name: str = Field(min_length=1)
    expr: Expression

    class Config:
        frozen = True
        arbitrary_types_allowed = True


class PolarityOverride(BaseModel):
    """Declared polarity of one property inside one function"""

    function_id: str
    variable_name: str
    property_name: str
    polarity: str = Field(pattern="^(monotone|antitone|constant|mixed)$")

    class Config:
        frozen = True

    @property
    def key(self) -> PropertyKey:
        return PropertyKey(self.variable_name, self.property_name)


class SystemModel(BaseModel):
    """
    Complete constrained optimization problem

    Variable order is the insertion order of `catalogs`; it is the model
    order used by solvers and reports.
    """

    catalogs: Dict[str, Catalog]
    constraints: List[Constraint] = Field(default_factory=list)
    objectives: List[Objective]
    metrics: List[Metric] = Field(default_factory=list)
    polarity_overrides: List[PolarityOverride] = Field(default_factory=list)

    class Config:
        frozen = True
        arbitrary_types_allowed = True

    @model_validator(mode="after")
    def _validate(self) -> "SystemModel":
        validate_model(self)
        return self

    @property
    def variable_names(self) -> List[str]:
        return list(self.catalogs.keys())

    def catalog(self, variable_name: str) -> Catalog:
        try:
            return self.catalogs[variable_name]
        except KeyError:
            raise UnknownVariable(variable_name) from None

    def lookup(self, key: PropertyKey, component_id: str) -> float:
        """Value of a property for a given component of its variable"""
        return self.catalog(key.variable_name).value(component_id, key.property_name)

    def property_range(self, key: PropertyKey) -> Tuple[float, float]:
        return self.catalog(key.variable_name).value_range(key.property_name)

    def objective(self, name: str) -> Objective:
        for objective in self.objectives:
            if objective.name == name:
                return objective
        raise ModelValidationError(f"No objective named '{name}'")

    def metric(self, name: str) -> Optional[Metric]:
        for metric in self.metrics:
            if metric.name == name:
                return metric
        return None

    def combinations(self) -> int:
        """Number of complete assignments"""
        total = 1
        for catalog in self.catalogs.values():
            total *= len(catalog)
        return total

    def replace(self, **changes) -> "SystemModel":
        """Validated copy with some fields replaced"""
        data = {
            "catalogs": self.catalogs,
            "constraints": self.constraints,
            "objectives": self.objectives,
            "metrics": self.metrics,
            "polarity_overrides": self.polarity_overrides,
        }
        data.update(changes)
        return SystemModel(**data)


def validate_model(model: SystemModel) -> None:
    """
    Check the model-level invariants

    Raises:
        ModelValidationError: Empty catalogs, bad names, no objectives
        UnknownVariable: Reference to an undefined variable
        UnknownProperty: Reference to an undefined property column
    """
    if not model.objectives:
        raise ModelValidationError("A model needs at least one objective")

    for name, catalog in model.catalogs.items():
        if name != catalog.variable_name:
            raise ModelValidationError(
                f"Catalog registered as '{name}' belongs to variable '{catalog.variable_name}'"
            )
        if len(catalog) == 0:
            raise ModelValidationError(f"Catalog '{name}' has no components")

    for label, names in (
        ("constraint", [c.name for c in model.constraints]),
        ("objective", [o.name for o in model.objectives]),
        ("metric", [m.name for m in model.metrics]),
    ):
        if len(set(names)) != len(names):
            raise ModelValidationError(f"Duplicate {label} names")

    expressions: List[Expression] = []
    for constraint in model.constraints:
        expressions.extend([constraint.lhs, constraint.rhs])
    expressions.extend(o.expr for o in model.objectives)
    expressions.extend(m.expr for m in model.metrics)

    for expr in expressions:
        for key in iter_property_refs(expr):
            catalog = model.catalogs.get(key.variable_name)
            if catalog is None:
                raise UnknownVariable(key.variable_name)
            if not catalog.has_property(key.property_name):
                raise UnknownProperty(key.variable_name, key.property_name)
