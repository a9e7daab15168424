"""
Fleet Data Models
Packages, fleet parameters and schedules for the delivery-fleet benchmark
"""

from enum import Enum
from typing import Dict, List

from pydantic import BaseModel, Field, model_validator

from core.system_models import Catalog, SystemModel


class FleetObjectives(str, Enum):
    """Which objectives the fleet model optimizes"""
    MULTI = "multi"     # makespan and cost
    SINGLE = "single"   # cost only


class Package(BaseModel):
    """One delivery: flown out and back by a single quadcopter"""

    package_id: str = Field(min_length=1)
    mass: float = Field(ge=0, allow_inf_nan=False)
    distance: float = Field(ge=0, allow_inf_nan=False)

    class Config:
        frozen = True


class FleetParams(BaseModel):
    """Fleet sizing and pricing"""

    fleet_size: int = Field(default=2, ge=1)
    max_designs: int = Field(default=3, ge=1)
    design_penalty: float = Field(default=100.0, ge=0)
    objectives: FleetObjectives = FleetObjectives.MULTI

    class Config:
        frozen = True
        use_enum_values = False


class FleetSchedule(BaseModel):
    """Design per fleet slot and slot (0-based) per package"""

    designs: List[str]
    packages: Dict[str, int]

    @model_validator(mode="after")
    def _slots_exist(self) -> "FleetSchedule":
        for package_id, slot in self.packages.items():
            if not 0 <= slot < len(self.designs):
                raise ValueError(f"Package '{package_id}' assigned to missing slot {slot}")
        return self


class FleetModel(BaseModel):
    """
    Fleet scheduling problem over a pool of quadcopter designs

    `model` is the SystemModel handed to the front engine; slot variables
    draw from `designs`, package variables from the slot catalog.
    """

    designs: Catalog
    provenance: Dict[str, Dict[str, str]] = Field(default_factory=dict)
    packages: List[Package]
    params: FleetParams
    slot_variables: List[str]
    package_variables: List[str]
    model: SystemModel

    class Config:
        arbitrary_types_allowed = True

    def package_variable(self, package_id: str) -> str:
        for package, variable in zip(self.packages, self.package_variables):
            if package.package_id == package_id:
                return variable
        raise KeyError(package_id)
