"""
Exception Hierarchy
All errors raised by the optimizer derive from CatalogDesignError
"""

from typing import Any, List, Optional, Tuple


class CatalogDesignError(Exception):
    """Base class for all optimizer errors"""


# ---------------------------------------------------------------------------
# Model errors
# ---------------------------------------------------------------------------

class ModelError(CatalogDesignError):
    """Problems with the structure of a SystemModel"""


class ModelValidationError(ModelError):
    """A model-level invariant does not hold"""


class UnknownVariable(ModelError):
    """Reference to a variable the model does not define"""

    def __init__(self, variable_name: str, message: Optional[str] = None):
        self.variable_name = variable_name
        super().__init__(message or f"Unknown variable '{variable_name}'")


class UnknownProperty(ModelError):
    """Reference to a property missing from a variable's catalog"""

    def __init__(self, variable_name: str, property_name: str, message: Optional[str] = None):
        self.variable_name = variable_name
        self.property_name = property_name
        super().__init__(
            message or f"Unknown property '{variable_name}.{property_name}'"
        )


class LengthMismatch(CatalogDesignError):
    """Objective vectors of different lengths were compared"""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Vector length mismatch: expected {expected}, got {actual}")


# ---------------------------------------------------------------------------
# Evaluation errors
# ---------------------------------------------------------------------------

class EvaluationError(CatalogDesignError):
    """Expression evaluation failed"""


class UnresolvedProperty(EvaluationError):
    """A property reference has no assigned tuple"""

    def __init__(self, variable_name: str, property_name: str):
        self.variable_name = variable_name
        self.property_name = property_name
        super().__init__(
            f"Property '{variable_name}.{property_name}' is not resolved by the assignment"
        )


class DivisionByZero(EvaluationError):
    """Exact division by zero during evaluation"""


class IntervalDivisionByZero(EvaluationError):
    """Denominator interval contains zero; the bound is unbounded"""


# ---------------------------------------------------------------------------
# Solver errors
# ---------------------------------------------------------------------------

class SolverError(CatalogDesignError):
    """Search failed"""


class InfeasibleModel(SolverError):
    """No assignment satisfies the model constraints"""


class NodeLimitExceeded(SolverError):
    """The configured node limit was hit before the search finished"""

    def __init__(self, node_limit: int):
        self.node_limit = node_limit
        super().__init__(f"Node limit of {node_limit} exceeded")


class BudgetExceeded(SolverError):
    """Exhaustive enumeration would exceed its combination budget"""

    def __init__(self, combinations: int, budget: int):
        self.combinations = combinations
        self.budget = budget
        super().__init__(
            f"Enumeration of {combinations} combinations exceeds budget {budget}"
        )


# ---------------------------------------------------------------------------
# Consistency errors
# ---------------------------------------------------------------------------

class ConsistencyError(CatalogDesignError):
    """Consistency analysis failed"""


class EmptySubsystem(ConsistencyError):
    """A subsystem was given without variables"""


class NotASubset(ConsistencyError):
    """A subsystem names variables outside the model"""

    def __init__(self, missing: List[str]):
        self.missing = missing
        super().__init__(f"Variables not in model: {', '.join(sorted(missing))}")


class EnumerationCapExceeded(ConsistencyError):
    """Exhaustive polarity check would enumerate too many combinations"""

    def __init__(self, combinations: int, cap: int):
        self.combinations = combinations
        self.cap = cap
        super().__init__(f"Polarity enumeration of {combinations} combinations exceeds cap {cap}")


# ---------------------------------------------------------------------------
# Decomposition errors
# ---------------------------------------------------------------------------

class DecompositionError(CatalogDesignError):
    """Subsystem decomposition failed"""


class InconsistentSubsystem(DecompositionError):
    """Shared functions contain inconsistent properties not covered by partition handles"""

    def __init__(self, subsystem: str, violations: List[Tuple[str, str, Any]]):
        self.subsystem = subsystem
        self.violations = violations
        listed = "; ".join(f"{fid} / {prop} ({pol})" for fid, prop, pol in violations)
        super().__init__(f"Subsystem '{subsystem}' is not fully consistent: {listed}")


class EmptyFront(DecompositionError):
    """A subsystem (or a front to aggregate) has no feasible points"""


class UnroutableReference(DecompositionError):
    """A surviving function needs a subsystem property that the aggregate does not export"""

    def __init__(self, function_id: str, reference: str):
        self.function_id = function_id
        self.reference = reference
        super().__init__(
            f"Function '{function_id}' references '{reference}' which the aggregate does not export"
        )


class PartitionCapExceeded(DecompositionError):
    """Too many distinct partition-handle values"""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} partition values exceed the cap of {cap}")


class NonSeparableFunction(DecompositionError):
    """An aggregation rewrite does not match the function's additive structure"""


# ---------------------------------------------------------------------------
# Catalog and model file errors
# ---------------------------------------------------------------------------

class CatalogIOError(CatalogDesignError):
    """Reading or writing catalogs, models or fronts failed"""


class ParseError(CatalogIOError):
    """A catalog cell could not be parsed as a finite real"""

    def __init__(self, path: str, row: int, column: str, value: str):
        self.path = path
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"{path}: row {row}, column '{column}': cannot parse '{value}'")


class DuplicateId(CatalogIOError):
    """Two catalog rows share a component id"""

    def __init__(self, path: str, component_id: str, row: int):
        self.path = path
        self.component_id = component_id
        self.row = row
        super().__init__(f"{path}: duplicate id '{component_id}' at row {row}")


class RaggedRow(CatalogIOError):
    """A catalog row has the wrong number of cells"""

    def __init__(self, path: str, row: int, expected: int, actual: int):
        self.path = path
        self.row = row
        self.expected = expected
        self.actual = actual
        super().__init__(f"{path}: row {row} has {actual} cells, expected {expected}")


class ModelSyntaxError(CatalogIOError):
    """Model or expression text does not follow the grammar"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class ResampleLimitExceeded(CatalogIOError):
    """Truncated sampling could not draw a value above the lower bound"""

    def __init__(self, property_name: str, limit: int):
        self.property_name = property_name
        self.limit = limit
        super().__init__(
            f"Property '{property_name}': no value above the lower bound after {limit} resamples"
        )


# ---------------------------------------------------------------------------
# Fleet errors
# ---------------------------------------------------------------------------

class FleetError(CatalogDesignError):
    """Fleet scheduling problems"""


class InfeasiblePayload(FleetError):
    """A package is heavier than every design can carry"""

    def __init__(self, package_id: str, mass: float):
        self.package_id = package_id
        self.mass = mass
        super().__init__(f"Package '{package_id}' ({mass}) exceeds every design's payload")


class CapacityViolation(FleetError):
    """A schedule assigns a package to a quadcopter that cannot carry it"""

    def __init__(self, package_id: str, slot: str):
        self.package_id = package_id
        self.slot = slot
        super().__init__(f"Package '{package_id}' exceeds the payload of slot '{slot}'")
