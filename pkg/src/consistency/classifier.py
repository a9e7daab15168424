"""
Property Classifier
Consistent-max / consistent-min / inconsistent verdicts and subsystem certification
"""

import itertools
import logging
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from core.evaluator import evaluate_bindings
from core.exceptions import DivisionByZero, EnumerationCapExceeded, ModelValidationError
from core.expressions import PropertyKey, iter_property_refs
from core.intervals import Interval
from core.system_models import SystemModel
from consistency.constraint_graph import check_subsystem, function_nodes, shared_functions
from consistency.graph_models import (
    ClassificationKind,
    ConsistencyReport,
    FunctionNode,
    FunctionRole,
    OverrideAudit,
    Polarity,
    PropertyClassification,
    SubsystemVerdict,
    ValueRange,
)
from consistency.polarity import polarity

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10_000_000

OverrideMap = Mapping[Tuple[str, PropertyKey], Polarity]

# Polarity each role allows for a property that should be maximized
_MAX_ALLOWED = {
    FunctionRole.CONSTRAINT_LHS: Polarity.ANTITONE,
    FunctionRole.MINIMIZE: Polarity.ANTITONE,
    FunctionRole.CONSTRAINT_RHS: Polarity.MONOTONE,
    FunctionRole.MAXIMIZE: Polarity.MONOTONE,
}


def value_ranges(model: SystemModel) -> Dict[PropertyKey, Interval]:
    """Catalog min/max of every property column in the model"""
    ranges: Dict[PropertyKey, Interval] = {}
    for name, catalog in model.catalogs.items():
        for property_name in catalog.property_names:
            ranges[PropertyKey(name, property_name)] = catalog.value_range(property_name)
    return ranges


def range_list(model: SystemModel) -> List[ValueRange]:
    return [
        ValueRange(property=key, lo=lo, hi=hi)
        for key, (lo, hi) in value_ranges(model).items()
    ]


def override_map(model: SystemModel) -> Dict[Tuple[str, PropertyKey], Polarity]:
    return {
        (o.function_id, o.key): Polarity(o.polarity)
        for o in model.polarity_overrides
    }


def function_polarity(
    node: FunctionNode,
    key: PropertyKey,
    ranges: Mapping[PropertyKey, Interval],
    overrides: Optional[OverrideMap] = None,
) -> Polarity:
    """Polarity of one function node in one property, honouring overrides"""
    if overrides and (node.function_id, key) in overrides:
        return overrides[(node.function_id, key)]
    return polarity(node.expr, key, ranges)


def classify_in(
    functions: Sequence[FunctionNode],
    key: PropertyKey,
    ranges: Mapping[PropertyKey, Interval],
    overrides: Optional[OverrideMap] = None,
) -> PropertyClassification:
    """
    Classify a property over a chosen set of functions

    A property is consistent-max when it is antitone in every constraint
    left side and minimized objective holding it, and monotone in every
    right side and maximized objective; consistent-min is the dual.
    Constant occurrences impose nothing. Any occurrence in an Equal
    constraint, or any Mixed occurrence, makes it inconsistent.

    Args:
        functions: Function nodes to consider
        key: Property to classify
        ranges: Catalog value ranges
        overrides: Declared (function id, property) polarities

    Returns:
        PropertyClassification with one witness per function holding the property
    """
    witnesses: List[Tuple[str, Polarity]] = []
    max_ok = True
    min_ok = True
    in_equality = False

    for node in functions:
        if key not in iter_property_refs(node.expr):
            continue
        pol = function_polarity(node, key, ranges, overrides)
        witnesses.append((node.function_id, pol))

        if node.role == FunctionRole.EQUALITY:
            in_equality = True
            continue
        if pol == Polarity.CONSTANT:
            continue
        if pol == Polarity.MIXED:
            max_ok = min_ok = False
            continue
        wanted = _MAX_ALLOWED[node.role]
        if pol == wanted:
            min_ok = False
        else:
            max_ok = False

    if in_equality or not (max_ok or min_ok):
        kind = ClassificationKind.INCONSISTENT
        constrained = True
    elif max_ok and min_ok:
        # nothing pushes the property either way
        kind = ClassificationKind.CONSISTENT_MIN
        constrained = False
    else:
        kind = ClassificationKind.CONSISTENT_MAX if max_ok else ClassificationKind.CONSISTENT_MIN
        constrained = True

    return PropertyClassification(
        property=key, kind=kind, witnesses=witnesses, constrained=constrained
    )


def classify_property(model: SystemModel, key: PropertyKey) -> PropertyClassification:
    """
    Classify a property against every function of the model

    Args:
        model: System model
        key: Property to classify

    Returns:
        PropertyClassification
    """
    model.catalog(key.variable_name).property_index(key.property_name)
    return classify_in(function_nodes(model), key, value_ranges(model), override_map(model))


def classify_all(model: SystemModel) -> List[PropertyClassification]:
    """Classify every property referenced by some function, in model order"""
    nodes = function_nodes(model)
    ranges = value_ranges(model)
    overrides = override_map(model)
    seen: Dict[PropertyKey, None] = {}
    for node in nodes:
        for key in iter_property_refs(node.expr):
            seen.setdefault(key, None)
    ordered = sorted(seen, key=lambda k: (model.variable_names.index(k.variable_name), k.property_name))
    return [classify_in(nodes, key, ranges, overrides) for key in ordered]


def is_fully_consistent(
    model: SystemModel,
    variables: Iterable[str],
) -> Tuple[bool, List[Tuple[str, str, Polarity]]]:
    """
    Check whether a subsystem is fully consistent

    Every property of every shared function, on either side of the cut,
    must classify consistently when judged over the shared functions.

    Args:
        model: System model
        variables: Subsystem variable names

    Returns:
        (verdict, violations) where each violation is
        (function id, property, polarity in that function)

    Raises:
        EmptySubsystem: No variables given
        NotASubset: Some variables are not in the model
    """
    members = check_subsystem(model, variables)
    shared = shared_functions(model, members)
    nodes = [node for node in function_nodes(model) if node.function_id in shared]
    ranges = value_ranges(model)
    overrides = override_map(model)

    keys: Dict[PropertyKey, None] = {}
    for node in nodes:
        for key in iter_property_refs(node.expr):
            keys.setdefault(key, None)

    violations: List[Tuple[str, str, Polarity]] = []
    for key in keys:
        verdict = classify_in(nodes, key, ranges, overrides)
        if verdict.is_consistent:
            continue
        for function_id, pol in verdict.witnesses:
            violations.append((function_id, str(key), pol))

    logger.debug(
        f"Subsystem {sorted(members)}: {len(shared)} shared functions, "
        f"{len(violations)} violations"
    )
    return not violations, violations


def _node(model: SystemModel, function_id: str) -> FunctionNode:
    for node in function_nodes(model):
        if node.function_id == function_id:
            return node
    raise ModelValidationError(f"No function with id '{function_id}'")


def verify_polarity_exhaustive(
    model: SystemModel,
    function_id: str,
    key: PropertyKey,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Polarity:
    """
    Decide polarity by enumeration

    Every combination of catalog tuples of the variables the function
    reads provides a context; inside each context the target property is
    swept over the distinct values of its column in increasing order.
    Other properties of the target's variable keep their values from the
    context tuple.

    Args:
        model: System model
        function_id: Function node id
        key: Property to check
        cap: Maximum number of contexts times sweep values

    Returns:
        Strongest polarity consistent with every observed step

    Raises:
        EnumerationCapExceeded: The enumeration would exceed cap
    """
    node = _node(model, function_id)
    refs = iter_property_refs(node.expr)
    if key not in refs:
        return Polarity.CONSTANT

    needed: Dict[str, Set[str]] = {}
    for k in refs:
        if k != key:
            needed.setdefault(k.variable_name, set()).add(k.property_name)

    variables = sorted(needed)
    catalogs = [model.catalog(name) for name in variables]
    sweep = sorted(set(model.catalog(key.variable_name).column(key.property_name)))

    combinations = len(sweep)
    for catalog in catalogs:
        combinations *= len(catalog)
    if combinations > cap:
        raise EnumerationCapExceeded(combinations, cap)

    rising = falling = False
    for context in itertools.product(*(catalog.components for catalog in catalogs)):
        bindings: Dict[PropertyKey, float] = {}
        for name, catalog, component in zip(variables, catalogs, context):
            for property_name in needed[name]:
                bindings[PropertyKey(name, property_name)] = (
                    component.values[catalog.property_index(property_name)]
                )
        previous: Optional[float] = None
        for value in sweep:
            bindings[key] = value
            try:
                current = evaluate_bindings(node.expr, bindings)
            except DivisionByZero:
                return Polarity.MIXED
            if previous is not None:
                if current > previous:
                    rising = True
                elif current < previous:
                    falling = True
            previous = current
        if rising and falling:
            return Polarity.MIXED

    if rising:
        return Polarity.MONOTONE
    if falling:
        return Polarity.ANTITONE
    return Polarity.CONSTANT


def audit_overrides(model: SystemModel, cap: int = DEFAULT_ENUMERATION_CAP) -> List[OverrideAudit]:
    """
    Check declared polarities against exhaustive enumeration

    A declaration agrees when the enumerated polarity is the declared one
    or Constant; an enumeration over the cap is reported, not raised.
    """
    audits: List[OverrideAudit] = []
    for override in model.polarity_overrides:
        declared = Polarity(override.polarity)
        try:
            verified = verify_polarity_exhaustive(model, override.function_id, override.key, cap)
        except EnumerationCapExceeded as e:
            audits.append(OverrideAudit(
                function_id=override.function_id,
                property=str(override.key),
                declared=declared,
                note=str(e),
            ))
            continue
        agrees = verified == declared or verified == Polarity.CONSTANT or declared == Polarity.MIXED
        if not agrees:
            logger.warning(
                f"Declared polarity {declared.value} of {override.key} in "
                f"{override.function_id} contradicts enumeration ({verified.value})"
            )
        audits.append(OverrideAudit(
            function_id=override.function_id,
            property=str(override.key),
            declared=declared,
            verified=verified,
            agrees=agrees,
        ))
    return audits


def consistency_report(
    model: SystemModel,
    subsystems: Optional[Mapping[str, Iterable[str]]] = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> ConsistencyReport:
    """
    Classify every property and certify each candidate subsystem

    Args:
        model: System model
        subsystems: Subsystem name -> variable names
        cap: Enumeration cap for override audits

    Returns:
        ConsistencyReport
    """
    verdicts: List[SubsystemVerdict] = []
    for name, variables in (subsystems or {}).items():
        members = check_subsystem(model, variables)
        consistent, violations = is_fully_consistent(model, members)
        verdicts.append(SubsystemVerdict(
            name=name,
            variables=[v for v in model.variable_names if v in members],
            consistent=consistent,
            shared_functions=sorted(shared_functions(model, members)),
            violations=violations,
        ))
    report = ConsistencyReport(
        classifications=classify_all(model),
        subsystems=verdicts,
        overrides=audit_overrides(model, cap),
    )
    logger.info(
        f"Consistency report: {len(report.classifications)} properties, "
        f"{sum(v.consistent for v in verdicts)}/{len(verdicts)} subsystems fully consistent"
    )
    return report
