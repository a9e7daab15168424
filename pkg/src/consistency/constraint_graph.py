"""
Constraint Graph
Function nodes of a model and the variables they touch
"""

import logging
from typing import Iterable, List, Set

from core.exceptions import EmptySubsystem, NotASubset
from core.expressions import iter_property_refs
from core.system_models import Direction, Relation, SystemModel
from consistency.graph_models import ConstraintGraph, FunctionNode, FunctionRole

logger = logging.getLogger(__name__)


def lhs_id(constraint_name: str) -> str:
    return f"constraint:{constraint_name}:lhs"


def rhs_id(constraint_name: str) -> str:
    return f"constraint:{constraint_name}:rhs"


def objective_id(objective_name: str) -> str:
    return f"objective:{objective_name}"


def function_nodes(model: SystemModel) -> List[FunctionNode]:
    """
    One node per constraint side and per objective, in model order

    Both sides of an Equal constraint get the EQUALITY role.
    """
    nodes: List[FunctionNode] = []
    for constraint in model.constraints:
        equality = constraint.relation == Relation.EQUAL
        nodes.append(FunctionNode(
            function_id=lhs_id(constraint.name),
            role=FunctionRole.EQUALITY if equality else FunctionRole.CONSTRAINT_LHS,
            expr=constraint.lhs,
            source=constraint.name,
        ))
        nodes.append(FunctionNode(
            function_id=rhs_id(constraint.name),
            role=FunctionRole.EQUALITY if equality else FunctionRole.CONSTRAINT_RHS,
            expr=constraint.rhs,
            source=constraint.name,
        ))
    for objective in model.objectives:
        nodes.append(FunctionNode(
            function_id=objective_id(objective.name),
            role=(
                FunctionRole.MAXIMIZE
                if objective.direction == Direction.MAXIMIZE
                else FunctionRole.MINIMIZE
            ),
            expr=objective.expr,
            source=objective.name,
        ))
    return nodes


def build_graph(model: SystemModel) -> ConstraintGraph:
    """
    Build the bipartite constraint graph

    Args:
        model: Validated system model

    Returns:
        ConstraintGraph with one edge per syntactic property reference
    """
    nodes = function_nodes(model)
    edges = []
    for node in nodes:
        for key in iter_property_refs(node.expr):
            edges.append((node.function_id, key))

    graph = ConstraintGraph(
        variable_nodes=model.variable_names,
        function_nodes={node.function_id: node for node in nodes},
        edges=edges,
    )
    logger.debug(
        f"Constraint graph: {len(graph.variable_nodes)} variables, "
        f"{len(graph.function_nodes)} functions, {len(graph.edges)} edges"
    )
    return graph


def check_subsystem(model: SystemModel, variables: Iterable[str]) -> Set[str]:
    """
    Validate a subsystem variable set

    Raises:
        EmptySubsystem: No variables given
        NotASubset: Some variables are not in the model
    """
    subsystem = set(variables)
    if not subsystem:
        raise EmptySubsystem("A subsystem needs at least one variable")
    missing = subsystem - set(model.variable_names)
    if missing:
        raise NotASubset(sorted(missing))
    return subsystem


def _spans(touched: Set[str], subsystem: Set[str]) -> bool:
    return bool(touched & subsystem) and bool(touched - subsystem)


def shared_constraints(model: SystemModel, variables: Iterable[str]) -> List[str]:
    """Names of constraints touching the subsystem and the rest of the model"""
    subsystem = check_subsystem(model, variables)
    return [c.name for c in model.constraints if _spans(c.variables(), subsystem)]


def shared_objectives(model: SystemModel, variables: Iterable[str]) -> List[str]:
    """Names of objectives touching the subsystem and the rest of the model"""
    subsystem = check_subsystem(model, variables)
    return [o.name for o in model.objectives if _spans(o.variables(), subsystem)]


def shared_functions(model: SystemModel, variables: Iterable[str]) -> Set[str]:
    """
    Function ids shared between a subsystem and the rest of the model

    A constraint couples its two sides, so both side nodes count as shared
    when the constraint as a whole touches the subsystem and the rest.
    Sides without any property reference are left out.

    Args:
        model: System model
        variables: Subsystem variable names

    Returns:
        Set of function ids

    Raises:
        EmptySubsystem: No variables given
        NotASubset: Some variables are not in the model
    """
    subsystem = check_subsystem(model, variables)
    shared: Set[str] = set()
    for constraint in model.constraints:
        if not _spans(constraint.variables(), subsystem):
            continue
        if iter_property_refs(constraint.lhs):
            shared.add(lhs_id(constraint.name))
        if iter_property_refs(constraint.rhs):
            shared.add(rhs_id(constraint.name))
    for objective in model.objectives:
        if _spans(objective.variables(), subsystem):
            shared.add(objective_id(objective.name))
    return shared
