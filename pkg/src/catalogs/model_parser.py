"""
Model Files
Lark grammar for model statements and infix expressions over Var.prop references
"""

import logging
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from lark import Lark, Token, Transformer, Tree, v_args
from lark.exceptions import LarkError, UnexpectedInput, VisitError

from core.evaluator import evaluate_bindings
from core.exceptions import CatalogIOError, ModelSyntaxError, UnknownVariable
from core.expressions import (
    Add, Constant, Div, Expression, Max, Min, Mul, Neg, PropertyKey, PropertyRef, Sub,
    iter_property_refs, pretty_print,
)
from core.system_models import (
    Catalog, Constraint, Direction, Metric, Objective, PolarityOverride, Relation, SystemModel,
)
from catalogs.catalog_io import load_catalog

logger = logging.getLogger(__name__)

MODEL_GRAMMAR = r"""
    statement: var_decl
             | param_decl
             | metric_decl
             | constraint_decl
             | objective_decl
             | polarity_decl

    var_decl: "var" NAME "=" PATH
    param_decl: "param" NAME "=" sum
    metric_decl: "metric" NAME ":" sum
    constraint_decl: ("constraint" NAME ":")? sum relation sum
    objective_decl: direction NAME? ":" sum
    polarity_decl: "polarity" ESCAPED_STRING dotted ":" polarity_kind

    !relation: "<=" | ">=" | "=="
    !direction: "minimize" | "maximize"
    !polarity_kind: "monotone" | "antitone" | "constant" | "mixed"
    !func: "min" | "max"

    ?expression: sum

    ?sum: product
        | sum "+" product   -> add
        | sum "-" product   -> sub

    ?product: unary
        | product "*" unary -> mul
        | product "/" unary -> div

    ?unary: atom
        | "-" unary         -> neg

    ?atom: NUMBER           -> number
        | dotted            -> property
        | NAME              -> parameter
        | func "(" sum ("," sum)* ")" -> call
        | "(" sum ")"

    dotted: NAME "." NAME

    PATH: /[^\s#]+/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.NUMBER
    %import common.ESCAPED_STRING
    %import common.WS
    %ignore WS
"""

_PARSER = Lark(MODEL_GRAMMAR, start=["statement", "expression"], parser="lalr")


@v_args(inline=True)
class ExpressionBuilder(Transformer):
    """Builds core expression nodes; bare names resolve to params"""

    def __init__(self, params: Optional[Mapping[str, float]] = None):
        super().__init__()
        self.params = dict(params or {})

    def number(self, token: Token) -> Constant:
        return Constant(float(token))

    def dotted(self, variable: Token, prop: Token) -> PropertyKey:
        return PropertyKey(str(variable), str(prop))

    def property(self, key: PropertyKey) -> PropertyRef:
        return PropertyRef(key)

    def parameter(self, name: Token) -> Constant:
        if str(name) not in self.params:
            raise ModelSyntaxError(f"Unknown parameter '{name}'", column=name.column)
        return Constant(self.params[str(name)])

    def add(self, left: Expression, right: Expression) -> Expression:
        return Add(left, right)

    def sub(self, left: Expression, right: Expression) -> Expression:
        return Sub(left, right)

    def mul(self, left: Expression, right: Expression) -> Expression:
        return Mul(left, right)

    def div(self, left: Expression, right: Expression) -> Expression:
        return Div(left, right)

    def neg(self, child: Expression) -> Expression:
        # "-3" and "(-3)" both read back as a negative constant
        if isinstance(child, Constant):
            return Constant(-child.value)
        return Neg(child)

    def func(self, token: Token) -> str:
        return str(token)

    def call(self, name: str, *args: Expression) -> Expression:
        return Min(args) if name == "min" else Max(args)


def _syntax_tree(text: str, start: str, line: Optional[int] = None) -> Tree:
    try:
        return _PARSER.parse(text, start=start)
    except UnexpectedInput as e:
        raise ModelSyntaxError(
            f"Cannot parse '{text.strip()}'", line if line is not None else e.line, e.column
        ) from None
    except LarkError as e:
        raise ModelSyntaxError(f"Cannot parse '{text.strip()}': {e}", line) from None


def _build(builder: ExpressionBuilder, tree: Tree, line: Optional[int] = None) -> Expression:
    try:
        return builder.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ModelSyntaxError):
            raise ModelSyntaxError(e.orig_exc.message, line, e.orig_exc.column) from None
        raise


def parse_expression(text: str, params: Optional[Mapping[str, float]] = None) -> Expression:
    """
    Parse infix expression text

    Args:
        text: Expression such as '4*(M.voltage*M.current)'
        params: Values for bare identifiers

    Returns:
        Expression tree

    Raises:
        ModelSyntaxError: Text does not follow the grammar
    """
    return _build(ExpressionBuilder(params), _syntax_tree(text, "expression"))


def logical_lines(text: str) -> List[Tuple[int, str]]:
    """
    Statements with their first line number

    '#' starts a comment; an indented line continues the previous statement.
    """
    statements: List[Tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if line[:1].isspace() and statements:
            first, previous = statements[-1]
            statements[-1] = (first, f"{previous} {line.strip()}")
        else:
            statements.append((number, line.strip()))
    return statements


def _keyword(node: Tree) -> str:
    return str(node.children[0])


def parse_model(
    text: str,
    catalogs: Optional[Mapping[str, Catalog]] = None,
    params: Optional[Mapping[str, float]] = None,
    base_dir: Optional[Path] = None,
) -> SystemModel:
    """
    Build a SystemModel from model-file text

    Statements, one per line:

        var B = battery.csv
        param budget = 1000
        constraint power: 4*(M.voltage*M.current) <= B.voltage*B.current
        minimize cost: B.cost + M.cost
        metric mass: B.mass + M.mass
        polarity "objective:cost" B.cost: monotone

    Args:
        text: Model-file text
        catalogs: Preloaded catalogs by variable name; others load from their path
        params: Overrides for `param` values
        base_dir: Directory that relative catalog paths resolve against

    Returns:
        Validated SystemModel

    Raises:
        ModelSyntaxError: A statement does not parse
        UnknownVariable: A reference names an undeclared variable
        UnknownProperty: A reference names a missing column
        CatalogIOError: A catalog file cannot be loaded
    """
    provided = dict(catalogs or {})
    overrides = {name: float(value) for name, value in (params or {}).items()}
    builder = ExpressionBuilder()

    model_catalogs: Dict[str, Catalog] = {}
    constraints: List[Constraint] = []
    objectives: List[Objective] = []
    metrics: List[Metric] = []
    polarity_overrides: List[PolarityOverride] = []

    for line_number, statement in logical_lines(text):
        node = _syntax_tree(statement, "statement", line_number).children[0]
        kind = node.data

        if kind == "var_decl":
            name, path = (str(t) for t in node.children)
            if name in provided:
                model_catalogs[name] = provided[name].renamed(name)
            else:
                resolved = Path(path) if base_dir is None else Path(base_dir) / path
                model_catalogs[name] = load_catalog(resolved, variable_name=name)
        elif kind == "param_decl":
            name = str(node.children[0])
            value = _build(builder, node.children[1], line_number)
            if iter_property_refs(value):
                raise ModelSyntaxError(f"Parameter '{name}' must be constant", line_number)
            builder.params[name] = overrides.get(name, evaluate_bindings(value, {}))
        elif kind == "metric_decl":
            name, body = node.children
            metrics.append(Metric(name=str(name), expr=_build(builder, body, line_number)))
        elif kind == "constraint_decl":
            parts = list(node.children)
            name = str(parts.pop(0)) if len(parts) == 4 else f"c{len(constraints) + 1}"
            lhs = _build(builder, parts[0], line_number)
            relation = _keyword(parts[1])
            rhs = _build(builder, parts[2], line_number)
            if relation == ">=":
                lhs, rhs = rhs, lhs
            constraints.append(Constraint(
                name=name,
                lhs=lhs,
                rhs=rhs,
                relation=Relation.EQUAL if relation == "==" else Relation.LESS_OR_EQUAL,
            ))
        elif kind == "objective_decl":
            parts = list(node.children)
            direction = Direction(_keyword(parts.pop(0)))
            name = str(parts.pop(0)) if len(parts) == 2 else f"objective_{len(objectives) + 1}"
            objectives.append(Objective(
                name=name, expr=_build(builder, parts[0], line_number), direction=direction
            ))
        elif kind == "polarity_decl":
            function_id, dotted, polarity = node.children
            key = _build(builder, dotted, line_number)
            polarity_overrides.append(PolarityOverride(
                function_id=str(function_id)[1:-1],
                variable_name=key.variable_name,
                property_name=key.property_name,
                polarity=_keyword(polarity),
            ))

    unused = set(overrides) - set(builder.params)
    if unused:
        logger.warning(f"Parameter overrides not declared in the model: {sorted(unused)}")

    expressions: List[Expression] = []
    for constraint in constraints:
        expressions.extend([constraint.lhs, constraint.rhs])
    expressions.extend(o.expr for o in objectives)
    expressions.extend(m.expr for m in metrics)
    for expr in expressions:
        for key in iter_property_refs(expr):
            if key.variable_name not in model_catalogs:
                raise UnknownVariable(
                    key.variable_name, f"'{key}' names an undeclared variable '{key.variable_name}'"
                )

    model = SystemModel(
        catalogs=model_catalogs,
        constraints=constraints,
        objectives=objectives,
        metrics=metrics,
        polarity_overrides=polarity_overrides,
    )
    logger.debug(
        f"Parsed model: {len(model_catalogs)} variables, {len(constraints)} constraints, "
        f"{len(objectives)} objectives"
    )
    return model


def load_model(
    path: Union[str, Path],
    catalogs: Optional[Mapping[str, Catalog]] = None,
    params: Optional[Mapping[str, float]] = None,
) -> SystemModel:
    """
    Load a model file; catalog paths are relative to the file's directory

    Raises:
        CatalogIOError: Missing model or catalog file
    """
    path = Path(path)
    if not path.exists():
        raise CatalogIOError(f"Model file not found: {path}")
    text = path.read_text(encoding="utf-8")
    return parse_model(text, catalogs=catalogs, params=params, base_dir=path.parent)


def model_to_text(model: SystemModel, paths: Optional[Mapping[str, str]] = None) -> str:
    """
    Render a model in model-file syntax

    Args:
        model: System model
        paths: Catalog path per variable (default '<variable>.csv')

    Returns:
        Model-file text
    """
    paths = paths or {}
    lines = [f"var {name} = {paths.get(name, name + '.csv')}" for name in model.variable_names]
    for constraint in model.constraints:
        lines.append(
            f"constraint {constraint.name}: {pretty_print(constraint.lhs)} "
            f"{constraint.relation.value} {pretty_print(constraint.rhs)}"
        )
    for objective in model.objectives:
        lines.append(f"{objective.direction.value} {objective.name}: {pretty_print(objective.expr)}")
    for metric in model.metrics:
        lines.append(f"metric {metric.name}: {pretty_print(metric.expr)}")
    for override in model.polarity_overrides:
        lines.append(
            f'polarity "{override.function_id}" {override.key}: {override.polarity}'
        )
    return "\n".join(lines) + "\n"
