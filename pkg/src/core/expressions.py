"""
Expression Trees
Arithmetic over variable properties: constraint sides, objectives and metrics
"""

from dataclasses import dataclass
from typing import Callable, Iterator, List, Set, Tuple, Union

Number = Union[int, float]


@dataclass(frozen=True)
class PropertyKey:
    """Names one property column of one variable's catalog"""

    variable_name: str
    property_name: str

    def __post_init__(self):
        if not self.variable_name or not self.property_name:
            raise ValueError("PropertyKey needs a non-empty variable and property name")

    def __str__(self) -> str:
        return f"{self.variable_name}.{self.property_name}"

    @classmethod
    def parse(cls, text: str) -> "PropertyKey":
        """Build a key from 'Var.prop' text"""
        variable_name, sep, property_name = text.strip().partition(".")
        if not sep:
            raise ValueError(f"Expected 'Var.prop', got '{text}'")
        return cls(variable_name, property_name)


class Expression:
    """Base class of all expression nodes; nodes are immutable and hashable"""

    __slots__ = ()

    def children(self) -> Tuple["Expression", ...]:
        return ()

    def __add__(self, other: Union["Expression", Number]) -> "Expression":
        return Add(self, as_expression(other))

    def __radd__(self, other: Number) -> "Expression":
        return Add(as_expression(other), self)

    def __sub__(self, other: Union["Expression", Number]) -> "Expression":
        return Sub(self, as_expression(other))

    def __rsub__(self, other: Number) -> "Expression":
        return Sub(as_expression(other), self)

    def __mul__(self, other: Union["Expression", Number]) -> "Expression":
        return Mul(self, as_expression(other))

    def __rmul__(self, other: Number) -> "Expression":
        return Mul(as_expression(other), self)

    def __truediv__(self, other: Union["Expression", Number]) -> "Expression":
        return Div(self, as_expression(other))

    def __rtruediv__(self, other: Number) -> "Expression":
        return Div(as_expression(other), self)

    def __neg__(self) -> "Expression":
        return Neg(self)

    def __str__(self) -> str:
        return pretty_print(self)


@dataclass(frozen=True)
class Constant(Expression):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class PropertyRef(Expression):
    key: PropertyKey


@dataclass(frozen=True)
class Neg(Expression):
    child: Expression

    def children(self) -> Tuple[Expression, ...]:
        return (self.child,)


@dataclass(frozen=True)
class Add(Expression):
    left: Expression
    right: Expression

    def children(self) -> Tuple[Expression, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Sub(Expression):
    left: Expression
    right: Expression

    def children(self) -> Tuple[Expression, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Mul(Expression):
    left: Expression
    right: Expression

    def children(self) -> Tuple[Expression, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Div(Expression):
    left: Expression
    right: Expression

    def children(self) -> Tuple[Expression, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Min(Expression):
    args: Tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("min() needs at least one argument")

    def children(self) -> Tuple[Expression, ...]:
        return self.args


@dataclass(frozen=True)
class Max(Expression):
    args: Tuple[Expression, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("max() needs at least one argument")

    def children(self) -> Tuple[Expression, ...]:
        return self.args


BINARY_NODES = (Add, Sub, Mul, Div)


def as_expression(value: Union[Expression, Number]) -> Expression:
    """Wrap plain numbers as Constant nodes"""
    if isinstance(value, Expression):
        return value
    if isinstance(value, (int, float)):
        return Constant(float(value))
    raise TypeError(f"Cannot use {type(value).__name__} in an expression")


def ref(variable_name: str, property_name: str) -> PropertyRef:
    """Shorthand for a property reference node"""
    return PropertyRef(PropertyKey(variable_name, property_name))


def walk(expr: Expression) -> Iterator[Expression]:
    """Pre-order traversal, left to right"""
    stack: List[Expression] = [expr]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def iter_property_refs(expr: Expression) -> List[PropertyKey]:
    """
    Collect property references in syntactic order

    Repeated occurrences are kept, so the length equals the number of
    PropertyRef nodes in the tree.

    Args:
        expr: Expression tree

    Returns:
        List of PropertyKey, one per occurrence
    """
    return [node.key for node in walk(expr) if isinstance(node, PropertyRef)]


def referenced_variables(expr: Expression) -> Set[str]:
    """Names of all variables the expression reads"""
    return {key.variable_name for key in iter_property_refs(expr)}


def transform(expr: Expression, leaf: Callable[[PropertyRef], Expression]) -> Expression:
    """
    Rebuild the tree, replacing every PropertyRef by leaf(ref)

    Args:
        expr: Expression tree
        leaf: Replacement function for property references

    Returns:
        New expression tree
    """
    if isinstance(expr, PropertyRef):
        return leaf(expr)
    if isinstance(expr, Constant):
        return expr
    if isinstance(expr, Neg):
        return Neg(transform(expr.child, leaf))
    if isinstance(expr, BINARY_NODES):
        return type(expr)(transform(expr.left, leaf), transform(expr.right, leaf))
    if isinstance(expr, (Min, Max)):
        return type(expr)(tuple(transform(arg, leaf) for arg in expr.args))
    raise TypeError(f"Unknown expression node {type(expr).__name__}")


def sum_of(terms: List[Expression]) -> Expression:
    """Left-associated sum; an empty list is Constant(0)"""
    if not terms:
        return Constant(0.0)
    total = terms[0]
    for term in terms[1:]:
        total = Add(total, term)
    return total


# Printing ------------------------------------------------------------------

_PRECEDENCE = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3}


def _precedence(expr: Expression) -> int:
    return _PRECEDENCE.get(type(expr), 4)


def _format_number(value: float) -> str:
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return f"({text})" if value < 0 else text


def pretty_print(expr: Expression) -> str:
    """
    Render an expression in the model-file grammar

    Parentheses are emitted wherever re-parsing would otherwise build a
    different tree, so parse(pretty_print(e)) == e for parsed trees.

    Args:
        expr: Expression tree

    Returns:
        Expression text
    """
    if isinstance(expr, Constant):
        return _format_number(expr.value)
    if isinstance(expr, PropertyRef):
        return str(expr.key)
    if isinstance(expr, Neg):
        inner = pretty_print(expr.child)
        if _precedence(expr.child) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(expr, (Min, Max)):
        name = "min" if isinstance(expr, Min) else "max"
        return f"{name}({', '.join(pretty_print(arg) for arg in expr.args)})"
    if isinstance(expr, BINARY_NODES):
        symbol = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(expr)]
        level = _precedence(expr)
        left = pretty_print(expr.left)
        if _precedence(expr.left) < level:
            left = f"({left})"
        right = pretty_print(expr.right)
        # operators are left-associative: equal precedence on the right needs parentheses
        if _precedence(expr.right) <= level:
            right = f"({right})"
        return f"{left} {symbol} {right}"
    raise TypeError(f"Unknown expression node {type(expr).__name__}")
