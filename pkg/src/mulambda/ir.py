"""Data-only value graph: node kinds, compilation from syntax, traversal, DOT.

Nodes compare by identity. Every node receives a sequence number at
construction which is never reused; it is the stable key used by memo
tables and structural keys. Children are ordered.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, ClassVar

from mulambda import _dot
from mulambda import syntax as stx
from mulambda.errors import PrimitiveError, UnboundSymbol
from mulambda.primitives import ARITHMETIC, OPERATORS, partial_name

_uids = itertools.count()


@dataclass(eq=False)
class Node:
    uid: int = field(default_factory=lambda: next(_uids), init=False, repr=False)

    kind: ClassVar[str] = "node"
    # Fields holding data dependencies, in edge order.
    data_fields: ClassVar[tuple[str, ...]] = ()
    # Field holding the bound variable, for Lambda and Mu.
    binder_field: ClassVar[str | None] = None

    @property
    def payload(self):
        return None

    @property
    def children(self) -> tuple[Node, ...]:
        """Binder (if any) followed by data children."""
        names = self.data_fields
        if self.binder_field:
            names = (self.binder_field, *names)
        return tuple(getattr(self, name) for name in names)


@dataclass(eq=False, repr=False)
class Argument(Node):
    name: str = "x"
    kind: ClassVar[str] = "argument"

    def __repr__(self):
        return f"Argument({self.name}#{self.uid})"


@dataclass(eq=False, repr=False)
class MuArgument(Node):
    kind: ClassVar[str] = "muargument"

    def __repr__(self):
        return f"MuArgument(#{self.uid})"


@dataclass(eq=False)
class Apply(Node):
    functional: Node
    argument: Node
    kind: ClassVar[str] = "apply"
    data_fields: ClassVar = ("functional", "argument")


@dataclass(eq=False)
class Lambda(Node):
    argument: Argument
    body: Node
    kind: ClassVar[str] = "lambda"
    data_fields: ClassVar = ("body",)
    binder_field: ClassVar = "argument"


@dataclass(eq=False)
class Mu(Node):
    argument: MuArgument
    body: Node
    kind: ClassVar[str] = "mu"
    data_fields: ClassVar = ("body",)
    binder_field: ClassVar = "argument"


@dataclass(eq=False)
class If(Node):
    condition: Node
    true_block: Node
    false_block: Node
    kind: ClassVar[str] = "if"
    data_fields: ClassVar = ("condition", "true_block", "false_block")


@dataclass(eq=False)
class Integer(Node):
    value: int
    kind: ClassVar[str] = "integer"

    @property
    def payload(self):
        return self.value


@dataclass(eq=False)
class TrueConst(Node):
    kind: ClassVar[str] = "true"


@dataclass(eq=False)
class FalseConst(Node):
    kind: ClassVar[str] = "false"


@dataclass(eq=False)
class Unit(Node):
    kind: ClassVar[str] = "unit"


@dataclass(eq=False)
class Pair(Node):
    first: Node
    second: Node
    kind: ClassVar[str] = "pair"
    data_fields: ClassVar = ("first", "second")


@dataclass(eq=False)
class First(Node):
    pair: Node
    kind: ClassVar[str] = "first"
    data_fields: ClassVar = ("pair",)


@dataclass(eq=False)
class Second(Node):
    pair: Node
    kind: ClassVar[str] = "second"
    data_fields: ClassVar = ("pair",)


@dataclass(eq=False)
class Primitive(Node):
    name: str
    implementation: Callable[[Node], Node] = field(repr=False)
    kind: ClassVar[str] = "primitive"

    @property
    def payload(self):
        return self.name


@dataclass(eq=False)
class InjectLeft(Node):
    value: Node
    kind: ClassVar[str] = "inject-left"
    data_fields: ClassVar = ("value",)


@dataclass(eq=False)
class InjectRight(Node):
    value: Node
    kind: ClassVar[str] = "inject-right"
    data_fields: ClassVar = ("value",)


@dataclass(eq=False)
class Case(Node):
    value: Node
    left_case: Node
    right_case: Node
    kind: ClassVar[str] = "case"
    data_fields: ClassVar = ("value", "left_case", "right_case")


@dataclass(eq=False)
class DeltaPort(Node):
    name: str
    kind: ClassVar[str] = "delta"

    @property
    def payload(self):
        return self.name


BINDERS = (Argument, MuArgument)


def recurse_children(node: Node, rec: Callable[[Node], Node]) -> Node:
    """Rebuild `node` with `rec` applied to each data child, in order.

    Binders of Lambda and Mu are kept as they are. When every rebuilt
    child is identical to the original the original node is returned.
    """
    names = node.data_fields
    if not names:
        return node
    old = [getattr(node, name) for name in names]
    new = [rec(child) for child in old]
    if all(a is b for a, b in zip(old, new)):
        return node
    changes = dict(zip(names, new))
    if node.binder_field:
        changes[node.binder_field] = getattr(node, node.binder_field)
    return type(node)(**changes)


def reachable(root: Node) -> list[Node]:
    """All nodes reachable from `root` (binders included), in DFS preorder."""
    seen = {}
    stack = [root]
    while stack:
        node = stack.pop()
        if node.uid in seen:
            continue
        seen[node.uid] = node
        stack.extend(reversed(node.children))
    return list(seen.values())


# ---------------------------------------------------------------------------
# Compilation


@dataclass(frozen=True)
class CompEmpty:
    pass


@dataclass(frozen=True)
class CompChild:
    parent: "CompEnv"
    symbol: str
    value: Node


CompEnv = CompEmpty | CompChild


def lookup(env: CompEnv, symbol: str) -> Node:
    while isinstance(env, CompChild):
        if env.symbol == symbol:
            return env.value
        env = env.parent
    raise UnboundSymbol(f"Unbound symbol during compilation: {symbol}")


def _integer_operand(name, node):
    if not isinstance(node, Integer):
        raise PrimitiveError(f"{name} expects an integer, got {show(node)}")
    return node.value


def make_primitive(name: str) -> Primitive:
    """Curried integer primitive; partial application yields a new Primitive."""
    op = OPERATORS[name]

    def first(x):
        left = _integer_operand(name, x)

        def second(y):
            result = op(left, _integer_operand(name, y))
            if name in ARITHMETIC:
                return Integer(result)
            return TrueConst() if result else FalseConst()

        return Primitive(partial_name(name, left), second)

    return Primitive(name, first)


def default_comp_env() -> CompEnv:
    env = CompEmpty()
    for name in OPERATORS:
        env = CompChild(env, name, make_primitive(name))
    return env


def comp(env: CompEnv, syntax) -> Node:
    match syntax:
        case stx.Integer(value):
            return Integer(value)
        case stx.TrueLit():
            return TrueConst()
        case stx.FalseLit():
            return FalseConst()
        case stx.UnitLit():
            return Unit()
        case stx.Identifier(name):
            return lookup(env, name)
        case stx.If(condition, true_expression, false_expression):
            return If(comp(env, condition), comp(env, true_expression), comp(env, false_expression))
        case stx.Application(functional, argument):
            return Apply(comp(env, functional), comp(env, argument))
        case stx.Lambda(name, body):
            argument = Argument(name)
            return Lambda(argument, comp(CompChild(env, name, argument), body))
        case stx.Let(name, value, body):
            return comp(CompChild(env, name, comp(env, value)), body)
        case stx.Pair(first, second):
            return Pair(comp(env, first), comp(env, second))
        case stx.First(pair):
            return First(comp(env, pair))
        case stx.Second(pair):
            return Second(comp(env, pair))
        case stx.InjectLeft(expression):
            return InjectLeft(comp(env, expression))
        case stx.InjectRight(expression):
            return InjectRight(comp(env, expression))
        case stx.Case(expression, left, right):
            return Case(comp(env, expression), comp(env, left), comp(env, right))
        case stx.Delta(name):
            return DeltaPort(name)
    raise TypeError(f"not a syntax node: {syntax!r}")


def compile_text(text: str) -> Node:
    return comp(default_comp_env(), stx.parse_text(text))


# ---------------------------------------------------------------------------
# Structural utilities


def alpha_equal(a: Node, b: Node) -> bool:
    """Graph isomorphism up to a consistent renaming of bound variables.

    Sharing must correspond: the node correspondence is a bijection.
    Free variables only match themselves.
    """
    forward: dict[int, Node] = {}
    backward: dict[int, Node] = {}

    def bind(x, y):
        if x.uid in forward or y.uid in backward:
            return forward.get(x.uid) is y and backward.get(y.uid) is x
        forward[x.uid] = y
        backward[y.uid] = x
        return True

    def equal(x, y):
        if x.uid in forward or y.uid in backward:
            return forward.get(x.uid) is y
        if isinstance(x, BINDERS):
            return x is y and bind(x, y)
        if type(x) is not type(y) or x.payload != y.payload:
            return False
        if x.binder_field and not bind(x.children[0], y.children[0]):
            return False
        if not bind(x, y):
            return False
        xs = [getattr(x, n) for n in x.data_fields]
        ys = [getattr(y, n) for n in y.data_fields]
        return all(equal(p, q) for p, q in zip(xs, ys))

    return equal(a, b)


def show(node: Node) -> str:
    """Canonical printed form; ground values print like interpreter values."""
    match node:
        case Integer(value):
            return str(value)
        case TrueConst():
            return "#t"
        case FalseConst():
            return "#f"
        case Unit():
            return "()"
        case Pair(a, b):
            return f"(pair {show(a)} {show(b)})"
        case InjectLeft(v):
            return f"(inject-left {show(v)})"
        case InjectRight(v):
            return f"(inject-right {show(v)})"
        case DeltaPort(name):
            return f"(delta {name})"
    return f"<{node.kind}>"


def is_ground(node: Node) -> bool:
    match node:
        case Integer() | TrueConst() | FalseConst() | Unit():
            return True
        case Pair(a, b):
            return is_ground(a) and is_ground(b)
        case InjectLeft(v) | InjectRight(v):
            return is_ground(v)
    return False


def label(node: Node) -> str:
    match node:
        case Argument(name=name):
            return f"argument {name}"
        case Integer(value) | Primitive(value) | DeltaPort(value):
            return f"{node.kind} {value}"
    return node.kind


def _data_nodes(root):
    """Nodes reachable through data edges only, in DFS preorder."""
    order: dict[int, Node] = {}

    def visit(node):
        if node.uid in order:
            return
        order[node.uid] = node
        for name in node.data_fields:
            visit(getattr(node, name))

    visit(root)
    return list(order.values())


def node_to_dot(root: Node, name: str = "dag") -> str:
    """DOT rendering of the graph under `root`.

    Vertices are numbered in traversal order, so output is independent of
    node sequence numbers. Shared nodes appear once. A binder is drawn only
    when it occurs in its body, linked by a dashed edge (dotted for mu).
    """
    nodes = _data_nodes(root)
    ids = {node.uid: f"n{i}" for i, node in enumerate(nodes)}
    vertices = [(ids[n.uid], label(n)) for n in nodes]
    edges = []
    for node in nodes:
        source = ids[node.uid]
        if node.binder_field:
            binder = node.children[0]
            if binder.uid in ids:
                style = "dotted" if isinstance(node, Mu) else "dashed"
                edges.append((source, ids[binder.uid], "binds", {"style": style}))
        for role in node.data_fields:
            child = getattr(node, role)
            edges.append((source, ids[child.uid], role.replace("_", "-"), {}))
    return _dot.render(name, vertices, edges)


def dump(root: Node) -> str:
    """One line per node, children before parents, e.g. ``n2 = apply n0 n1``."""
    names: dict[int, str] = {}
    lines = []

    def visit(node):
        if node.uid in names:
            return names[node.uid]
        refs = [visit(child) for child in node.children]
        ident = f"n{len(names)}"
        names[node.uid] = ident
        lines.append(" ".join([ident, "=", label(node), *refs]))
        return ident

    visit(root)
    return "\n".join(lines)
