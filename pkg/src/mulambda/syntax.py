"""Surface syntax: an s-expression reader and the parser into the curried AST."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce as fold

from mulambda import _dot
from mulambda.errors import InvalidToken, UnbalancedParens, UnexpectedSyntax

# ---------------------------------------------------------------------------
# S-expressions


@dataclass(frozen=True)
class IntAtom:
    value: int


@dataclass(frozen=True)
class BoolAtom:
    value: bool


@dataclass(frozen=True)
class SymbolAtom:
    name: str


@dataclass(frozen=True)
class ListForm:
    items: tuple


SExpr = IntAtom | BoolAtom | SymbolAtom | ListForm

_INTEGER = re.compile(r"[+-]?[0-9]+\Z")
_BOOLEANS = {"#t": True, "#f": False, "true": True, "false": False}
_FORBIDDEN = set("'\"`,#")


def _tokenize(text):
    """Yield ``(token, line, column)`` triples; columns are 1-based."""
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col = line + 1, 1
            i += 1
        elif ch.isspace():
            i += 1
            col += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, line, col
            i += 1
            col += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
            yield text[start:i], line, col
            col += i - start


def _atom(token, line, col):
    if token in _BOOLEANS:
        return BoolAtom(_BOOLEANS[token])
    if _INTEGER.match(token):
        return IntAtom(int(token))
    if _FORBIDDEN & set(token):
        raise InvalidToken(f"invalid token {token!r}", line, col)
    return SymbolAtom(token)


def read_sexpr(text: str) -> SExpr:
    """Read exactly one s-expression from `text`."""
    stack: list[tuple[list, int, int]] = []
    result = None
    for token, line, col in _tokenize(text):
        if result is not None:
            if token == ")":
                raise UnbalancedParens("unmatched ')'", line, col)
            raise InvalidToken(f"unexpected {token!r} after expression", line, col)
        if token == "(":
            stack.append(([], line, col))
            continue
        if token == ")":
            if not stack:
                raise UnbalancedParens("unmatched ')'", line, col)
            items, _, _ = stack.pop()
            value = ListForm(tuple(items))
        else:
            value = _atom(token, line, col)
        if stack:
            stack[-1][0].append(value)
        else:
            result = value
    if stack:
        _, line, col = stack[-1]
        raise UnbalancedParens("unclosed '('", line, col)
    if result is None:
        raise InvalidToken("empty input", 1, 1)
    return result


def print_sexpr(sexpr: SExpr) -> str:
    match sexpr:
        case IntAtom(value):
            return str(value)
        case BoolAtom(value):
            return "#t" if value else "#f"
        case SymbolAtom(name):
            return name
        case ListForm(items):
            return "(" + " ".join(print_sexpr(item) for item in items) + ")"
    raise TypeError(f"not an s-expression: {sexpr!r}")


# ---------------------------------------------------------------------------
# Abstract syntax


@dataclass(frozen=True)
class Integer:
    value: int


@dataclass(frozen=True)
class TrueLit:
    pass


@dataclass(frozen=True)
class FalseLit:
    pass


@dataclass(frozen=True)
class UnitLit:
    pass


@dataclass(frozen=True)
class Application:
    functional: object
    argument: object


@dataclass(frozen=True)
class Lambda:
    argument: str
    body: object


@dataclass(frozen=True)
class Let:
    name: str
    value: object
    body: object


@dataclass(frozen=True)
class If:
    condition: object
    true_expression: object
    false_expression: object


@dataclass(frozen=True)
class Identifier:
    symbol: str


@dataclass(frozen=True)
class Pair:
    first: object
    second: object


@dataclass(frozen=True)
class First:
    pair: object


@dataclass(frozen=True)
class Second:
    pair: object


@dataclass(frozen=True)
class InjectLeft:
    expression: object


@dataclass(frozen=True)
class InjectRight:
    expression: object


@dataclass(frozen=True)
class Case:
    expression: object
    left: object
    right: object


@dataclass(frozen=True)
class Delta:
    name: str


SyntaxNode = (
    Integer | TrueLit | FalseLit | UnitLit | Application | Lambda | Let | If
    | Identifier | Pair | First | Second | InjectLeft | InjectRight | Case | Delta
)

KEYWORDS = frozenset({
    "lambda", "let", "if", "pair", "first", "second",
    "inject-left", "inject-right", "case", "delta",
})

# keyword -> (arity, constructor) for the forms whose operands are all expressions
_SIMPLE_FORMS = {
    "if": (3, If),
    "pair": (2, Pair),
    "first": (1, First),
    "second": (1, Second),
    "inject-left": (1, InjectLeft),
    "inject-right": (1, InjectRight),
    "case": (3, Case),
}


def _binder(sexpr):
    if not isinstance(sexpr, SymbolAtom):
        raise UnexpectedSyntax(f"expected an identifier, got {print_sexpr(sexpr)}")
    return sexpr.name


def parse(sexpr: SExpr) -> SyntaxNode:
    match sexpr:
        case BoolAtom(value):
            return TrueLit() if value else FalseLit()
        case IntAtom(value):
            return Integer(value)
        case SymbolAtom(name):
            return Identifier(name)
        case ListForm(()):
            return UnitLit()
        case ListForm((SymbolAtom(head), *operands)) if head in KEYWORDS:
            return _parse_keyword_form(head, operands, sexpr)
        case ListForm((functional, *arguments)):
            if not arguments:
                raise UnexpectedSyntax(f"application without argument: {print_sexpr(sexpr)}")
            return fold(Application, map(parse, arguments), parse(functional))
    raise UnexpectedSyntax(f"Unexpected syntax {sexpr!r}")


def _parse_keyword_form(head, operands, sexpr):
    if head in _SIMPLE_FORMS:
        arity, constructor = _SIMPLE_FORMS[head]
        if len(operands) != arity:
            raise UnexpectedSyntax(f"Unexpected syntax {print_sexpr(sexpr)}")
        return constructor(*map(parse, operands))
    match head, operands:
        case "lambda", [ListForm(arguments), body]:
            names = [_binder(a) for a in arguments]
            result = parse(body)
            for name in reversed(names):
                result = Lambda(name, result)
            return result
        case "let", [ListForm(bindings), body] if bindings:
            pairs = []
            for binding in bindings:
                match binding:
                    case ListForm((name, value)):
                        pairs.append((_binder(name), parse(value)))
                    case _:
                        raise UnexpectedSyntax(f"malformed let binding {print_sexpr(binding)}")
            result = parse(body)
            for name, value in reversed(pairs):
                result = Let(name, value, result)
            return result
        case "delta", [SymbolAtom(name)]:
            return Delta(name)
    raise UnexpectedSyntax(f"Unexpected syntax {print_sexpr(sexpr)}")


def parse_text(text: str) -> SyntaxNode:
    return parse(read_sexpr(text))


def unparse(node: SyntaxNode) -> str:
    """Render an AST back into surface text (binders one at a time)."""
    match node:
        case Integer(value):
            return str(value)
        case TrueLit():
            return "#t"
        case FalseLit():
            return "#f"
        case UnitLit():
            return "()"
        case Identifier(symbol):
            return symbol
        case Application(f, a):
            return f"({unparse(f)} {unparse(a)})"
        case Lambda(argument, body):
            return f"(lambda ({argument}) {unparse(body)})"
        case Let(name, value, body):
            return f"(let (({name} {unparse(value)})) {unparse(body)})"
        case Delta(name):
            return f"(delta {name})"
    head = _HEADS[type(node)]
    return "(" + " ".join([head, *map(unparse, _children(node))]) + ")"


_HEADS = {If: "if", Pair: "pair", First: "first", Second: "second",
          InjectLeft: "inject-left", InjectRight: "inject-right", Case: "case"}


def _children(node):
    return [getattr(node, name) for name in _ROLES.get(type(node), ())]


_ROLES = {
    Application: ("functional", "argument"),
    Lambda: ("body",),
    Let: ("value", "body"),
    If: ("condition", "true_expression", "false_expression"),
    Pair: ("first", "second"),
    First: ("pair",),
    Second: ("pair",),
    InjectLeft: ("expression",),
    InjectRight: ("expression",),
    Case: ("expression", "left", "right"),
}

_LABELS = {
    Integer: lambda n: f"integer {n.value}",
    TrueLit: lambda n: "true",
    FalseLit: lambda n: "false",
    UnitLit: lambda n: "unit",
    Application: lambda n: "application",
    Lambda: lambda n: f"lambda {n.argument}",
    Let: lambda n: f"let {n.name}",
    If: lambda n: "if",
    Identifier: lambda n: f"identifier {n.symbol}",
    Pair: lambda n: "pair",
    First: lambda n: "first",
    Second: lambda n: "second",
    InjectLeft: lambda n: "inject-left",
    InjectRight: lambda n: "inject-right",
    Case: lambda n: "case",
    Delta: lambda n: f"delta {n.name}",
}


def syntax_to_dot(node: SyntaxNode, name: str = "syntax") -> str:
    """DOT rendering of the AST; every tree node is its own vertex."""
    vertices, edges = [], []

    def visit(n):
        vid = f"n{len(vertices)}"
        vertices.append((vid, _LABELS[type(n)](n)))
        for role in _ROLES.get(type(n), ()):
            edges.append((vid, visit(getattr(n, role)), role.replace("_", "-"), {}))
        return vid

    visit(node)
    return _dot.render(name, vertices, edges)
