"""Reference tree-walking evaluator.

Strict, left-to-right, environment based. It serves as the ground-truth
oracle for the graph reducer, so it is kept deliberately plain. Tail
positions (application bodies, `if` arms, `let` bodies) loop instead of
recursing so that divergent programs such as omega run in constant
stack until their fuel runs out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from mulambda import syntax as stx
from mulambda.errors import FuelExhausted, TypeMismatch, UnboundSymbol
from mulambda.primitives import ARITHMETIC, OPERATORS, partial_name

DEFAULT_FUEL = 1_000_000


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Child:
    parent: "Env"
    symbol: str
    value: object


Env = Empty | Child


def lookup(env: Env, symbol: str):
    while isinstance(env, Child):
        if env.symbol == symbol:
            return env.value
        env = env.parent
    raise UnboundSymbol(f"Unbound symbol during interpretation: {symbol}")


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True)
class VInteger:
    value: int


@dataclass(frozen=True)
class VTrue:
    pass


@dataclass(frozen=True)
class VFalse:
    pass


@dataclass(frozen=True)
class VUnit:
    pass


@dataclass(frozen=True)
class VClosure:
    environment: Env
    argument: str
    body: object


@dataclass(frozen=True)
class VPrimitive:
    name: str
    implementation: Callable = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class VPair:
    first: object
    second: object


@dataclass(frozen=True)
class VInjectLeft:
    value: object


@dataclass(frozen=True)
class VInjectRight:
    value: object


InterpValue = (
    VInteger | VTrue | VFalse | VUnit | VClosure | VPrimitive
    | VPair | VInjectLeft | VInjectRight
)


def show(value) -> str:
    """Canonical printed form of an interpreter value."""
    match value:
        case VInteger(v):
            return str(v)
        case VTrue():
            return "#t"
        case VFalse():
            return "#f"
        case VUnit():
            return "()"
        case VPair(a, b):
            return f"(pair {show(a)} {show(b)})"
        case VInjectLeft(v):
            return f"(inject-left {show(v)})"
        case VInjectRight(v):
            return f"(inject-right {show(v)})"
        case VClosure():
            return "<closure>"
        case VPrimitive():
            return "<primitive>"
    raise TypeError(f"not a value: {value!r}")


def is_ground(value) -> bool:
    match value:
        case VInteger() | VTrue() | VFalse() | VUnit():
            return True
        case VPair(a, b):
            return is_ground(a) and is_ground(b)
        case VInjectLeft(v) | VInjectRight(v):
            return is_ground(v)
    return False


# ---------------------------------------------------------------------------
# Primitives


def _integer_operand(name, value):
    if not isinstance(value, VInteger):
        raise TypeMismatch(f"{name} expects an integer, got {show(value)}")
    return value.value


def _primitive(name):
    op = OPERATORS[name]

    def first(x):
        left = _integer_operand(name, x)

        def second(y):
            result = op(left, _integer_operand(name, y))
            if name in ARITHMETIC:
                return VInteger(result)
            return VTrue() if result else VFalse()

        return VPrimitive(partial_name(name, left), second)

    return VPrimitive(name, first)


def default_env() -> Env:
    env = Empty()
    for name in OPERATORS:
        env = Child(env, name, _primitive(name))
    return env


# ---------------------------------------------------------------------------
# Evaluation


class Fuel:
    """Caller-owned step budget; one unit is spent per `interp` step."""

    def __init__(self, remaining: int = DEFAULT_FUEL):
        if remaining < 0:
            raise ValueError("fuel must be non-negative")
        self.remaining = remaining

    def tick(self):
        if self.remaining <= 0:
            raise FuelExhausted()
        self.remaining -= 1


def interp(env: Env, syntax, fuel: Fuel | None = None):
    if fuel is None:
        fuel = Fuel()
    while True:
        fuel.tick()
        match syntax:
            case stx.Integer(value):
                return VInteger(value)
            case stx.TrueLit():
                return VTrue()
            case stx.FalseLit():
                return VFalse()
            case stx.UnitLit():
                return VUnit()
            case stx.Identifier(name):
                return lookup(env, name)
            case stx.If(condition, true_expression, false_expression):
                match interp(env, condition, fuel):
                    case VTrue():
                        syntax = true_expression
                    case VFalse():
                        syntax = false_expression
                    case other:
                        raise TypeMismatch(f"if expects a boolean, got {show(other)}")
            case stx.Application(functional, argument):
                functional_value = interp(env, functional, fuel)
                argument_value = interp(env, argument, fuel)
                if isinstance(functional_value, VClosure):
                    env = Child(functional_value.environment, functional_value.argument, argument_value)
                    syntax = functional_value.body
                else:
                    return apply_value(functional_value, argument_value, fuel)
            case stx.Lambda(argument, body):
                return VClosure(env, argument, body)
            case stx.Let(name, value, body):
                env = Child(env, name, interp(env, value, fuel))
                syntax = body
            case stx.Pair(first, second):
                first_value = interp(env, first, fuel)
                return VPair(first_value, interp(env, second, fuel))
            case stx.First(pair):
                return _project(interp(env, pair, fuel), "first").first
            case stx.Second(pair):
                return _project(interp(env, pair, fuel), "second").second
            case stx.InjectLeft(expression):
                return VInjectLeft(interp(env, expression, fuel))
            case stx.InjectRight(expression):
                return VInjectRight(interp(env, expression, fuel))
            case stx.Case(expression, left_case, right_case):
                match interp(env, expression, fuel):
                    case VInjectLeft(injected):
                        branch = interp(env, left_case, fuel)
                    case VInjectRight(injected):
                        branch = interp(env, right_case, fuel)
                    case other:
                        raise TypeMismatch(f"case expects an injection, got {show(other)}")
                return apply_value(branch, injected, fuel)
            case stx.Delta(name):
                raise TypeMismatch(f"unbound delta port {name}")
            case _:
                raise TypeError(f"not a syntax node: {syntax!r}")


def _project(value, name):
    if not isinstance(value, VPair):
        raise TypeMismatch(f"{name} expects a pair, got {show(value)}")
    return value


def apply_value(functional, argument, fuel: Fuel | None = None):
    match functional:
        case VClosure(environment, name, body):
            return interp(Child(environment, name, argument), body, fuel)
        case VPrimitive(_, implementation):
            return implementation(argument)
    raise TypeMismatch(f"cannot apply {show(functional)}")


def run(text: str, fuel: int = DEFAULT_FUEL):
    """Parse `text` and evaluate it in the default environment."""
    return interp(default_env(), stx.parse_text(text), Fuel(fuel))
