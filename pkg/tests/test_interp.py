import copy

import pytest
from hypothesis import given, settings, strategies as st

from mulambda import syntax as stx
from mulambda.errors import FuelExhausted, TypeMismatch, UnboundSymbol
from mulambda.interp import (
    Child, Empty, Fuel, VClosure, VFalse, VInjectLeft, VInteger, VPair,
    VPrimitive, VTrue, VUnit, apply_value, default_env, interp, is_ground,
    lookup, run, show,
)

from conftest import CORPUS, OMEGA, PARTIAL_APPLY


def evaluate(text, env=None, fuel=100_000):
    return interp(env if env is not None else Empty(), stx.parse_text(text), Fuel(fuel))


class TestLookup:
    def test_direct_hit(self):
        assert lookup(Child(Empty(), "x", VInteger(1)), "x") == VInteger(1)

    def test_innermost_wins(self):
        env = Child(Child(Empty(), "x", VInteger(1)), "x", VInteger(2))
        assert lookup(env, "x") == VInteger(2)

    def test_unbound(self):
        with pytest.raises(UnboundSymbol, match="Unbound symbol during interpretation: y"):
            lookup(Empty(), "y")

    def test_skips_other_symbols(self):
        env = Child(Child(Empty(), "x", VInteger(1)), "y", VInteger(2))
        assert lookup(env, "x") == VInteger(1)


class TestInterp:
    def test_if(self):
        assert evaluate("(if #t 1 2)") == VInteger(1)
        assert evaluate("(if #f 1 2)") == VInteger(2)

    def test_partial_application_closure(self):
        value = evaluate(PARTIAL_APPLY)
        assert value == VClosure(Child(Empty(), "x", VInteger(42)), "y", stx.Identifier("x"))

    def test_case_left(self):
        assert evaluate("(case (inject-left 3) (lambda (v) v) (lambda (v) 0))") == VInteger(3)

    def test_case_right(self):
        assert evaluate("(case (inject-right 3) (lambda (v) v) (lambda (v) 0))") == VInteger(0)

    def test_omega_exhausts_fuel(self):
        with pytest.raises(FuelExhausted):
            evaluate(OMEGA, fuel=10_000)

    def test_literals(self):
        assert evaluate("()") == VUnit()
        assert evaluate("#t") == VTrue()
        assert evaluate("(pair 1 #f)") == VPair(VInteger(1), VFalse())

    def test_let_and_projection(self):
        assert evaluate("(let ((p (pair 1 2))) (second p))") == VInteger(2)

    def test_closure_captures_definition_environment(self):
        text = "(let ((x 1)) (let ((f (lambda (y) x))) (let ((x 2)) (f 0))))"
        assert evaluate(text) == VInteger(1)

    @pytest.mark.parametrize("text", [
        "(if 1 2 3)", "(first 1)", "(second #t)", "(case 1 (lambda (v) v) (lambda (v) v))",
        "(1 2)", "(delta sensor)",
    ])
    def test_type_mismatch(self, text):
        with pytest.raises(TypeMismatch):
            evaluate(text)

    def test_delta_message(self):
        with pytest.raises(TypeMismatch, match="unbound delta port"):
            evaluate("(delta sensor)")

    def test_unbound(self):
        with pytest.raises(UnboundSymbol):
            evaluate("((lambda (x) y) 1)")

    def test_strictness_order(self):
        # the functional's error is reported before the argument's
        with pytest.raises(UnboundSymbol):
            evaluate("(f (first 1))")
        with pytest.raises(TypeMismatch):
            evaluate("((first 1) g)")

    def test_fuel_counts_every_step(self):
        fuel = Fuel(10)
        interp(Empty(), stx.parse_text("(pair 1 2)"), fuel)
        assert fuel.remaining == 7
        with pytest.raises(FuelExhausted):
            interp(Empty(), stx.parse_text("(pair 1 2)"), Fuel(2))

    def test_zero_fuel(self):
        with pytest.raises(FuelExhausted):
            interp(Empty(), stx.Integer(1), Fuel(0))

    def test_negative_fuel_rejected(self):
        with pytest.raises(ValueError):
            Fuel(-1)


class TestApplyValue:
    def test_identity_closure(self):
        closure = VClosure(Empty(), "x", stx.Identifier("x"))
        assert apply_value(closure, VInteger(7), Fuel(10)) == VInteger(7)

    def test_primitive_partial_application(self):
        add = lookup(default_env(), "+")
        partial = apply_value(add, VInteger(2), Fuel(10))
        assert isinstance(partial, VPrimitive)
        assert partial.name == "(+ 2)"
        assert apply_value(partial, VInteger(3), Fuel(10)) == VInteger(5)

    def test_non_functional(self):
        with pytest.raises(TypeMismatch):
            apply_value(VInteger(1), VInteger(2), Fuel(10))

    def test_primitive_rejects_non_integer(self):
        with pytest.raises(TypeMismatch):
            apply_value(lookup(default_env(), "*"), VTrue(), Fuel(10))


class TestDefaultEnv:
    @pytest.mark.parametrize("text, expected", [
        ("(+ 2 3)", VInteger(5)),
        ("(- 2 3)", VInteger(-1)),
        ("(* 4 3)", VInteger(12)),
        ("(< 1 2)", VTrue()),
        ("(< 2 1)", VFalse()),
        ("(= 1 2)", VFalse()),
        ("(= 2 2)", VTrue()),
    ])
    def test_primitives(self, text, expected):
        assert evaluate(text, default_env()) == expected

    def test_bindings_are_primitives(self):
        env = default_env()
        for name in ["+", "-", "*", "=", "<"]:
            assert isinstance(lookup(env, name), VPrimitive)

    @given(st.integers(), st.integers())
    def test_arithmetic_matches_python(self, a, b):
        env = default_env()
        assert evaluate(f"(+ {a} {b})", env) == VInteger(a + b)
        assert evaluate(f"(* {a} {b})", env) == VInteger(a * b)
        assert evaluate(f"(- {a} {b})", env) == VInteger(a - b)
        assert evaluate(f"(< {a} {b})", env) == (VTrue() if a < b else VFalse())


class TestPrinter:
    @pytest.mark.parametrize("value, text", [
        (VInteger(5), "5"), (VTrue(), "#t"), (VFalse(), "#f"), (VUnit(), "()"),
        (VPair(VInteger(1), VInteger(2)), "(pair 1 2)"),
        (VInjectLeft(VInteger(3)), "(inject-left 3)"),
        (VClosure(Empty(), "x", stx.Identifier("x")), "<closure>"),
        (VPrimitive("+"), "<primitive>"),
    ])
    def test_show(self, value, text):
        assert show(value) == text

    def test_ground(self):
        assert is_ground(VPair(VInteger(1), VInjectLeft(VUnit())))
        assert not is_ground(VPair(VInteger(1), VPrimitive("+")))


# ---------------------------------------------------------------------------
# Properties over the corpus sources

SOURCES = sorted(p.read_text() for p in CORPUS.glob("*.mlc"))


def _outcome(text, fuel):
    try:
        return ("value", run(text, fuel))
    except (FuelExhausted, TypeMismatch, UnboundSymbol) as exc:
        return ("error", type(exc))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SOURCES), st.integers(0, 3000), st.integers(0, 3000))
def test_fuel_monotonicity(text, fuel, extra):
    first = _outcome(text, fuel)
    if first[0] == "value":
        assert _outcome(text, fuel + extra) == first


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SOURCES))
def test_determinism(text):
    assert _outcome(text, 5000) == _outcome(text, 5000)


def test_environment_is_not_mutated():
    env = default_env()
    snapshot = copy.deepcopy(env)
    interp(env, stx.parse_text("(let ((x 1)) ((lambda (+) (+ x)) (lambda (y) y)))"), Fuel(100))
    assert env == snapshot
