"""Graph reducer: memo tables, hash-consing, cyclic memoization, rules.

Reduction is a memoized top-down rewrite of the value graph. Every
intermediate result is unified against a structure-keyed table so that
structurally identical nodes share one identity. That sharing is what
lets the fixpoint test (an identity comparison) notice that a divergent
term such as omega has stopped changing. When a reduction re-enters a
node that is still being reduced, the pass hands back a fresh
`MuArgument` and later wraps the finished result in a `Mu` binder; this
is how expansive terms normalize to finite self-referential graphs.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Callable

from mulambda.errors import CyclicExpansion, StepBudgetExceeded
from mulambda.ir import (
    Apply, Argument, Case, FalseConst, First, If, InjectLeft, InjectRight,
    Integer, Lambda, Mu, MuArgument, Node, Pair, Primitive, Second,
    TrueConst, Unit, reachable, recurse_children,
)

DEFAULT_STEP_BUDGET = 1_000_000


class _Pending:
    __slots__ = ()

    def __repr__(self):
        return "<pending>"


PENDING = _Pending()


class PendingCyclic:
    """Marker for a node under cyclic reduction.

    `muarg` is created on first re-entry; `is_cyclic` only goes False -> True.
    """

    __slots__ = ("muarg", "is_cyclic")

    def __init__(self):
        self.muarg = None
        self.is_cyclic = False


class DagContext:
    """Mutable store for one pipeline run.

    Holds one identity-keyed memo table per pass name, the structural
    unification table, and a counter of rule firings.
    """

    def __init__(self, step_budget: int | None = DEFAULT_STEP_BUDGET):
        self.tables: dict[object, dict[Node, object]] = defaultdict(dict)
        self.unification: dict[tuple, Node] = {}
        self.representative: dict[Node, Node] = {}
        self.steps = 0
        self.step_budget = step_budget

    def table(self, pass_name) -> dict:
        return self.tables[pass_name]

    def fired(self):
        self.steps += 1
        if self.step_budget is not None and self.steps > self.step_budget:
            raise StepBudgetExceeded(f"more than {self.step_budget} rule firings")


def memoize(ctx: DagContext, pass_name, node: Node, compute: Callable[[], object]):
    table = ctx.table(pass_name)
    if node in table:
        result = table[node]
        if result is PENDING:
            raise CyclicExpansion(f"Cyclic expansion of {node!r}")
        return result
    table[node] = PENDING
    result = compute()
    table[node] = result
    return result


def cyclic_memoize(ctx: DagContext, pass_name, node: Node, compute: Callable[[], Node],
                   make_muarg=MuArgument, make_mu=Mu) -> Node:
    table = ctx.table(pass_name)
    if node in table:
        entry = table[node]
        if isinstance(entry, PendingCyclic):
            if entry.muarg is None:
                entry.muarg = make_muarg()
            entry.is_cyclic = True
            return entry.muarg
        return entry
    token = PendingCyclic()
    table[node] = token
    result = compute()
    if token.is_cyclic:
        result = make_mu(token.muarg, result)
    table[node] = result
    return result


# ---------------------------------------------------------------------------
# Unification


def can_unify(node: Node) -> bool:
    return not isinstance(node, (Argument, MuArgument))


def structural_key(node: Node) -> tuple:
    return (node.kind, node.payload, tuple(child.uid for child in node.children))


def unify(ctx: DagContext, node: Node) -> Node:
    """Canonical representative of `node`, built bottom-up.

    Children are unified first, so keys are over canonical child
    identities. Results are cached by identity; the table never changes
    an installed entry, so the cache stays valid.
    """
    if not can_unify(node):
        return node
    known = ctx.representative.get(node)
    if known is not None:
        return known
    rebuilt = recurse_children(node, lambda child: unify(ctx, child))
    result = ctx.unification.setdefault(structural_key(rebuilt), rebuilt)
    ctx.representative[node] = result
    ctx.representative[rebuilt] = result
    return result


def duplicate_keys(root: Node) -> list[tuple]:
    """Structural keys shared by two distinct unifiable nodes under `root`."""
    seen: dict[tuple, Node] = {}
    duplicates = []
    for node in reachable(root):
        if not can_unify(node):
            continue
        key = structural_key(node)
        if key in seen and seen[key] is not node:
            duplicates.append(key)
        seen.setdefault(key, node)
    return duplicates


# ---------------------------------------------------------------------------
# Predicates


def is_constant(ctx: DagContext, node: Node) -> bool:
    match node:
        case Integer() | TrueConst() | FalseConst() | Unit():
            return True
        case Pair() | InjectLeft() | InjectRight():
            return memoize(ctx, "is-constant", node, lambda: all(
                is_constant(ctx, getattr(node, name)) for name in node.data_fields))
    return False


def uses_var(ctx: DagContext, node: Node, binder: Node) -> bool:
    """True iff `binder` is reachable from `node` by identity."""
    if node is binder:
        return True
    table = ctx.table(("uses-var", binder.uid))
    if node in table:
        return table[node]
    result = any(uses_var(ctx, child, binder) for child in node.children)
    table[node] = result
    return result


# ---------------------------------------------------------------------------
# Substitution


def substitute(ctx: DagContext, binder: Argument, value: Node, body: Node) -> Node:
    """Replace occurrences of `binder` in `body` by `value`.

    `value` is inserted as-is. Subgraphs that do not mention the binder
    keep their identity. Every Lambda (or Mu) that has to be rebuilt gets a
    fresh binder, so a value carrying free variables is never captured by
    a copy of a binder it already lives under.
    """
    memo: dict[tuple, Node] = {}

    def go(node, renames):
        if node is binder:
            return value
        if node in renames:
            return renames[node]
        live = tuple(old for old in renames if uses_var(ctx, node, old))
        if not live and not uses_var(ctx, node, binder):
            return node
        key = (node, tuple(renames[old] for old in live))
        if key in memo:
            return memo[key]
        match node:
            case Lambda(argument, _) if argument is binder:
                result = node
            case Lambda(argument, inner):
                fresh = Argument(argument.name)
                result = Lambda(fresh, go(inner, {**renames, argument: fresh}))
            case Mu(argument, inner):
                fresh = MuArgument()
                result = Mu(fresh, go(inner, {**renames, argument: fresh}))
            case _:
                result = recurse_children(node, lambda child: go(child, renames))
        memo[key] = result
        return result

    return go(body, {})


# ---------------------------------------------------------------------------
# Rules and drivers


def reduction_rule(ctx: DagContext, node: Node) -> Node:
    """Apply the first matching top-level rule, or return `node` unchanged."""
    match node:
        case Apply(Primitive(_, implementation), argument) if is_constant(ctx, argument):
            result = implementation(argument)
        case Apply(Lambda(argument, body), value):
            result = substitute(ctx, argument, value, body)
        case Mu(argument, body):
            result = node if uses_var(ctx, body, argument) else body
        case If(TrueConst(), true_block, _):
            result = true_block
        case If(FalseConst(), _, false_block):
            result = false_block
        case If(_, true_block, false_block) if true_block is false_block:
            result = true_block
        case First(Pair(first, _)):
            result = first
        case Second(Pair(_, second)):
            result = second
        case Case(InjectLeft(value), left_case, _):
            result = Apply(left_case, value)
        case Case(InjectRight(value), _, right_case):
            result = Apply(right_case, value)
        case _:
            result = node
    if result is not node:
        ctx.fired()
    return result


def _wrap_mu(ctx):
    def make_mu(muarg, body):
        if not uses_var(ctx, body, muarg):
            return body
        return unify(ctx, Mu(muarg, body))
    return make_mu


def reduce_once(ctx: DagContext, node: Node) -> Node:
    """Reduce every child once, then fire at most one rule at the top."""
    def transform():
        with_reduced_child = unify(ctx, recurse_children(node, lambda child: reduce_once(ctx, child)))
        return unify(ctx, reduction_rule(ctx, with_reduced_child))

    return cyclic_memoize(ctx, "reduce-once", node, transform, make_mu=_wrap_mu(ctx))


def reduce(ctx: DagContext, node: Node, on_step: Callable[[Node], None] | None = None) -> Node:
    """Reduce until the result is identity-stable under the rule set.

    `on_step` is called with each new candidate of the outermost fixpoint
    loop (the one rooted at `node`): after its children are reduced and
    after each rule firing. Trace mode records these.
    """
    def transform():
        with_reduced_child = unify(ctx, recurse_children(node, lambda child: reduce(ctx, child)))
        if on_step is not None and with_reduced_child is not node:
            on_step(with_reduced_child)
        reduced_once = unify(ctx, reduction_rule(ctx, with_reduced_child))
        if reduced_once is with_reduced_child:
            return reduced_once
        if on_step is not None:
            on_step(reduced_once)
        return reduce(ctx, reduced_once, on_step)

    return cyclic_memoize(ctx, "reduce", node, transform, make_mu=_wrap_mu(ctx))
