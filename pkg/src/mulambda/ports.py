"""Named external-input ports and the pass that closes them."""

from __future__ import annotations

from typing import Mapping

from mulambda.ir import DeltaPort, Node, reachable, recurse_children
from mulambda.rewrite import DagContext, unify


def bind_ports(ctx: DagContext, root: Node, bindings: Mapping[str, Node]) -> Node:
    """Replace every bound `DeltaPort` under `root` by its bound node.

    Unbound ports stay where they are. Shared subgraphs are visited once,
    so sharing survives the rewrite.
    """
    memo: dict[Node, Node] = {}

    def go(node):
        if node in memo:
            return memo[node]
        if isinstance(node, DeltaPort) and node.name in bindings:
            result = bindings[node.name]
        else:
            result = recurse_children(node, go)
        memo[node] = result
        return result

    return unify(ctx, go(root))


def ports(root: Node) -> list[DeltaPort]:
    return [node for node in reachable(root) if isinstance(node, DeltaPort)]
