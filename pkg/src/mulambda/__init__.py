"""A lambda calculus whose optimizer is also its evaluator.

Programs are parsed (`syntax`), optionally evaluated by a reference
interpreter (`interp`), compiled to a shared value graph (`ir`) and
normalized by memoized graph rewriting with hash-consing and mu-binders
(`rewrite`). Named input ports are closed by `ports`.
"""

__version__ = "0.1.0"
