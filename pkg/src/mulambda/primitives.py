"""Integer operators shared by the interpreter and the IR constant folder."""

import operator

ARITHMETIC = {"+": operator.add, "-": operator.sub, "*": operator.mul}
COMPARISON = {"=": operator.eq, "<": operator.lt}
OPERATORS = {**ARITHMETIC, **COMPARISON}


def partial_name(name, value):
    """Name of `name` partially applied to the integer `value`, e.g. ``(+ 2)``."""
    return f"({name} {value})"
