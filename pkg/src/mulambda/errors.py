"""Error taxonomy shared by every stage of the pipeline.

Each class carries a short ``tag`` used by the CLI and by ``.expect``
sidecars (``error fuel``, ``error type``, ...).
"""


class MuLambdaError(Exception):
    tag = "error"


class ReadError(MuLambdaError):
    tag = "syntax"

    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnbalancedParens(ReadError):
    pass


class InvalidToken(ReadError):
    pass


class UnexpectedSyntax(MuLambdaError):
    tag = "syntax"


class UnboundSymbol(MuLambdaError):
    tag = "unbound"


class TypeMismatch(MuLambdaError):
    tag = "type"


class FuelExhausted(MuLambdaError):
    tag = "fuel"

    def __init__(self, message="fuel exhausted"):
        super().__init__(message)


class CyclicExpansion(MuLambdaError):
    tag = "cyclic"


class PrimitiveError(MuLambdaError):
    tag = "primitive"


class StepBudgetExceeded(MuLambdaError):
    tag = "budget"
