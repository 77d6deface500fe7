from __future__ import annotations


class MilnorError(Exception):
    """Base class for every error raised by the lab.

    ``code`` is the short machine-readable prefix printed by the command
    line front end.
    """

    code = "milnor-error"

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidContextError(MilnorError):
    code = "invalid-context"


class ContextMismatchError(MilnorError):
    code = "context-mismatch"


class IndexOutOfRangeError(MilnorError):
    code = "index-out-of-range"


class ExponentOverflowError(MilnorError):
    code = "exponent-overflow"


class NotDivisibleError(MilnorError):
    code = "not-divisible"


class ExteriorDivisorError(MilnorError):
    code = "exterior-divisor"


class InhomogeneousElementError(MilnorError):
    code = "inhomogeneous"


class NegativeExponentError(MilnorError):
    code = "negative-exponent"


class InvalidOperationError(MilnorError):
    code = "invalid-operation"


class ArityError(MilnorError):
    code = "arity-mismatch"


class ElementSyntaxError(MilnorError):
    code = "syntax-error"

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExpressionSyntaxError(MilnorError):
    code = "syntax-error"

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class UnknownIdentifierError(MilnorError):
    code = "unknown-identifier"


class NotInIndexSetError(MilnorError):
    code = "not-in-index-set"


class HypothesisViolationError(MilnorError):
    code = "hypothesis-violation"


class UnknownIdentityError(MilnorError):
    code = "unknown-identity"


class SelfCheckError(MilnorError):
    code = "self-check-failed"
