"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class FMBError(Exception):
    """Base class for every error raised by the package."""


# field construction
class NotPrime(FMBError):
    pass


class ReducibleModulus(FMBError):
    pass


class DegreeMismatch(FMBError):
    pass


class DivisionByZero(FMBError, ZeroDivisionError):
    pass


# groups
class OrderMismatch(FMBError):
    pass


class RelationViolation(FMBError):
    pass


class InconsistentPresentation(FMBError):
    pass


class UnknownLabel(FMBError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class BadParams(FMBError, ValueError):
    pass


class OrderOverflow(FMBError):
    pass


class NotPGroup(FMBError):
    pass


# algebra
class DimensionMismatch(FMBError, ValueError):
    pass


class CharacteristicMismatch(FMBError):
    pass


class BadTruncation(FMBError, ValueError):
    pass


# constructions / search


class NotAbelian(FMBError):
    pass


class FieldMismatch(FMBError, ValueError):
    pass


class NoCubeRoot(FMBError):
    pass


class RepairFailed(FMBError):
    pass


class BudgetExhausted(FMBError):
    """Raised when a node or configuration budget runs out."""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class SearchExhausted(BudgetExhausted):
    pass


# certificates
class ParseError(FMBError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VersionMismatch(ParseError):
    pass
