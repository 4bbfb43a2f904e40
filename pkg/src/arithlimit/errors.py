"""Exception hierarchy.

Every error carries a ``code`` (the class name) so the command line can emit
machine-readable error records.
"""


class ArithLimitError(Exception):
    """Base class for all library errors."""

    @property
    def code(self):
        return type(self).__name__


# numfield
class NotIrreducible(ArithLimitError):
    pass


class NotTotallyReal(ArithLimitError):
    pass


class UnsupportedDegree(ArithLimitError):
    pass


class DivisionByZero(ArithLimitError, ZeroDivisionError):
    pass


# quatalg
class RamifiedPlace(ArithLimitError):
    pass


# isometry
class DetNotOne(ArithLimitError):
    pass


class UndecidableOrder(ArithLimitError):
    pass


class NotHyperbolic(ArithLimitError):
    pass


class InfinityFixed(ArithLimitError):
    pass


class CommonFixedPoint(ArithLimitError):
    pass


class NotFound(ArithLimitError):
    pass


class NoTranslation(ArithLimitError):
    pass


# limitsets
class BudgetExceeded(ArithLimitError):
    pass


class NotStabilized(ArithLimitError):
    pass


class InconsistentInput(ArithLimitError):
    pass


class EmptySample(ArithLimitError):
    pass


class PreconditionError(ArithLimitError):
    pass


class Unverifiable(ArithLimitError):
    """Config has no hyperbolic tuple at small word length."""


# cli
class UnsupportedRank(ArithLimitError):
    pass


class NotIntegral(ArithLimitError):
    pass


class NormNotOne(ArithLimitError):
    pass


class ParseError(ArithLimitError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
