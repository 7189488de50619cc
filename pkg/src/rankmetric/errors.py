"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`RankMetricError`, so callers (and the CLI) can separate input and
validation failures from programming errors.
"""

from __future__ import annotations


class RankMetricError(Exception):
    """Base class for all package errors."""


# -- fields -----------------------------------------------------------------

class NotPrime(RankMetricError, ValueError):
    pass


class NotIrreducible(RankMetricError, ValueError):
    pass


class NotPrimitive(RankMetricError, ValueError):
    pass


class TableBudgetExceeded(RankMetricError, ValueError):
    pass


class DivisionByZero(RankMetricError, ZeroDivisionError):
    pass


class FieldMismatch(RankMetricError, TypeError):
    pass


class EvenCharacteristic(RankMetricError, ValueError):
    pass


class ZeroInput(RankMetricError, ValueError):
    pass


# -- linear algebra ---------------------------------------------------------

class NonSquare(RankMetricError, ValueError):
    pass


class DimensionMismatch(RankMetricError, ValueError):
    pass


class RowsExceedCols(RankMetricError, ValueError):
    pass


class RankDeficientInput(RankMetricError, ValueError):
    pass


# -- codes ------------------------------------------------------------------

class RankDeficientGenerator(RankMetricError, ValueError):
    pass


class LengthExceedsDegree(RankMetricError, ValueError):
    pass


class DependentEvaluationPoints(RankMetricError, ValueError):
    pass


class BadStep(RankMetricError, ValueError):
    pass


class SingularLeadingBlock(RankMetricError, ValueError):
    """The leading k x k block is singular, so the code cannot be MRD."""


class BudgetExceeded(RankMetricError, ValueError):
    pass


# -- criteria / constructions / search ---------------------------------------

class NotMrd(RankMetricError, ValueError):
    pass


class DimensionOutOfRange(RankMetricError, ValueError):
    pass


class GammaRejected(RankMetricError, ValueError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class MrdCheckFailed(RankMetricError, ValueError):
    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class SingularA(RankMetricError, ValueError):
    pass


class BadShard(RankMetricError, ValueError):
    pass


class EntryInBaseField(RankMetricError, ValueError):
    pass


class FormatError(RankMetricError, ValueError):
    """A JSON payload does not match the expected schema."""
