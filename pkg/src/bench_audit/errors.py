"""Exception hierarchy shared across the package."""


class BenchAuditError(Exception):
    """Base class for all domain errors raised by bench_audit."""


# -- series / splitting -------------------------------------------------------

class HorizonTooLarge(BenchAuditError):
    pass


class EmbedOrderTooLarge(BenchAuditError):
    pass


# -- forecasters --------------------------------------------------------------

class SeriesTooShort(BenchAuditError):
    pass


class InvalidAlpha(BenchAuditError):
    pass


class AllZeroSeries(BenchAuditError):
    pass


class NegativeDemand(BenchAuditError):
    pass


class UnknownModel(BenchAuditError):
    pass


class ForecastGaps(BenchAuditError):
    """One or more (model, series) tasks failed; carries the gap list."""

    def __init__(self, gaps):
        self.gaps = list(gaps)
        lines = ", ".join(f"{m}/{d}/{s}: {why}" for m, d, s, why in self.gaps)
        super().__init__(f"forecast coverage gaps: {lines}")


# -- metrics ------------------------------------------------------------------

class LengthMismatch(BenchAuditError):
    pass


class EmptyInput(BenchAuditError):
    pass


class ZeroScale(BenchAuditError):
    pass


class MissingCoverage(BenchAuditError):
    def __init__(self, gaps):
        self.gaps = list(gaps)
        super().__init__(
            "missing coverage: " + ", ".join("/".join(g) for g in self.gaps)
        )


# -- rank engine --------------------------------------------------------------

class EmptySubset(BenchAuditError):
    pass


class UnknownColumns(BenchAuditError):
    pass


class InvalidSize(BenchAuditError):
    pass


# -- ingest -------------------------------------------------------------------

class ParseError(BenchAuditError):
    pass


class NonContiguousSteps(BenchAuditError):
    pass


class NonFiniteValue(BenchAuditError):
    pass


class EmptyFile(BenchAuditError):
    pass


class DuplicateTriple(BenchAuditError):
    pass


class ShapeMismatch(BenchAuditError):
    pass


class NonFiniteScore(BenchAuditError):
    pass


class DuplicateLabel(BenchAuditError):
    pass


class MetricMismatch(BenchAuditError):
    pass


class DatasetMismatch(BenchAuditError):
    pass


class DuplicateModel(BenchAuditError):
    pass


# -- report -------------------------------------------------------------------

class MismatchedCurveLengths(BenchAuditError):
    pass
