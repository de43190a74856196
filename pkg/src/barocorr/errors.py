"""Exception hierarchy.

Every error raised by the library derives from :class:`BarocorrError`. The
three families (series/statistics, ingest, configuration) map onto the CLI's
exit codes and diagnostic prefixes.
"""


class BarocorrError(Exception):
    """Base class for all library errors."""

    code = "E_GENERIC"


# -- series and statistics ---------------------------------------------------


class SeriesError(BarocorrError, ValueError):
    code = "E_STATS"


class EmptySeries(SeriesError):
    pass


class ConstantSeries(SeriesError):
    pass


class SeriesTooShort(SeriesError):
    pass


# shorter alias used by the statistics code
TooShort = SeriesTooShort


class LengthMismatch(SeriesError):
    pass


class BadWeights(SeriesError):
    pass


class BadRange(SeriesError):
    pass


class PatternTooLong(SeriesError):
    pass


class NoQualifyingDays(SeriesError):
    pass


class NoCandidates(SeriesError):
    pass


# -- ingest ------------------------------------------------------------------


class IngestError(BarocorrError, ValueError):
    code = "E_INGEST"


class ParseError(IngestError):
    def __init__(self, path, row, column, message):
        self.path = str(path)
        self.row = row
        self.column = column
        super().__init__(f"{self.path}: row {row}, column {column!r}: {message}")


class DuplicateDate(IngestError):
    def __init__(self, path, date):
        self.path = str(path)
        self.date = date
        super().__init__(f"{self.path}: duplicate date {date.isoformat()}")


class NonMonotonicDates(IngestError):
    pass


class MissingDates(IngestError):
    def __init__(self, path, dates):
        self.path = str(path)
        self.dates = list(dates)
        shown = ", ".join(d.isoformat() for d in self.dates[:5])
        more = "" if len(self.dates) <= 5 else f" (+{len(self.dates) - 5} more)"
        super().__init__(f"{self.path}: missing dates {shown}{more}")


class IncompleteDay(IngestError):
    def __init__(self, date, count):
        self.date = date
        self.count = count
        super().__init__(f"{date.isoformat()}: expected 48 readings, got {count}")


# -- configuration -----------------------------------------------------------


class ConfigError(BarocorrError, ValueError):
    code = "E_CONFIG"


class EmptyConfig(ConfigError):
    pass
