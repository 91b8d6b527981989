"""Exception hierarchy shared by all lexinfo modules."""


class LexInfoError(Exception):
    """Base class for every error raised by lexinfo."""


class DimensionError(LexInfoError, ValueError):
    pass


class IndexRangeError(LexInfoError, IndexError):
    pass


class DuplicateLinkError(LexInfoError, ValueError):
    pass


class MissingLinkError(LexInfoError, ValueError):
    pass


class VocabularyFullError(LexInfoError):
    """Every word of the potential vocabulary already has a link."""


class ParseError(LexInfoError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UndefinedMeasureError(LexInfoError, ValueError):
    """Measures need at least one link (M > 0)."""


class InvalidPlanError(LexInfoError, ValueError):
    pass


class RecycleRequiredError(InvalidPlanError):
    """The target word is already linked; use attach_old_word instead."""


class NotOldWordError(InvalidPlanError):
    """The target word is unlinked; use attach_new_word instead."""


class StrategyUnavailableError(LexInfoError):
    pass


class InvalidComparisonError(LexInfoError, ValueError):
    pass


class EnumerationTooLargeError(LexInfoError, ValueError):
    pass


class ConfigError(LexInfoError, ValueError):
    pass
