"""Exception hierarchy shared by every module."""


class LanguageError(Exception):
    """Base class for all errors raised by synsub."""


class DuplicateStringConflict(LanguageError):
    pass


class SymbolOutsideAlphabet(LanguageError):
    pass


class LengthExceedsHorizon(LanguageError):
    pass


class OracleInconsistent(LanguageError):
    pass


class NotWellFormed(LanguageError):
    pass


class PreconditionNotMet(LanguageError):
    """A property the operation depends on does not hold.

    ``report`` carries the failing :class:`~synsub.checkers.CheckReport`
    (and therefore its witness) when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class GenerationExhausted(LanguageError):
    pass


class PredicatePassesOnInput(LanguageError):
    pass


class ParseError(LanguageError):
    def __init__(self, message, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


class ReportIOError(LanguageError, OSError):
    pass
