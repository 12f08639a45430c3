"""Exception hierarchy shared by every pipeline stage."""


class QfsumError(Exception):
    """Base class for all errors raised by this package."""


class LexiconMissing(QfsumError):
    pass


class EmptyKeywords(QfsumError):
    """The query holds no noun or pronoun, so there is nothing to search for."""


class TreeParseError(QfsumError):
    pass


class TreeValidationError(QfsumError):
    pass


class BackendUnavailable(QfsumError):
    pass


class NoResults(QfsumError):
    pass


class CorpusError(QfsumError):
    """The fixture manifest is malformed."""


class NoAnswer(QfsumError):
    """No sentence of the document matched any keyword."""


class EmptyDocument(QfsumError):
    pass


class AllDocumentsFaulty(QfsumError):
    pass


class EmptySummary(QfsumError):
    pass


class DomainError(QfsumError, ValueError):
    """A numeric argument lies outside the domain of a formula."""


class EmptyScores(QfsumError, ValueError):
    pass


class NoUsableLatencies(QfsumError, ValueError):
    pass


class ConfigError(QfsumError):
    pass
