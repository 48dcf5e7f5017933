"""Exception hierarchy shared by all kanaflect modules."""


class KanaflectError(Exception):
    """Base class for all toolkit errors."""


class RejectedInput(KanaflectError):
    """Input text is outside the domain the toolkit accepts (e.g. non-hiragana)."""


class RuleDomainError(KanaflectError):
    """A lemma's final mora is illegal for the requested verb type."""


class UnclassifiableError(KanaflectError):
    """A (lemma, past) pair matches no rule in the type decision procedure."""

    def __init__(self, message, lemma=None, past=None):
        super().__init__(message)
        self.lemma = lemma
        self.past = past


class ParseError(KanaflectError):
    """Malformed line in a TSV stream."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class ValidationError(KanaflectError):
    """A dataset-level invariant is violated (duplicate lemma, excluded type)."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class ConfigError(KanaflectError):
    """Degenerate or inconsistent configuration value."""


class GenerationError(KanaflectError):
    """Synthetic generation could not satisfy its constraints."""


class JoinError(KanaflectError):
    """Prediction file does not join 1:1 against the gold test set."""

    def __init__(self, message, missing=(), extra=(), duplicates=()):
        super().__init__(message)
        self.missing = list(missing)
        self.extra = list(extra)
        self.duplicates = list(duplicates)


class ContractViolation(KanaflectError):
    """Caller broke a documented precondition."""
