"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` string; the CLI maps
codes onto its exit-code contract (2 for input problems, 3 for internal
invariant failures).
"""


class SroiqError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ConceptSyntaxError(SroiqError):
    """Malformed concept text; ``position`` is a 0-based character offset."""

    code = "syntax-error"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownNameError(SroiqError):
    code = "unknown-name"


class NameCategoryError(SroiqError):
    """A name was used in the wrong category (e.g. a nominal as a concept)."""

    code = "name-category"


class SignatureError(SroiqError):
    code = "signature"


class SignatureFileError(SroiqError):
    code = "signature-file"


class InterpretationFileError(SroiqError):
    code = "interpretation-file"


class EmptyDomainError(InterpretationFileError):
    code = "empty-domain"


class OrderError(SroiqError):
    """The supplied role order is not a strict partial order."""

    code = "order-invalid"


class SearchPreconditionError(SroiqError):
    code = "search-precondition"


class SearchInternalError(SroiqError):
    """The search produced a witness its own validator rejected."""

    code = "search-internal"


class StepLimitError(SroiqError):
    """Normalization exceeded its step budget; indicates an implementation bug."""

    code = "step-limit"


class RewriteInternalError(SroiqError):
    """A substitution node matched no rule, or a measure audit failed."""

    code = "rewrite-internal"


class UsageError(SroiqError):
    code = "usage"
