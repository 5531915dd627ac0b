"""Exception types shared across modules.

The CLI maps ValidationError (and subclasses) to exit code 2 and
BackendError to exit code 3.
"""


class QanliError(Exception):
    pass


class ValidationError(QanliError):
    """Malformed or contract-violating input data."""


class EmptyCorpusError(ValidationError):
    """An operation that needs at least one record got none."""


class JoinError(ValidationError):
    """Id-keyed inputs do not line up."""

    def __init__(self, message: str, missing_ids: list[str] | None = None):
        super().__init__(message)
        self.missing_ids = missing_ids or []


class BackendError(QanliError):
    """A model backend call failed.

    ``retriable`` distinguishes transport-level failures (worth retrying)
    from contract violations in the response (not worth retrying).
    """

    def __init__(self, message: str, retriable: bool = False):
        super().__init__(message)
        self.retriable = retriable
