"""Exception types shared across the package."""


class BcilabError(Exception):
    """Base class for all errors raised by bcilab."""


class FormulaSyntaxError(BcilabError, ValueError):
    """Raised when formula or term text cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ResourceLimitError(BcilabError):
    """Raised when a request exceeds a configured size cap.

    This is distinct from a negative answer: callers asked for more work than
    the cap allows, so no answer was computed.
    """
