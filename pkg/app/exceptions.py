"""Custom exception hierarchy for domain-specific error handling.

Provides clear separation between different failure modes so the CLI can
map each one to its own exit code.
"""

from typing import Optional


class FaultMatchError(Exception):
    """Base exception for all matcher-related errors."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ParseError(FaultMatchError):
    """Raised when an input file does not follow its documented format.

    ``details["line"]`` holds the 1-based line number when known.
    """
    pass


class DomainError(FaultMatchError):
    """Raised when an operation's preconditions are violated."""
    pass


class NotFoundError(DomainError):
    """Raised when a fault id is not present in the index."""
    pass


class DuplicateRecordError(DomainError):
    """Raised when two fault records share the same defect id."""
    pass


class EmptyCorpusError(DomainError):
    """Raised when a fault database holds no records."""
    pass


class ConfigurationError(FaultMatchError):
    """Raised when user-supplied tables are incomplete or inconsistent.

    Common causes:
    - Cost matrix without an entry for a character being aligned
    - Stem table mapping a word onto a stop word
    """
    pass


class StorageError(FaultMatchError):
    """Raised when a file cannot be read or written."""
    pass
