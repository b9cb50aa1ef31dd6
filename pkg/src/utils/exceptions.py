"""
Custom exceptions for the small cancellation and cubulation toolkit.
"""
from typing import Optional, Dict, Any

from src.utils.constants import (
    ERROR_MESSAGES,
    EXIT_INPUT_ERROR,
    EXIT_RESOURCE_BOUND,
    EXIT_VERIFICATION_FAILED,
)


class ToolkitError(Exception):
    """Base class for toolkit errors."""

    exit_code = EXIT_VERIFICATION_FAILED

    def __init__(self, message: str, error_code: str = None, details: Dict[str, Any] = None):
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(self.message)


class InputError(ToolkitError):
    """Raised when a presentation, word or parameter is malformed."""

    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str = "Invalid input", details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "INPUT_ERROR", details)


class NonNormalFormError(InputError):
    """Raised when a word is not an alternating sequence of non-trivial syllables."""

    def __init__(self, message: str = "Word is not in free product normal form",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.error_code = "NON_NORMAL_FORM"


class NotWeaklyCyclicallyReducedError(InputError):
    """Raised when a relator has mutually inverse first and last syllables."""

    def __init__(self, relator_index: int, message: str = None):
        super().__init__(
            message or f"Relator {relator_index} is not weakly cyclically reduced",
            {"relator_index": relator_index},
        )
        self.error_code = "NOT_WEAKLY_CYCLICALLY_REDUCED"


class NotSmallCancellationError(ToolkitError):
    """Raised when an operation needs a verified C'(1/6) presentation."""

    exit_code = EXIT_INPUT_ERROR

    def __init__(self, message: str = "Presentation has not passed the C'(1/6) check",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "NOT_SMALL_CANCELLATION", details)


class UndecidedError(ToolkitError):
    """Raised when a bounded search ends without a certified answer."""

    exit_code = EXIT_RESOURCE_BOUND

    def __init__(self, message: str = "Bounded search could not decide the query",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "UNDECIDED", details)


class IncompleteError(ToolkitError):
    """Raised when an answer would depend on cells outside the constructed ball."""

    exit_code = EXIT_RESOURCE_BOUND

    def __init__(self, message: str = "Query depends on cells outside the ball",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "INCOMPLETE", details)


class ResourceBoundError(ToolkitError):
    """Raised when a configured size bound is exceeded."""

    exit_code = EXIT_RESOURCE_BOUND

    def __init__(self, message: str = "Configured resource bound exceeded",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "RESOURCE_BOUND", details)


class FibreTruncationError(ResourceBoundError):
    """Raised when an attaching path leaves the fibre ball."""

    def __init__(self, message: str = "Attaching path leaves the fibre ball",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.error_code = "FIBRE_TRUNCATION"


class VerificationError(ToolkitError):
    """Raised when a mathematical invariant fails on a constructed object."""

    def __init__(self, message: str = "Invariant verification failed",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, "VERIFICATION_FAILED", details)


class ClassificationError(VerificationError):
    """Raised when a reduced diagram matches no branch of the classification."""

    def __init__(self, message: str = "Diagram is neither a single cell, a ladder, nor has three shells or spurs",
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.error_code = "CLASSIFICATION_FAILED"


def get_error_response(exception: ToolkitError) -> Dict[str, Any]:
    """
    Convert a toolkit exception to the machine-readable error format.

    Args:
        exception: Toolkit exception

    Returns:
        Error response dictionary
    """
    return {
        "error": {
            "code": exception.error_code,
            "summary": ERROR_MESSAGES.get(exception.error_code, "Toolkit error"),
            "message": exception.message,
            "details": exception.details,
            "exit_code": exception.exit_code,
        }
    }
