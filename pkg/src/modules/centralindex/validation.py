"""
Validation utilities and the error hierarchy for central-index analytics.

Every guard raises one of the exceptions below with a fully composed message,
so callers (including the CLI) only need to print ``str(error)``.
"""
import re
from typing import Optional


class CentralIndexError(Exception):
    """Base class for every error raised by the analytics package."""
    pass


class ValidationError(CentralIndexError):
    """Raised when input validation fails."""
    pass


class ParseError(ValidationError):
    """Raised when an input file cannot be parsed. Carries the offending line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RadiusUndefinedError(ValidationError):
    """Raised when a radius lies outside [1, h-1]."""
    pass


class UnknownEpochError(ValidationError):
    """Raised when an epoch label is not declared by the cohort."""
    pass


class UndefinedCorrelationError(CentralIndexError):
    """Raised when a Pearson coefficient cannot be computed."""
    pass


class InsufficientDataError(CentralIndexError):
    """Raised when no usable correlation cell exists."""
    pass


class UndefinedFitError(CentralIndexError):
    """Raised when the least-squares fit is degenerate."""
    pass


def validate_radius(j: int, h: int) -> bool:
    """
    Validate a central-index radius against the h-index.

    Args:
        j: Radius to validate
        h: h-index of the distribution

    Returns:
        bool: True if valid

    Raises:
        RadiusUndefinedError: If j is outside [1, h-1]

    Examples:
        >>> validate_radius(3, 4)
        True
        >>> validate_radius(4, 4)
        RadiusUndefinedError: radius 4 undefined for h=4 (valid radii: 1..3)
    """
    if isinstance(j, bool) or not isinstance(j, int):
        raise RadiusUndefinedError(f"radius must be an integer, got {j!r}")

    if h < 2:
        raise RadiusUndefinedError(
            f"radius {j} undefined for h={h} (no central index exists below h=2)"
        )

    if j < 1 or j > h - 1:
        raise RadiusUndefinedError(
            f"radius {j} undefined for h={h} (valid radii: 1..{h - 1})"
        )

    return True


def validate_non_negative_int(value, name: str) -> int:
    """
    Validate that a value is a non-negative integer.

    Returns:
        int: The value itself

    Raises:
        ValidationError: If value is not an int or is negative
    """
    # numpy integer scalars expose __index__; bool is excluded on purpose
    if isinstance(value, bool) or not hasattr(value, "__index__"):
        raise ValidationError(f"{name} must be an integer, got {value!r}")

    value = int(value)
    if value < 0:
        raise ValidationError(f"{name} must be non-negative, got {value}")

    return value


def validate_author_id(author: str) -> str:
    """Reject empty or whitespace-only author identifiers."""
    if not isinstance(author, str) or not author.strip():
        raise ValidationError(f"author id must be a non-empty string, got {author!r}")
    return author.strip()


def validate_epoch_label(epoch: str) -> str:
    """
    Validate an epoch (snapshot) label.

    Labels are free text but may not be empty or contain control characters.
    """
    if not isinstance(epoch, str) or not epoch.strip():
        raise ValidationError(f"epoch label must be a non-empty string, got {epoch!r}")

    if re.search(r"[\x00-\x1f]", epoch):
        raise ValidationError(f"epoch label contains control characters: {epoch!r}")

    return epoch.strip()


def validate_min_n(min_n: int) -> int:
    """Minimum paired sample size for a correlation cell (at least 2)."""
    min_n = validate_non_negative_int(min_n, "min_n")
    if min_n < 2:
        raise ValidationError(f"min_n must be at least 2, got {min_n}")
    return min_n


def validate_max_radius(max_radius: int) -> int:
    """Largest radius shown in matrices and index tables (at least 1)."""
    max_radius = validate_non_negative_int(max_radius, "max_radius")
    if max_radius < 1:
        raise ValidationError(f"max_radius must be at least 1, got {max_radius}")
    return max_radius
