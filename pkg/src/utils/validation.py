"""
Validation utilities for common validation tasks.
"""
from src.utils.exceptions import InputError


def validate_subdivision(k: int) -> int:
    """
    Validate a subdivision parameter.

    Args:
        k: Number of new vertices per edge

    Returns:
        k, unchanged

    Raises:
        InputError: If k is negative or odd
    """
    if k < 0 or k % 2:
        raise InputError(f"Subdivision parameter must be a non-negative even integer, got {k}", {"k": k})
    return k


def validate_radius(radius: int, name: str = "radius") -> int:
    if radius < 0:
        raise InputError(f"{name} must be non-negative, got {radius}", {name: radius})
    return radius

