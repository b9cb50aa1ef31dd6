"""
Helper utilities for common operations.
"""
import hashlib
from fractions import Fraction
from typing import Any, Union

import orjson


def hash_string(input_string: str, algorithm: str = 'sha256') -> str:
    """
    Hash a string using specified algorithm.

    Args:
        input_string: String to hash
        algorithm: Hashing algorithm (md5, sha1, sha256, etc.)

    Returns:
        Hashed string
    """
    hash_func = getattr(hashlib, algorithm)
    return hash_func(input_string.encode()).hexdigest()


def fingerprint(payload: Any) -> str:
    """
    Stable short fingerprint of a JSON-serialisable payload.

    Args:
        payload: Any value orjson can serialise (tuples become lists)

    Returns:
        First 16 hex digits of the sha256 of the sorted-key encoding
    """
    encoded = orjson.dumps(payload, option=orjson.OPT_SORT_KEYS | orjson.OPT_NON_STR_KEYS)
    return hash_string(encoded.decode())[:16]


def format_fraction(value: Union[Fraction, int]) -> str:
    """Render an exact rational as 'p/q' (or 'p' when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_exponent(base: str, exponent: int) -> str:
    if exponent == 1:
        return base
    return f"{base}^{exponent}"

