"""Nonnegative extended reals.

Values are plain ``float`` objects with ``math.inf`` standing for +∞. The
helpers below enforce the conventions floats do not give for free: no
negative values, no NaN, and 0·∞ = 0.
"""

import math
from collections.abc import Iterable
from typing import Final

type ExtNonnegReal = float

INF: Final[ExtNonnegReal] = math.inf
INF_LITERAL: Final[str] = "inf"


def ext(value: float | int | str) -> ExtNonnegReal:
    """Coerce a number or the ``"inf"`` literal into an extended real.

    Args:
        value: Nonnegative number, ``math.inf`` or the string ``"inf"``

    Returns:
        The value as a float

    Raises:
        ValueError: If the value is negative, NaN or an unknown string
    """
    if isinstance(value, str):
        if value.strip().lower() != INF_LITERAL:
            msg = f"Expected a number or {INF_LITERAL!r}, got {value!r}"
            raise ValueError(msg)
        return INF
    result = float(value)
    if math.isnan(result):
        msg = "Extended nonnegative reals cannot be NaN"
        raise ValueError(msg)
    if result < 0:
        msg = f"Extended nonnegative reals cannot be negative, got {result}"
        raise ValueError(msg)
    return result


def is_finite(value: ExtNonnegReal) -> bool:
    """Return True unless the value is +∞."""
    return value != INF


def ext_mul(scale: float, value: ExtNonnegReal) -> ExtNonnegReal:
    """Multiply with the 0·∞ = 0 convention.

    Args:
        scale: Nonnegative finite factor (a probability or a discount)
        value: Extended real

    Returns:
        ``scale * value``, or 0 when ``scale`` is zero
    """
    if scale == 0:
        return 0.0
    return scale * value


def ext_sum(values: Iterable[ExtNonnegReal]) -> ExtNonnegReal:
    """Correctly rounded sum; +∞ if any term is +∞.

    ``math.fsum`` is exact up to the final rounding, so the result does not
    depend on the order of the terms.
    """
    terms = list(values)
    if any(term == INF for term in terms):
        return INF
    return math.fsum(terms)


def format_ext(value: float, digits: int = 17) -> str:
    """Format for text output, using the ``"inf"`` literal for +∞."""
    if value == INF:
        return INF_LITERAL
    return format(value, f".{digits}g")
