"""Number formatting for byte-stable reports."""

import math

FLOAT_FORMAT = "%.10g"


def format_float(value: float | None) -> str:
    """Format a value with 10 significant digits; absent values become empty."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return FLOAT_FORMAT % value
