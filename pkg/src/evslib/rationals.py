"""Exact rational parsing and printing.

Every number that crosses a file or report boundary is a rational written as
"p/q" in lowest terms. Inputs may also be integers or decimal strings such as
"0.1" (parsed exactly, never through binary floating point).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError


def parse_rational(value) -> Fraction:
    """Parse an exact rational from "p/q", a decimal string, or an int."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # JSON floats are tolerated via their shortest decimal repr, which is
        # exact for values like 0.5 that users write literally.
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def fmt(q: Fraction) -> str:
    """Render as "p/q" in lowest terms; integers keep an explicit /1."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
