"""Exact rational parsing/formatting used across scenario files, CSV and reports.

Rationals travel as strings like ``"3/2"``, ``"-1/4"`` or ``"7"`` so that no
value ever passes through floating point on its way in or out.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text: str | int) -> Fraction:
    """Parse a ``p/q`` string (or a bare integer) into a Fraction.

    Raises ValueError for anything that is not an exact rational literal;
    decimal strings are rejected on purpose.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational literal: {text!r}") from exc


def format_rational(value: Fraction | int) -> str:
    """Canonical string form: ``"3/2"``, ``"-1/4"``, integers without ``/1``."""
    return str(Fraction(value))


def format_float(value: float) -> str:
    """Floats are reported with 12 significant digits."""
    return format(value, ".12g")


def canonical_float(value: float) -> float:
    """Round-trip a float through its 12-significant-digit decimal form.

    Report fields are canonicalized at construction so that emitting and
    re-parsing a report reproduces exactly equal numbers.
    """
    return float(format_float(value))
