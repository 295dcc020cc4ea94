"""Scalar tower shared by every module.

Two arithmetic modes are supported. ``"exact"`` carries values as
:class:`fractions.Fraction` and refuses any operation whose result would be
irrational; ``"float"`` uses IEEE doubles. Infinite partition values are
``math.inf`` in both modes and are never fed into arithmetic directly.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import NumericModeConflict, SpecParseError

Number = Union[int, float, Fraction]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)
INF = math.inf

DEFAULT_TOL = 1e-10

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown numeric mode {mode!r}; expected one of {MODES}")
    return mode


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def coerce(x, mode: str) -> Number:
    """Convert ``x`` (number or ``"p/q"`` string) into the carrier of ``mode``."""
    if isinstance(x, str):
        x = parse_number(x)
    if is_inf(x):
        return INF
    if mode == EXACT:
        return Fraction(x)
    return float(x)


def one(mode: str) -> Number:
    return Fraction(1) if mode == EXACT else 1.0


def zero(mode: str) -> Number:
    return Fraction(0) if mode == EXACT else 0.0


def boltzmann(eigenvalue, beta, mode: str) -> Number:
    """exp(-beta * eigenvalue) in the given mode.

    In exact mode only the trivial case beta * eigenvalue == 0 is rational.
    """
    if mode == EXACT:
        if beta == 0 or eigenvalue == 0:
            return Fraction(1)
        raise NumericModeConflict(
            f"exp(-{beta} * {eigenvalue}) is not representable exactly; use float mode"
        )
    return math.exp(-float(beta) * float(eigenvalue))


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Equality for exact operands, absolute tolerance otherwise."""
    if is_inf(a) or is_inf(b):
        return a == b
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return a == b
    return abs(float(a) - float(b)) <= tol


def deviation(a, b) -> Number:
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return abs(Fraction(a) - Fraction(b))
    return abs(float(a) - float(b))


def parse_number(value) -> Number:
    """Parse a JSON scalar: numbers, ``"p/q"`` rationals and ``"inf"``."""
    if isinstance(value, bool):
        raise SpecParseError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float, Fraction)):
        return value
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return INF
        if _RATIONAL.match(s):
            return Fraction(s.replace(" ", ""))
        try:
            return float(s)
        except ValueError:
            pass
    raise SpecParseError(f"expected a number, got {value!r}")


def format_number(x) -> str:
    """Lossless text form: ``"p/q"`` for rationals, 17 significant digits for floats."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def json_number(x):
    """JSON-ready scalar: rationals become strings, floats stay numbers."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    return x
