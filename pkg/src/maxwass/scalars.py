"""Dual-mode scalar arithmetic shared by every module.

All quantities in this package are either *exact* (int / Fraction, kept
exact through every operation) or IEEE floats compared at tolerance.
The helpers here centralise parsing, formatting and the few arithmetic
operations where the two modes need different handling.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

Scalar = Union[int, float, Fraction]

#: comparison tolerance for float-mode quantities (distances, costs)
FLOAT_TOL = 1e-9
#: atoms closer than this merge into one support point in float mode
MERGE_TOL = 1e-12


class ConstraintError(ValueError):
    """A documented precondition was violated (CLI exit code 3)."""


class ParseError(ValueError):
    """Malformed input data or configuration (CLI exit code 2)."""


def is_exact(v: Scalar) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def to_exact(v) -> Fraction:
    """Coerce a scalar to an exact Fraction.

    Floats convert through their shortest decimal repr, so 0.1 becomes
    1/10 rather than the underlying binary fraction.
    """
    if isinstance(v, bool):
        raise ParseError("booleans are not scalars")
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(Decimal(repr(v)))
    if isinstance(v, str):
        return _fraction_from_str(v)
    raise ParseError(f"cannot interpret {v!r} as an exact scalar")


def _fraction_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return Fraction(Decimal(s))
    except InvalidOperation:
        raise ParseError(f"cannot parse scalar string {s!r}") from None


def parse_scalar(v) -> Scalar:
    """JSON value -> scalar.  ints and 'p/q' strings parse exact."""
    if isinstance(v, bool):
        raise ParseError("booleans are not scalars")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        return _fraction_from_str(v)
    raise ParseError(f"not a scalar: {v!r}")


def scalar_to_json(v: Scalar):
    """Scalar -> JSON value.  Exact scalars serialize as strings."""
    if is_exact(v):
        return str(Fraction(v))
    return float(v)


def halve(v: Scalar) -> Scalar:
    # Fraction(v, 2) so exact integer inputs stay exact
    return Fraction(v, 2) if is_exact(v) else v / 2


def is_integer_exponent(p) -> bool:
    if isinstance(p, bool):
        return False
    if isinstance(p, int):
        return True
    if isinstance(p, Fraction):
        return p.denominator == 1
    if isinstance(p, float):
        return p.is_integer()
    return False


def pow_p(v: Scalar, p) -> Scalar:
    """v**p, exact when v is exact and p is a whole number."""
    if is_exact(v) and is_integer_exponent(p):
        return v ** int(p)
    return float(v) ** float(p)


def root_p(v: Scalar, p) -> Scalar:
    """p-th root of a nonnegative scalar; exact only for p == 1."""
    if p == 1:
        return v
    return float(v) ** (1.0 / float(p))


def close(a: Scalar, b: Scalar, tol: float = FLOAT_TOL) -> bool:
    """Equality test honouring the arithmetic mode of the operands."""
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= tol
