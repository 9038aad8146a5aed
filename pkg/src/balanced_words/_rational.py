from fractions import Fraction
from numbers import Rational

from .exceptions import DomainError


def to_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Strings may be decimals (``"0.59"``) or ratios (``"7/10"``). Floats are
    read through their shortest decimal repr, so ``0.59`` becomes ``59/100``
    rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def format_fraction(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def floor_div(r: Fraction) -> int:
    return r.numerator // r.denominator


def ceil_div(r: Fraction) -> int:
    return -((-r.numerator) // r.denominator)
