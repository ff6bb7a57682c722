"""
Exact-number helpers: rationals from user input and complex rationals as (re, im) pairs.
"""
from fractions import Fraction
from numbers import Rational


def to_fraction(value) -> Fraction:
    """
    Convert user input to an exact rational.

    Floats are converted through their shortest decimal representation, so ``0.1`` becomes ``1/10``.

    Parameters
    ----------
    value : int, float, str, Fraction
        Value to convert. Strings may be integers, decimals or ``"p/q"``.

    Returns
    -------
    Fraction
        Exact rational value.

    Raises
    ------
    ValueError
        If the value is not finite or cannot be parsed.
    """
    if isinstance(value, bool):
        raise ValueError("Boolean is not a number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("Non-finite value can not be converted to a rational")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"Can not convert {value!r} to a rational")


def _split_complex(text: str) -> tuple[str, str]:
    # position of the sign that starts the imaginary part, skipping exponent signs
    for position in range(len(text) - 1, 0, -1):
        if text[position] in "+-" and text[position - 1] not in "eE":
            return text[:position], text[position:]
    return "", text


def parse_complex(value) -> tuple[Fraction, Fraction]:
    """
    Parse a complex number with rational parts.

    Accepted forms are ``"a"``, ``"a+bi"``, ``"a-b/ci"``, ``"bi"``, ``"-i"``, a Python ``complex``,
    or a ``(re, im)`` pair.

    Returns
    -------
    tuple[Fraction, Fraction]
        Real and imaginary parts.

    Raises
    ------
    ValueError
        If the text can not be parsed.
    """
    if isinstance(value, (tuple, list)):
        re_part, im_part = value
        return to_fraction(re_part), to_fraction(im_part)
    if isinstance(value, complex):
        return to_fraction(value.real), to_fraction(value.imag)
    if not isinstance(value, str):
        return to_fraction(value), Fraction(0)
    text = value.replace(" ", "")
    if not text:
        raise ValueError("Empty complex number")
    if text[-1] not in "ij":
        return to_fraction(text), Fraction(0)
    re_text, im_text = _split_complex(text[:-1])
    if im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = to_fraction(im_text.lstrip("+"))
    re_part = to_fraction(re_text) if re_text else Fraction(0)
    return re_part, im_part


def format_fraction(value: Fraction) -> str:
    """Render a rational as ``"num/den"``."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_complex(re_part: Fraction, im_part: Fraction) -> str:
    """Render a complex rational as ``"a+bi"`` with rational parts."""
    re_text = str(Fraction(re_part))
    im_value = Fraction(im_part)
    if im_value == 0:
        return re_text
    sign = "-" if im_value < 0 else "+"
    return f"{re_text}{sign}{abs(im_value)}i"
