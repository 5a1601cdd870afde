"""Display formatting for exact rationals.

Values are kept exact (Fraction) or as computed (float) everywhere else;
rounding happens only here, half-up on the exact value.
"""

from fractions import Fraction


def round_half_up(value: Fraction | float | int, places: int) -> str:
    """Format `value` with exactly `places` decimals, rounding halves away from zero."""
    exact = value if isinstance(value, Fraction) else Fraction(value)
    scaled = abs(exact) * 10**places
    digits = str(int(scaled + Fraction(1, 2)))

    if places == 0:
        text = digits
    else:
        digits = digits.rjust(places + 1, "0")
        text = f"{digits[:-places]}.{digits[-places:]}"

    if exact < 0 and any(ch not in "0." for ch in text):
        return f"-{text}"
    return text


def trimmed(value: Fraction | float | int, places: int = 2) -> str:
    """Like `round_half_up` but drops trailing zeros: 62.50 -> 62.5, 99.00 -> 99."""
    text = round_half_up(value, places)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def percent(fraction: Fraction | float | int, places: int = 1) -> str:
    """Render a fraction of a total as a percentage value (0.5 -> '50.0')."""
    exact = fraction if isinstance(fraction, Fraction) else Fraction(fraction)
    return round_half_up(exact * 100, places)
