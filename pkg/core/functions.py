from fractions import Fraction
from math import comb
from typing import Iterator, Union

from core.errors import ConfigError

Number = Union[int, Fraction, float]

# Fixed significant digits keep report text identical across platforms
FLOAT_DIGITS = 12


def bits(mask: int) -> Iterator[int]:
    "Yields the positions of the set bits of mask, lowest first"

    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        return 0
    return comb(n, k)


def parse_rational(text: Union[str, int, float, Fraction]) -> Fraction:
    "Parses '2', '1/2' or '1.5' into an exact non-negative Fraction"

    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"Not a rational number: {text!r}") from e

    if value < 0:
        raise ConfigError(f"r must be non-negative, got {text!r}")
    return value


def parse_rational_list(text: str) -> list[Fraction]:
    return [parse_rational(item) for item in text.split(",") if item.strip()]


def format_number(value: Number) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return f"{value:.{FLOAT_DIGITS}g}"


def is_half_odd(r: Fraction) -> bool:
    "True when 2r is an odd integer"

    doubled = 2 * r
    return doubled.denominator == 1 and doubled.numerator % 2 == 1
