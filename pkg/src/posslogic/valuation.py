"""The valuation lattice: weights ``(N a)`` and ``(Pi b)`` with exact degrees.

Every ``(Pi b)`` lies below every ``(N a)`` (``a > 0``); inside one mode the
degrees compare as numbers.  ``(N 1)`` is the top, ``(Pi 0)`` the bottom.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DegreeLike = Union[Fraction, int, str]


class Mode(str, enum.Enum):
    N = "N"
    PI = "Pi"

    def __str__(self) -> str:
        return self.value


def as_degree(value: DegreeLike) -> Fraction:
    """Coerce to an exact rational.  Floats are refused on purpose."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"degrees must be exact (str, int or Fraction), got {value!r}")
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Valuation:
    mode: Mode
    degree: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "degree", as_degree(self.degree))
        if not 0 <= self.degree <= 1:
            raise ValueError(f"degree {self.degree} outside [0, 1]")
        if self.mode is Mode.N and self.degree == 0:
            raise ValueError("necessity degree must be strictly positive")

    @property
    def is_necessity(self) -> bool:
        return self.mode is Mode.N

    @property
    def is_possibility(self) -> bool:
        return self.mode is Mode.PI

    def _key(self):
        return (1 if self.mode is Mode.N else 0, self.degree)

    def __lt__(self, other: Valuation) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: Valuation) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: Valuation) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: Valuation) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self._key() >= other._key()

    def __mul__(self, other: Valuation) -> Valuation:
        return val_combine(self, other)

    def __str__(self) -> str:
        return f"{self.mode} {format_degree(self.degree)}"

    def __repr__(self) -> str:
        return f"Valuation({str(self)!r})"


def N(degree: DegreeLike) -> Valuation:
    return Valuation(Mode.N, as_degree(degree))


def Pi(degree: DegreeLike) -> Valuation:
    return Valuation(Mode.PI, as_degree(degree))


TOP = N(1)
BOTTOM = Pi(0)


def val_leq(v1: Valuation, v2: Valuation) -> bool:
    return v1 <= v2


def val_combine(v1: Valuation, v2: Valuation) -> Valuation:
    """Weight of a resolvent whose parents carry ``v1`` and ``v2``."""
    if v1.is_necessity and v2.is_necessity:
        return N(min(v1.degree, v2.degree))
    if v1.is_possibility and v2.is_possibility:
        return BOTTOM
    nec, pos = (v1, v2) if v1.is_necessity else (v2, v1)
    # strict: a + b == 1 gives nothing
    if nec.degree + pos.degree > 1:
        return pos
    return BOTTOM


def format_degree(degree: Fraction) -> str:
    """Shortest exact decimal, or ``p/q`` when no finite decimal exists."""
    degree = as_degree(degree)
    if degree.denominator == 1:
        return str(degree.numerator)
    den = degree.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{degree.numerator}/{degree.denominator}"
    digits = max(twos, fives)
    scaled = degree * 10**digits
    assert scaled.denominator == 1
    sign = "-" if scaled < 0 else ""
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def parse_valuation(text: str) -> Valuation:
    """``"N 0.3"``, ``"Pi 0.7"``, ``"P 1/3"`` -> Valuation."""
    parts = text.split()
    if len(parts) != 2:
        raise ValueError(f"expected '<mode> <degree>', got {text!r}")
    mode, degree = parts
    if mode == "N":
        return N(degree)
    if mode in ("Pi", "P"):
        return Pi(degree)
    raise ValueError(f"unknown valuation mode {mode!r}")
