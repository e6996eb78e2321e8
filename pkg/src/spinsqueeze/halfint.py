"""Half-integer quantum numbers stored exactly as twice their value."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AngularMomentumError


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer quantum number, stored as ``twice = 2j``.

    Magnitude-type numbers (j, s, k) are non-negative; projections (m, q)
    may be negative. Construction goes through :meth:`of`, which accepts
    ints, exact floats (1.5), strings ("3/2", "1.5", "2") and HalfInt.
    """

    twice: int

    @staticmethod
    def of(value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return HalfInt(2 * value)
        if isinstance(value, str):
            s = value.strip()
            if "/" in s:
                num, den = s.split("/", 1)
                frac = Fraction(int(num), int(den))
            else:
                frac = Fraction(s)
            value = frac
        if isinstance(value, float):
            value = Fraction(value)    # exact: valid inputs are binary halves
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise AngularMomentumError(
                    f"{value} is not an integer or half-integer")
            return HalfInt(int(doubled))
        raise AngularMomentumError(f"cannot interpret {value!r} as a half-integer")

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice + other.twice)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.twice - other.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def check_magnitude(j: HalfInt, name: str = "j") -> HalfInt:
    """Magnitude quantum numbers must be non-negative."""
    if j.twice < 0:
        raise AngularMomentumError(f"{name} = {j} must be non-negative")
    return j


def check_projection(j: HalfInt, m: HalfInt, names: str = "(j, m)") -> None:
    """A valid (j, m) pair has matching parity and |m| <= j."""
    if (j.twice - m.twice) % 2 != 0:
        raise AngularMomentumError(
            f"{names} = ({j}, {m}) mixes integer and half-integer values")
    if abs(m.twice) > j.twice:
        raise AngularMomentumError(f"{names} = ({j}, {m}) violates |m| <= j")
