"""Exact half-integer quantum numbers and the shared geometric primitives.

All selection rules (parity, triangle) are integer checks on doubled values,
never float comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Union

TWO_PI = 2.0 * math.pi

HalfIntLike = Union["HalfInt", int, float, str, Fraction]


@dataclass(frozen=True, order=True)
class HalfInt:
    """Half-integer stored exactly as its doubled value."""

    twice: int

    def __post_init__(self) -> None:
        if not isinstance(self.twice, int):
            raise TypeError(f"twice must be int, got {type(self.twice).__name__}")

    @classmethod
    def from_value(cls, value: HalfIntLike) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not a half-integer")
            return cls(int(doubled))
        doubled = 2.0 * float(value)
        rounded = round(doubled)
        if abs(doubled - rounded) > 1e-9:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(rounded))

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse "7/2", "3", or "3.5"."""
        s = text.strip()
        if "/" in s:
            num_str, den_str = s.split("/", 1)
            num = int(num_str)
            den = int(den_str)
            if den == 2:
                return cls(num)
            if den == 1:
                return cls(2 * num)
            raise ValueError(f"not a half-integer: {text!r}")
        if "." in s or "e" in s.lower():
            return cls.from_value(float(s))
        return cls(2 * int(s))

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def jjp1(self) -> float:
        """j(j+1), exact in the integer arithmetic before conversion."""
        return self.twice * (self.twice + 2) / 4.0

    def __float__(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"

    def __add__(self, other: "HalfInt | int") -> "HalfInt":
        o = HalfInt.from_value(other)
        return HalfInt(self.twice + o.twice)

    __radd__ = __add__

    def __sub__(self, other: "HalfInt | int") -> "HalfInt":
        o = HalfInt.from_value(other)
        return HalfInt(self.twice - o.twice)

    def __rsub__(self, other: "HalfInt | int") -> "HalfInt":
        o = HalfInt.from_value(other)
        return HalfInt(o.twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __mul__(self, other: int) -> "HalfInt":
        if not isinstance(other, int):
            return NotImplemented
        return HalfInt(self.twice * other)

    __rmul__ = __mul__

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))


def as_halfint(value: HalfIntLike) -> HalfInt:
    return HalfInt.from_value(value)


def halfint_range(lo: HalfInt, hi: HalfInt) -> Iterator[HalfInt]:
    """Values lo, lo+1, ..., hi (unit steps)."""
    t = lo.twice
    while t <= hi.twice:
        yield HalfInt(t)
        t += 2


def m_range(j: HalfInt) -> Iterator[HalfInt]:
    """Projections -j, -j+1, ..., j."""
    return halfint_range(-j, j)


def parity_phase(k: HalfIntLike) -> int:
    """(-1)**k for integer-valued k; rejects genuine half-integers."""
    h = as_halfint(k)
    if not h.is_integer:
        raise ValueError(f"(-1)**{h} is not real")
    return -1 if (h.twice // 2) % 2 else 1


class NormConvention(Enum):
    """Length assigned to an angular momentum vector of quantum number j."""

    JPlusHalf = "j+1/2"
    SqrtJJPlus1 = "sqrt(j(j+1))"

    def magnitude(self, j: HalfIntLike) -> float:
        h = as_halfint(j)
        if self is NormConvention.JPlusHalf:
            return (h.twice + 1) / 2.0
        return math.sqrt(h.jjp1())


@dataclass(frozen=True)
class JM:
    """A (j, m) pair with the projection constraint enforced."""

    j: HalfInt
    m: HalfInt

    def __post_init__(self) -> None:
        if self.j.twice < 0:
            raise ValueError(f"j must be non-negative, got {self.j}")
        if abs(self.m.twice) > self.j.twice:
            raise ValueError(f"|m| <= j violated: j={self.j}, m={self.m}")
        if (self.j.twice - self.m.twice) % 2 != 0:
            raise ValueError(f"j and m differ by a non-integer: j={self.j}, m={self.m}")


def _wrap_2pi(angle: float) -> float:
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    return wrapped


@dataclass(frozen=True)
class EulerAngles:
    """z-y-z Euler angles, wrapped to canonical ranges at construction."""

    phi: float
    theta: float
    chi: float

    def __post_init__(self) -> None:
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "theta", min(max(self.theta, 0.0), math.pi))
        object.__setattr__(self, "phi", _wrap_2pi(self.phi))
        object.__setattr__(self, "chi", _wrap_2pi(self.chi))


def theta_m(j: HalfIntLike, m: HalfIntLike,
            conv: NormConvention = NormConvention.JPlusHalf) -> float:
    """Polar angle of the classical vector with projection m: arccos(m/|j|)."""
    jh, mh = as_halfint(j), as_halfint(m)
    if jh.twice <= 0:
        raise ValueError("theta_m undefined for j = 0")
    if abs(mh.twice) > jh.twice:
        raise ValueError(f"|m| <= j violated: j={jh}, m={mh}")
    ratio = float(mh) / conv.magnitude(jh)
    return math.acos(min(1.0, max(-1.0, ratio)))


def triangle_ok(j1: HalfIntLike, j2: HalfIntLike, j3: HalfIntLike) -> bool:
    """Coupling selection rule: |j1-j2| <= j3 <= j1+j2 with integer perimeter."""
    a, b, c = as_halfint(j1).twice, as_halfint(j2).twice, as_halfint(j3).twice
    if min(a, b, c) < 0:
        raise ValueError("angular momenta must be non-negative")
    if (a + b + c) % 2 != 0:
        return False
    return abs(a - b) <= c <= a + b


def lambda_perp(j: HalfIntLike, m: HalfIntLike,
                conv: NormConvention = NormConvention.JPlusHalf) -> float:
    """Projection of the vector onto the XY plane, sqrt(J^2 - m^2)."""
    jh, mh = as_halfint(j), as_halfint(m)
    if abs(mh.twice) > jh.twice:
        raise ValueError(f"|m| <= j violated: j={jh}, m={mh}")
    big_j = conv.magnitude(jh)
    radicand = big_j * big_j - float(mh) * float(mh)
    if radicand < 0.0:
        if radicand < -1e-12:
            raise ValueError(f"negative radicand {radicand} for j={jh}, m={mh}")
        radicand = 0.0
    return math.sqrt(radicand)
