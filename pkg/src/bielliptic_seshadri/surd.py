"""Exact nonnegative numbers of the form sqrt(q), q rational, compared without floats."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def _exact_sqrt(q: Fraction) -> Fraction | None:
    p, d = q.numerator, q.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


@dataclass(frozen=True, order=True)
class BoundValue:
    """The nonnegative real ``sqrt(radicand)``.

    Rationals ``q`` are stored as ``q**2``; since every value is nonnegative,
    ordering by radicand is ordering by value.
    """

    radicand: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")

    @classmethod
    def rational(cls, q: Fraction | int | str) -> BoundValue:
        q = Fraction(q)
        if q < 0:
            raise ValueError("bound values are nonnegative")
        return cls(q * q)

    @classmethod
    def sqrt(cls, q: Fraction | int | str) -> BoundValue:
        return cls(Fraction(q))

    @classmethod
    def ratio(cls, num: int, den: int) -> BoundValue:
        return cls.rational(Fraction(num, den))

    @classmethod
    def parse(cls, text: str) -> BoundValue:
        """Parse ``"4/3"``, ``"2"`` or ``"sqrt(15/16)"``."""
        text = text.strip().replace(" ", "")
        if text.startswith("sqrt(") and text.endswith(")"):
            return cls.sqrt(_parse_fraction(text[5:-1]))
        return cls.rational(_parse_fraction(text))

    def __mul__(self, other: BoundValue) -> BoundValue:
        return BoundValue(self.radicand * other.radicand)

    def is_rational(self) -> bool:
        return _exact_sqrt(self.radicand) is not None

    def as_fraction(self) -> Fraction:
        root = _exact_sqrt(self.radicand)
        if root is None:
            raise ValueError(f"{self} is irrational")
        return root

    def approx(self, places: int = 6) -> str:
        """Decimal expansion rounded to ``places``; for display only."""
        with localcontext() as ctx:
            ctx.prec = places + 30
            value = (Decimal(self.radicand.numerator) / Decimal(self.radicand.denominator)).sqrt()
            return str(value.quantize(Decimal(1).scaleb(-places)))

    def __float__(self) -> float:
        return math.sqrt(self.radicand)

    def __str__(self) -> str:
        root = _exact_sqrt(self.radicand)
        if root is not None:
            return str(root)
        return f"sqrt({self.radicand})"

    def compare_ratio(self, num: int, den: int) -> int:
        """Sign of ``num/den - self`` computed in integers (``num >= 0``, ``den > 0``)."""
        lhs = num * num * self.radicand.denominator
        rhs = self.radicand.numerator * den * den
        return (lhs > rhs) - (lhs < rhs)

    def to_dict(self) -> dict:
        return {
            "radicand": str(self.radicand),
            "display": str(self),
            "rational": self.is_rational(),
            "approx": self.approx(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> BoundValue:
        return cls.sqrt(_parse_fraction(d["radicand"]))
