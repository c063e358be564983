"""The seven hyperelliptic surface types and the intersection form on Num(S).

Num(S) is a rank-2 lattice with basis ``e1 = A/mu`` and ``e2 = (mu/gamma) B``,
where ``A`` and ``B`` are the fibre classes of the two projections,
``gamma = |G|`` and ``mu`` is the lcm of the multiple-fibre multiplicities.
From ``A^2 = B^2 = 0`` and ``A.B = gamma`` one gets ``e1^2 = e2^2 = 0`` and
``e1.e2 = 1``, so ``(a, b).(a', b') = a b' + a' b`` for every type.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class DivisorClass:
    """A numerical class ``a * A/mu + b * (mu/gamma) B``."""

    a: int
    b: int

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __mul__(self, n: int) -> DivisorClass:
        return DivisorClass(n * self.a, n * self.b)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.a
        yield self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    @classmethod
    def parse(cls, text: str) -> DivisorClass:
        """Parse ``"a,b"`` (parentheses optional)."""
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


def intersect(c1: DivisorClass, c2: DivisorClass) -> int:
    return c1.a * c2.b + c2.a * c1.b


def self_intersection(c: DivisorClass) -> int:
    return intersect(c, c)


def is_ample(c: DivisorClass) -> bool:
    return c.a > 0 and c.b > 0


def euler_char(c: DivisorClass) -> int:
    """chi(D) = ab; this is also h^0(D) when D is ample."""
    return c.a * c.b


@dataclass(frozen=True)
class SurfaceType:
    """One row of Serrano's classification table."""

    id: int
    group: str
    group_order: int
    singular_fiber_multiplicities: tuple[int, ...]

    @property
    def mu(self) -> int:
        return math.lcm(*self.singular_fiber_multiplicities)

    @property
    def b_fiber_coeff(self) -> int:
        # B = (gamma/mu) e2
        return self.group_order // self.mu

    @property
    def admissible_horizontal_n(self) -> tuple[int, ...]:
        ns = {self.mu // m for m in self.singular_fiber_multiplicities}
        ns.add(self.mu)
        return tuple(sorted(ns))

    @property
    def basis_labels(self) -> tuple[str, str]:
        ratio = Fraction(self.mu, self.group_order)
        if ratio == 1:
            b_label = "B"
        elif ratio.numerator == 1:
            b_label = f"B/{ratio.denominator}"
        else:
            b_label = f"({ratio})B"
        return f"A/{self.mu}", b_label

    @property
    def vertical_fiber(self) -> DivisorClass:
        return DivisorClass(0, self.b_fiber_coeff)

    @property
    def general_fiber(self) -> DivisorClass:
        """The class of a general fibre ``A``."""
        return DivisorClass(self.mu, 0)

    def singular_fiber(self, multiplicity: int) -> DivisorClass:
        """Reduced class ``A/m`` of a multiple fibre of multiplicity ``m``."""
        if multiplicity not in self.singular_fiber_multiplicities:
            raise ValueError(
                f"type {self.id} has no multiple fibre of multiplicity {multiplicity}"
            )
        return DivisorClass(self.mu // multiplicity, 0)

    def is_odd(self) -> bool:
        return self.id % 2 == 1

    def as_record(self) -> dict:
        e1, e2 = self.basis_labels
        return {
            "type": self.id,
            "group": self.group,
            "group_order": self.group_order,
            "singular_fiber_multiplicities": list(self.singular_fiber_multiplicities),
            "mu": self.mu,
            "basis": [e1, e2],
            "b_fiber_coeff": self.b_fiber_coeff,
            "admissible_horizontal_n": list(self.admissible_horizontal_n),
        }


SURFACE_TYPES: dict[int, SurfaceType] = {
    s.id: s
    for s in (
        SurfaceType(1, "Z2", 2, (2, 2, 2, 2)),
        SurfaceType(2, "Z2xZ2", 4, (2, 2, 2, 2)),
        SurfaceType(3, "Z4", 4, (2, 4, 4)),
        SurfaceType(4, "Z4xZ2", 8, (2, 4, 4)),
        SurfaceType(5, "Z3", 3, (3, 3, 3)),
        SurfaceType(6, "Z3xZ3", 9, (3, 3, 3)),
        SurfaceType(7, "Z6", 6, (2, 3, 6)),
    )
}


def surface(type_id: int) -> SurfaceType:
    try:
        return SURFACE_TYPES[type_id]
    except KeyError:
        raise ValueError(f"hyperelliptic surface type must be 1..7, got {type_id}") from None


def is_effective_vertical(s: SurfaceType, b: int) -> bool:
    """Whether the class ``(0, b)`` is effective, i.e. ``b * mu / gamma`` is a natural number."""
    if b < 0:
        raise ValueError("vertical effectivity is only defined for b >= 0")
    return (b * s.mu) % s.group_order == 0


class Position(enum.Enum):
    ON_SINGULAR_FIBER = "singular"
    ON_GENERAL_FIBER = "general-fiber"
    VERY_GENERAL = "very-general"
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class PointSpec:
    """Where a point sits relative to the elliptic fibration with multiple fibres.

    ``fiber_multiplicity`` is set only for points on a multiple fibre.
    """

    position: Position
    fiber_multiplicity: int | None = None

    def __post_init__(self):
        on_singular = self.position is Position.ON_SINGULAR_FIBER
        if on_singular != (self.fiber_multiplicity is not None):
            raise ValueError("fiber_multiplicity is required exactly for singular-fibre points")

    def __lt__(self, other: PointSpec) -> bool:
        return str(self) < str(other)

    @classmethod
    def singular(cls, multiplicity: int) -> PointSpec:
        return cls(Position.ON_SINGULAR_FIBER, multiplicity)

    @classmethod
    def general_fiber(cls) -> PointSpec:
        return cls(Position.ON_GENERAL_FIBER)

    @classmethod
    def very_general(cls) -> PointSpec:
        return cls(Position.VERY_GENERAL)

    @classmethod
    def arbitrary(cls) -> PointSpec:
        return cls(Position.ARBITRARY)

    @classmethod
    def parse(cls, text: str) -> PointSpec:
        """Parse ``arbitrary``, ``very-general``, ``general-fiber`` or ``singular:M``."""
        text = text.strip().lower()
        if text.startswith("singular:"):
            return cls.singular(int(text.split(":", 1)[1]))
        try:
            return cls(Position(text))
        except ValueError:
            raise ValueError(f"unknown point position {text!r}") from None

    def __str__(self) -> str:
        if self.position is Position.ON_SINGULAR_FIBER:
            return f"singular:{self.fiber_multiplicity}"
        return self.position.value

    def validate(self, s: SurfaceType) -> None:
        if (
            self.position is Position.ON_SINGULAR_FIBER
            and self.fiber_multiplicity not in s.singular_fiber_multiplicities
        ):
            raise ValueError(
                f"type {s.id} has no multiple fibre of multiplicity {self.fiber_multiplicity}"
            )


def concrete_positions(s: SurfaceType) -> list[PointSpec]:
    """Every concrete position a point of ``s`` can occupy (what ``Arbitrary`` ranges over)."""
    specs = [PointSpec.singular(m) for m in sorted(set(s.singular_fiber_multiplicities))]
    specs += [PointSpec.general_fiber(), PointSpec.very_general()]
    return specs


def fiber_classes_through(s: SurfaceType, p: PointSpec) -> list[DivisorClass]:
    """Classes of the (reduced, irreducible) fibres through a point in position ``p``.

    For ``Arbitrary`` this is the union over all concrete positions.
    """
    p.validate(s)
    if p.position is Position.ARBITRARY:
        found = {c for q in concrete_positions(s) for c in fiber_classes_through(s, q)}
        return sorted(found)
    horizontal = (
        s.singular_fiber(p.fiber_multiplicity)
        if p.position is Position.ON_SINGULAR_FIBER
        else s.general_fiber
    )
    return [s.vertical_fiber, horizontal]


def serrano_table() -> list[dict]:
    return [SURFACE_TYPES[i].as_record() for i in sorted(SURFACE_TYPES)]
