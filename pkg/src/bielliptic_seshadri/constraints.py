"""Necessary conditions on an irreducible curve class through points with given multiplicities.

Every filter here is a lower bound on ``C^2`` or on intersection numbers:

* genus: curves on these surfaces have geometric genus >= 1 and ``K_S = 0``,
  so ``C^2 >= sum m_i (m_i - 1)``;
* Xu-type: a curve moving in a family with a point of multiplicity ``m >= 2``
  at a very general point has ``C^2 >= m (m - 1) + gon``; the multi-point form
  is ``C^2 >= sum m_i^2 - m_pivot + gon``;
* Bezout against the fibres through the points;
* Hodge index: ``(L.C)^2 >= L^2 C^2`` for ``L`` ample.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass

from .surd import BoundValue
from .surfaces import (
    DivisorClass,
    PointSpec,
    Position,
    SurfaceType,
    concrete_positions,
    fiber_classes_through,
    intersect,
    is_ample,
    self_intersection,
)

DEFAULT_GONALITY = 2


@dataclass(frozen=True)
class CurveCandidate:
    """A hypothetical irreducible curve class with multiplicities at the chosen points."""

    cls: DivisorClass
    mults: tuple[int, ...]
    gonality_floor: int = 2

    def __post_init__(self):
        object.__setattr__(self, "mults", tuple(self.mults))
        if self.cls.a < 0 or self.cls.b < 0:
            raise ValueError("candidate classes have nonnegative coordinates")
        if any(m < 1 for m in self.mults):
            raise ValueError("multiplicities must be positive")
        if self.gonality_floor < 2:
            raise ValueError("gonality floor is at least 2 on a non-rational surface")

    @property
    def alpha(self) -> int:
        return self.cls.a

    @property
    def beta(self) -> int:
        return self.cls.b

    def is_mixed(self) -> bool:
        return self.cls.a > 0 and self.cls.b > 0

    def sort_key(self):
        return (self.cls.a, self.cls.b, self.mults, self.gonality_floor)

    def to_dict(self) -> dict:
        return {
            "class": [self.cls.a, self.cls.b],
            "mults": list(self.mults),
            "gonality_floor": self.gonality_floor,
        }

    @classmethod
    def from_dict(cls, d: dict) -> CurveCandidate:
        return cls(DivisorClass(*d["class"]), tuple(d["mults"]), d["gonality_floor"])


def genus_floor(mults: Sequence[int]) -> int:
    if any(m < 1 for m in mults):
        raise ValueError("multiplicities must be positive")
    return sum(m * (m - 1) for m in mults)


def xu_floor(m: int, gon: int = DEFAULT_GONALITY) -> int:
    if m < 2:
        raise ValueError("the Xu-type bound needs multiplicity m >= 2")
    if gon < 2:
        raise ValueError("gonality is at least 2")
    return m * (m - 1) + gon


def _pivot_value(mults: Sequence[int], pivot: str | int) -> int:
    eligible = [m for m in mults if m >= 2]
    if not eligible:
        raise ValueError("the multi-point Xu-type bound needs some multiplicity >= 2")
    if pivot == "max":
        return max(eligible)
    if pivot == "min":
        return min(eligible)
    if isinstance(pivot, int) and pivot in eligible:
        return pivot
    raise ValueError(f"pivot must be 'max', 'min' or one of {sorted(set(eligible))}, got {pivot!r}")


def xu_floor_multi(
    mults: Sequence[int], gon: int = DEFAULT_GONALITY, pivot: str | int = "max"
) -> int:
    """``sum m_i^2 - m_pivot + gon`` where the pivot point is the one moving in the family.

    All points are very general, so any point of multiplicity >= 2 may serve as
    the pivot.  ``"max"`` (default) gives the weakest of these bounds,
    ``"min"`` the strongest; an integer selects that multiplicity explicitly.
    """
    if gon < 2:
        raise ValueError("gonality is at least 2")
    return sum(m * m for m in mults) - _pivot_value(mults, pivot) + gon


def hodge_ratio_floor(L: DivisorClass, c2_floor: int) -> BoundValue:
    """Lower bound ``sqrt(L^2 * c2_floor)`` for ``L.C`` when ``C^2 >= c2_floor``."""
    if not is_ample(L):
        raise ValueError(f"{L} is not ample")
    if c2_floor < 0:
        raise ValueError("c2_floor must be nonnegative")
    return BoundValue.sqrt(self_intersection(L) * c2_floor)


def _horizontal_fiber(s: SurfaceType, p: PointSpec) -> DivisorClass:
    if p.position is Position.ON_SINGULAR_FIBER:
        return s.singular_fiber(p.fiber_multiplicity)
    return s.general_fiber


def _check_concrete(points: Sequence[PointSpec]) -> None:
    if any(p.position is Position.ARBITRARY for p in points):
        raise ValueError("expand 'arbitrary' points into concrete positions first")


def bezout_constraints(
    s: SurfaceType, c: CurveCandidate, points: Sequence[PointSpec]
) -> list[tuple[DivisorClass, int]]:
    """Pairs ``(F, t)`` meaning ``C.F >= t`` for a fibre ``F`` meeting ``C`` in points of total multiplicity ``t``.

    Each point gets its own vertical fibre.  Horizontal fibres: very general
    points lie on pairwise distinct general fibres, other points sharing a
    position spec share one fibre.
    """
    _check_concrete(points)
    if len(points) != len(c.mults):
        raise ValueError("need one multiplicity per point")
    for p in points:
        p.validate(s)
    out: list[tuple[DivisorClass, int]] = []
    for m in c.mults:
        out.append((s.vertical_fiber, m))
    shared: dict[PointSpec, int] = defaultdict(int)
    for p, m in zip(points, c.mults):
        if p.position is Position.VERY_GENERAL:
            out.append((s.general_fiber, m))
        else:
            shared[p] += m
    for p in sorted(shared):
        out.append((_horizontal_fiber(s, p), shared[p]))
    return out


def _fiber_candidate_ok(s: SurfaceType, c: CurveCandidate, points: Sequence[PointSpec]) -> bool:
    # Fibres are smooth elliptic curves: multiplicity 1 wherever they pass.
    if not points or c.cls == DivisorClass(0, 0) or any(m != 1 for m in c.mults):
        return False
    if len(points) == 1:
        return c.cls in fiber_classes_through(s, points[0])
    first = points[0]
    return (
        all(p == first for p in points)
        and first.position is not Position.VERY_GENERAL
        and c.cls == _horizontal_fiber(s, first)
    )


def _feasible_at(
    s: SurfaceType,
    L: DivisorClass,
    c: CurveCandidate,
    points: Sequence[PointSpec],
    use_xu: bool,
    pivot: str | int,
) -> bool:
    if not c.is_mixed():
        return _fiber_candidate_ok(s, c, points)
    c2 = self_intersection(c.cls)
    if c2 < genus_floor(c.mults):
        return False
    if (
        use_xu
        and max(c.mults, default=0) >= 2
        and all(p.position is Position.VERY_GENERAL for p in points)
        and c2 < xu_floor_multi(c.mults, c.gonality_floor, pivot)
    ):
        return False
    for fiber, total in bezout_constraints(s, c, points):
        if intersect(c.cls, fiber) < total:
            return False
    lc = intersect(L, c.cls)
    return lc * lc >= self_intersection(L) * c2


def expand_points(s: SurfaceType, points: Sequence[PointSpec]) -> list[tuple[PointSpec, ...]]:
    """All concrete placements of ``points``, replacing each ``Arbitrary`` by every position."""
    choices = [
        concrete_positions(s) if p.position is Position.ARBITRARY else [p] for p in points
    ]
    return [tuple(combo) for combo in itertools.product(*choices)]


def is_feasible(
    s: SurfaceType,
    L: DivisorClass,
    c: CurveCandidate,
    points: Sequence[PointSpec],
    use_xu: bool = True,
    pivot: str | int = "max",
) -> bool:
    """True iff ``c`` survives every filter for at least one concrete placement of the points."""
    if not is_ample(L):
        raise ValueError(f"{L} is not ample")
    if len(points) != len(c.mults):
        raise ValueError("need one multiplicity per point")
    for p in points:
        p.validate(s)
    return any(
        _feasible_at(s, L, c, placed, use_xu, pivot) for placed in expand_points(s, points)
    )
