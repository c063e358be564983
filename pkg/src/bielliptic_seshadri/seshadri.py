"""Certified Seshadri constants of ample bundles on hyperelliptic surfaces.

Every function returns :class:`Certificate` objects whose ``trace`` replays
the case analysis that justifies the value, one line per case.
"""

from __future__ import annotations

from fractions import Fraction

from .certificates import Certificate, CertKind, Witness
from .constraints import CurveCandidate
from .harbourne_roe import DEFAULT_MU, hr_lower_bound
from .oracle import REPLAY_CASES, replay_contradiction
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

TYPE11 = DivisorClass(1, 1)

TAG_TYPE11 = "type (1,1) global constant"
TAG_TYPE11_ODD = "type (1,1), odd type: vertical fibre computes eps"
TAG_TYPE2_VG = "type (1,1) on type 2 at a very general point"
TAG_TYPE1 = "type 1 exact constant"
TAG_TYPES2TO7 = "types 2-7 lower bound"
TAG_UPPER = "upper bound sqrt(L^2/r)"
TAG_FIBER = "fibre through the point"


def _require_ample(L: DivisorClass) -> None:
    if not is_ample(L):
        raise ValueError(f"{L} is not ample")


def _fiber_witness(cls: DivisorClass, p: PointSpec) -> Witness:
    return Witness(CurveCandidate(cls, (1,)), (p,))


def _type11_cases(s: SurfaceType) -> list[str]:
    k, mu = s.b_fiber_coeff, s.mu
    lines = [
        f"case 1: C = B = (0,{k}) through any point: L.C/m = {k} >= 1",
        f"case 2: C = nA/{mu} = (n,0), n in {list(s.admissible_horizontal_n)}: L.C/m = n >= 1",
    ]
    # Bezout with B = (0,k) gives k*alpha >= m; with the worst horizontal fibre
    # A = (mu,0) through the point, mu*beta >= m.
    bezout = Fraction(1, k) if s.is_odd() else Fraction(1, k) + Fraction(1, mu)
    if s.is_odd():
        lines.append(f"case 3: C = (alpha,beta) mixed, Bezout with B: (alpha+beta)/m >= {bezout}")
    else:
        lines.append(
            f"case 3: C = (alpha,beta) mixed, Bezout with B and A/{mu}-fibres: "
            f"(alpha+beta)/m >= 1/{k} + 1/{mu} = {bezout}"
        )
    if bezout < 1:
        lines += [
            "  m = 1: (alpha+beta)/1 >= 2 > 1",
            "  m >= 2: genus C^2 >= m^2-m, Hodge (L.C)^2 >= 2 C^2, "
            "so L.C/m >= sqrt(2-2/m) >= 1",
        ]
    return lines


def epsilon_type11_global(s: SurfaceType) -> Certificate:
    """eps(L) = 1 for L of type (1,1), computed by the fibre A/mu."""
    p = PointSpec.singular(s.mu)
    witness = _fiber_witness(DivisorClass(1, 0), p)
    trace = [
        f"type {s.id}, L=(1,1), L^2=2",
        *_type11_cases(s),
        "hence eps(L,x) >= 1 at every point",
        f"witness: A/{s.mu} = (1,0) through a point of the multiplicity-{s.mu} fibre, L.C/m = 1",
    ]
    return Certificate(CertKind.EXACT, BoundValue.rational(1), TAG_TYPE11, witness, tuple(trace))


def epsilon_type11_at_point(s: SurfaceType, p: PointSpec) -> Certificate:
    p.validate(s)
    if p.position is Position.ARBITRARY:
        return epsilon_type11_global(s)
    if s.is_odd():
        trace = (
            f"type {s.id} is odd: B = (0,1) passes through every point with L.B = 1",
            "eps(L,x) >= eps(L) = 1",
        )
        return Certificate(
            CertKind.EXACT,
            BoundValue.rational(1),
            TAG_TYPE11_ODD,
            _fiber_witness(DivisorClass(0, 1), p),
            trace,
        )
    if s.id == 2 and p.position is Position.VERY_GENERAL:
        trace = []
        for case in REPLAY_CASES:
            replay = replay_contradiction(case)
            if not replay.inconsistent:
                raise AssertionError(f"replay {case} did not close")
            trace += replay.lines
        trace.append("hence eps(L,x) >= 4/3 at a very general point")
        return Certificate(
            CertKind.LOWER, BoundValue.ratio(4, 3), TAG_TYPE2_VG, trace=tuple(trace)
        )
    if DivisorClass(1, 0) in fiber_classes_through(s, p):
        return Certificate(
            CertKind.EXACT,
            BoundValue.rational(1),
            TAG_TYPE11,
            _fiber_witness(DivisorClass(1, 0), p),
            (f"A/{s.mu} = (1,0) passes through the point with L.C = 1", "eps(L,x) >= eps(L) = 1"),
        )
    return Certificate(
        CertKind.LOWER,
        BoundValue.rational(1),
        TAG_TYPE11,
        trace=("eps(L,x) >= eps(L) = 1",),
    )


def epsilon_type1_exact(L: DivisorClass) -> Certificate:
    """eps(L) = min(a, b) on a type-1 surface."""
    _require_ample(L)
    a, b = L.a, L.b
    trace = (
        "type 1, L = (a,b); Bezout bounds on L.C/m by curve type:",
        f"  C = B, any point: a = {a}",
        f"  C = A/2, point on a singular fibre: b = {b}",
        f"  C = A, point on a general fibre: 2b = {2 * b}",
        f"  C mixed, point on a singular fibre: a+b = {a + b}",
        f"  C mixed, point on a general fibre: a/2+b = {Fraction(a, 2) + b}",
        f"eps(L) = min(a,b) = {min(a, b)}",
    )
    if a <= b:
        witness = _fiber_witness(DivisorClass(0, 1), PointSpec.arbitrary())
    else:
        witness = _fiber_witness(DivisorClass(1, 0), PointSpec.singular(2))
    return Certificate(CertKind.EXACT, BoundValue.rational(min(a, b)), TAG_TYPE1, witness, trace)


def epsilon_lower_types2to7(s: SurfaceType, L: DivisorClass) -> Certificate:
    """eps(L) >= min(a, b), from L = min(a,b) (1,1) + N with N nef."""
    _require_ample(L)
    if s.id < 2:
        raise ValueError("this bound is stated for types 2..7")
    t = min(L.a, L.b)
    n = L - TYPE11 * t
    trace = (
        f"L = {L} = {t}*(1,1) + {n}, and {n} is nef",
        f"eps(L,x) >= {t}*eps((1,1),x) + eps({n},x) >= {t}*eps((1,1),x)",
        f"eps((1,1)) = 1, hence eps(L) >= {t}",
    )
    return Certificate(CertKind.LOWER, BoundValue.rational(t), TAG_TYPES2TO7, trace=trace)


def upper_bound_multipoint(L: DivisorClass, r: int) -> Certificate:
    _require_ample(L)
    if r < 1:
        raise ValueError("r must be positive")
    L2 = self_intersection(L)
    return Certificate(
        CertKind.UPPER,
        BoundValue.sqrt(Fraction(L2, r)),
        TAG_UPPER,
        trace=(f"eps(L,{r}) <= sqrt(L^2/r) = sqrt({L2}/{r})",),
    )


def fiber_upper_bound(s: SurfaceType, L: DivisorClass, p: PointSpec) -> Certificate:
    """eps(L,x) <= L.F for the cheapest fibre F through x (minimised over positions for ``Arbitrary``)."""
    p.validate(s)
    if p.position is Position.ARBITRARY:
        options = [
            (intersect(L, F), F, q)
            for q in concrete_positions(s)
            for F in fiber_classes_through(s, q)
        ]
        # prefer the vertical fibre on ties: it passes through every point
        vertical = [(lc, F, PointSpec.arbitrary()) for lc, F, q in options if F.a == 0]
        options = vertical + options
    else:
        options = [(intersect(L, F), F, p) for F in fiber_classes_through(s, p)]
    lc, F, q = min(options, key=lambda t: t[0])
    return Certificate(
        CertKind.UPPER,
        BoundValue.rational(lc),
        TAG_FIBER,
        _fiber_witness(F, q),
        (f"fibre {F} through the point ({q}): L.F/1 = {lc}",),
    )


def _single_point_certificates(s: SurfaceType, L: DivisorClass, p: PointSpec) -> list[Certificate]:
    certs: list[Certificate] = []
    if L == TYPE11:
        certs.append(epsilon_type11_at_point(s, p))
    if s.id == 1:
        exact = epsilon_type1_exact(L)
        if p.position is Position.ARBITRARY:
            certs.append(exact)
        else:
            certs.append(
                Certificate(
                    CertKind.LOWER,
                    exact.value,
                    TAG_TYPE1,
                    trace=exact.trace + ("eps(L,x) >= eps(L)",),
                )
            )
    else:
        certs.append(epsilon_lower_types2to7(s, L))
        if s.id == 2 and p.position is Position.VERY_GENERAL and L != TYPE11:
            t = min(L.a, L.b)
            certs.append(
                Certificate(
                    CertKind.LOWER,
                    BoundValue.ratio(4 * t, 3),
                    TAG_TYPE2_VG,
                    trace=(
                        f"L = {t}*(1,1) + nef, eps(L,x) >= {t}*eps((1,1),x) >= {t}*4/3",
                    ),
                )
            )
    fiber = fiber_upper_bound(s, L, p)
    lowers = [c for c in certs if c.kind is CertKind.LOWER]
    if lowers and not any(c.kind is CertKind.EXACT for c in certs):
        best = max(lowers, key=lambda c: c.value)
        if best.value == fiber.value:
            certs.append(
                Certificate(
                    CertKind.EXACT,
                    fiber.value,
                    f"{best.theorem_tag} + {TAG_FIBER}",
                    fiber.witness,
                    best.trace + fiber.trace + ("lower and upper bounds agree",),
                )
            )
    certs.append(fiber)
    certs.append(upper_bound_multipoint(L, 1))
    return certs


def best_known(
    s: SurfaceType,
    L: DivisorClass,
    p: PointSpec | None = None,
    r: int | None = None,
    mu: int = DEFAULT_MU,
) -> list[Certificate]:
    """All certificates that apply, sorted Exact < Lower < Upper.

    When an exact value is known only it and the ``sqrt(L^2/r)`` bound are kept.
    """
    _require_ample(L)
    if (p is None) == (r is None):
        raise ValueError("give exactly one of a point spec or a number of points")
    if r is not None and r < 1:
        raise ValueError("r must be positive")
    if p is None and r == 1:
        p = PointSpec.very_general()
    if p is not None:
        certs = _single_point_certificates(s, L, p)
    else:
        certs = [hr_lower_bound(s, L, r, mu), upper_bound_multipoint(L, r)]
    if not certs:
        raise RuntimeError("no theorem applies")
    exact = [c for c in certs if c.kind is CertKind.EXACT]
    if exact:
        certs = [exact[0]] + [c for c in certs if c.theorem_tag == TAG_UPPER]
    return sorted(certs, key=Certificate.sort_key)

