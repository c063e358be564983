"""Harbourne-Roe criterion for multi-point Seshadri constants at very general points.

If for every admissible ``(m, k)`` the least degree of an irreducible curve
with the corresponding multiplicities is large enough, then

    eps(L, r) >= sqrt(L^2 / r) * sqrt(1 - 1/(r mu)).

On a hyperelliptic surface the degree floors follow from Hodge index applied
to a lower bound on ``C^2`` (Riemann-Roch for ``m = 1``, the Xu-type lemma for
``m >= 2``).  Every check below is done on cross-multiplied integers or
``Fraction`` values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .certificates import Certificate, CertKind
from .constraints import DEFAULT_GONALITY, xu_floor_multi
from .surd import BoundValue
from .surfaces import DivisorClass, SurfaceType, is_ample, self_intersection

DEFAULT_MU = 8

RR_ASSUMPTION_NOTE = (
    "note: the m=1 floor uses h0(C) = C^2/2, which Riemann-Roch gives for ample C; "
    "ampleness of the class computing alpha_0(L, 1^[r]) is assumed, not checked"
)


class CriterionFailed(RuntimeError):
    """A Harbourne-Roe hypothesis could not be verified for the requested mu."""

    def __init__(self, report: HrReport):
        bad = [c.triple for c in report.checks if not c.passed]
        super().__init__(
            f"Harbourne-Roe check failed for r={report.r}, mu={report.mu}: "
            + ", ".join(str(t) for t in bad)
        )
        self.report = report


class Condition(enum.Enum):
    COND1 = "cond1"
    COND2 = "cond2"


@dataclass(frozen=True)
class AdmissibleTriple:
    r: int
    m: int
    k: int
    condition: Condition

    def __str__(self) -> str:
        return f"{self.condition.value}(r={self.r}, m={self.m}, k={self.k})"

    def multiplicities(self) -> list[int]:
        if self.condition is Condition.COND1:
            return [self.m] * self.r
        return [self.m] * (self.r - 1) + [self.m + self.k]

    def sort_key(self):
        return (self.condition.value, self.m, self.k)

    def to_dict(self) -> dict:
        return {"r": self.r, "m": self.m, "k": self.k, "condition": self.condition.value}

    @classmethod
    def from_dict(cls, d: dict) -> AdmissibleTriple:
        return cls(d["r"], d["m"], d["k"], Condition(d["condition"]))


def _alternating_k_order(k: int):
    return (abs(k), -k)


def admissible_k(r: int, m: int) -> list[int]:
    """Nonzero ``k`` with ``k^2 < r/(r-1) * min(m, m+k)``, ordered 1, -1, 2, -2, ..."""
    ks = []
    # k^2 < r/(r-1) * m <= 2m bounds |k|
    for k in range(-m + 1, 2 * m + 1):
        if k != 0 and k * k * (r - 1) < r * min(m, m + k):
            ks.append(k)
    return sorted(ks, key=_alternating_k_order)


def enumerate_triples(r: int, mu: int = DEFAULT_MU) -> list[AdmissibleTriple]:
    if r < 2 or mu < 1:
        raise ValueError("need r >= 2 and mu >= 1")
    triples = [AdmissibleTriple(r, m, 0, Condition.COND1) for m in range(1, mu)]
    m = 1
    while m * (r - 1) < mu:
        triples += [AdmissibleTriple(r, m, k, Condition.COND2) for k in admissible_k(r, m)]
        m += 1
    return triples


def c2_floor_for(triple: AdmissibleTriple, gon: int = DEFAULT_GONALITY) -> int:
    """Lower bound for ``C^2`` of a curve computing the relevant alpha_0."""
    r, m, k = triple.r, triple.m, triple.k
    if triple.condition is Condition.COND1:
        if m == 1:
            # h0(C) >= r + 1 and h0(C) = C^2 / 2
            return 2 * r + 2
        return xu_floor_multi([m] * r, gon)
    if m == 1:
        return xu_floor_multi([1] * (r - 1) + [1 + k], gon)
    # the moving point is one of the r-1 points of multiplicity m
    return xu_floor_multi([m] * (r - 1) + [m + k], gon, pivot=m)


def polynomial_check(r: int, m: int, k: int) -> int:
    """``8r^2k^2 - 8r^2m + 16r^2 + m^2r^2 + 2mrk - 8rk^2 + k^2``.

    Equals ``8r^2 * ((r-1)m^2 + (m+k)^2 - m + 2) - (mr+k)^2 (8r-1)``, so it is
    nonnegative exactly when the Xu floor meets the mu = 8 requirement.
    """
    return (
        8 * r * r * k * k
        - 8 * r * r * m
        + 16 * r * r
        + m * m * r * r
        + 2 * m * r * k
        - 8 * r * k * k
        + k * k
    )


def _target(triple: AdmissibleTriple) -> Fraction:
    if triple.condition is Condition.COND1:
        return Fraction(triple.m)
    return Fraction(triple.m * triple.r + triple.k, triple.r)


def required_degree(triple: AdmissibleTriple, mu: int, L2: int) -> BoundValue:
    """``target * sqrt(L^2 (r - 1/mu))``, the degree alpha_0 must reach."""
    return BoundValue.sqrt(_target(triple) ** 2 * L2 * (triple.r - Fraction(1, mu)))


def check_condition(
    triple: AdmissibleTriple, r: int, mu: int, L2: int, gon: int = DEFAULT_GONALITY
) -> tuple[bool, list[str]]:
    if triple.r != r:
        raise ValueError("triple belongs to a different r")
    c2 = c2_floor_for(triple, gon)
    target = _target(triple)
    # L.C >= sqrt(L^2 C^2) >= sqrt(L^2 c2), compared with target^2 L^2 (r - 1/mu)
    achieved = BoundValue.sqrt(L2 * c2)
    required = required_degree(triple, mu, L2)
    passed = achieved >= required
    trace = [
        f"{triple}: C^2 >= {c2}; need C^2 >= ({target})^2 * ({r} - 1/{mu}) "
        f"= {target ** 2 * (r - Fraction(1, mu))}: {'ok' if passed else 'FAILS'}"
    ]
    if triple.condition is Condition.COND1 and triple.m == 1:
        trace.append(RR_ASSUMPTION_NOTE)
    if triple.condition is Condition.COND2 and triple.m > 1 and mu == 8 and gon == 2:
        poly = polynomial_check(r, triple.m, triple.k)
        if (poly >= 0) != passed:
            raise AssertionError(f"polynomial route disagrees for {triple}")
        trace.append(f"  polynomial 8r^2k^2-8r^2m+16r^2+m^2r^2+2mrk-8rk^2+k^2 = {poly} >= 0")
    return passed, trace


@dataclass(frozen=True)
class TripleCheck:
    triple: AdmissibleTriple
    c2_floor: int
    required: BoundValue
    passed: bool

    def to_dict(self) -> dict:
        return {
            "triple": self.triple.to_dict(),
            "c2_floor": self.c2_floor,
            "required": self.required.to_dict(),
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> TripleCheck:
        return cls(
            AdmissibleTriple.from_dict(d["triple"]),
            d["c2_floor"],
            BoundValue.from_dict(d["required"]),
            d["passed"],
        )


@dataclass(frozen=True)
class HrReport:
    r: int
    mu: int
    L2: int
    checks: tuple[TripleCheck, ...]
    bound: BoundValue | None
    trace: tuple[str, ...] = field(default=(), compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "mu": self.mu,
            "L2": self.L2,
            "checks": [c.to_dict() for c in self.checks],
            "bound": self.bound.to_dict() if self.bound else None,
            "passed": self.passed,
            "trace": list(self.trace),
        }

    @classmethod
    def from_dict(cls, d: dict) -> HrReport:
        return cls(
            d["r"],
            d["mu"],
            d["L2"],
            tuple(TripleCheck.from_dict(c) for c in d["checks"]),
            BoundValue.from_dict(d["bound"]) if d["bound"] else None,
            tuple(d["trace"]),
        )


def hr_radicand(L2: int, r: int, mu: int) -> Fraction:
    return Fraction(L2, r) * (1 - Fraction(1, r * mu))


def verify_criterion(r: int, mu: int, L2: int, gon: int = DEFAULT_GONALITY) -> HrReport:
    checks = []
    trace = []
    for triple in sorted(enumerate_triples(r, mu), key=AdmissibleTriple.sort_key):
        passed, lines = check_condition(triple, r, mu, L2, gon)
        checks.append(
            TripleCheck(triple, c2_floor_for(triple, gon), required_degree(triple, mu, L2), passed)
        )
        trace += lines
    ok = all(c.passed for c in checks)
    bound = BoundValue.sqrt(hr_radicand(L2, r, mu)) if ok else None
    return HrReport(r, mu, L2, tuple(checks), bound, tuple(trace))


def hr_lower_bound(
    s: SurfaceType, L: DivisorClass, r: int, mu: int = DEFAULT_MU
) -> Certificate:
    """LowerBound ``sqrt(L^2/r * (1 - 1/(r mu)))`` for ``eps(L, r)``; raises ``CriterionFailed``."""
    if not is_ample(L):
        raise ValueError(f"{L} is not ample")
    if r < 2:
        raise ValueError("the Harbourne-Roe criterion needs r >= 2")
    report = verify_criterion(r, mu, self_intersection(L))
    if not report.passed:
        raise CriterionFailed(report)
    trace = (
        f"type {s.id}, L={L}, L^2={report.L2}, r={r}, mu={mu}",
        f"{len(report.checks)} admissible triples checked",
        *report.trace,
        f"eps(L,{r}) >= sqrt(L^2/r) * sqrt(1 - 1/(r mu)) = {report.bound}",
    )
    return Certificate(
        CertKind.LOWER, report.bound, "Harbourne-Roe criterion", trace=trace, report=report
    )


def hr_table_rows(r: int, mu: int = DEFAULT_MU) -> list[tuple[int, int, list[int]]]:
    """``(r, m, ks)`` rows of condition (2), ``k`` in the order 1, -1, 2, -2, ..."""
    rows: dict[int, list[int]] = {}
    for t in enumerate_triples(r, mu):
        if t.condition is Condition.COND2:
            rows.setdefault(t.m, []).append(t.k)
    return [(r, m, sorted(ks, key=_alternating_k_order)) for m, ks in sorted(rows.items())]


def format_hr_table(rs: list[int], mu: int = DEFAULT_MU) -> str:
    head = f"m<{mu}/(r-1)"
    lines = [f"r | {head} | possible k", f"--+-{'-' * len(head)}-+-----------"]
    for r in rs:
        rows = hr_table_rows(r, mu)
        for i, (_, m, ks) in enumerate(rows):
            label = str(r) if i == 0 else ""
            lines.append(f"{label:<2}| {m:<{len(head)}} | {','.join(map(str, ks))}")
        if rows:
            lines.append(f"--+-{'-' * len(head)}-+-----------")
    return "\n".join(lines)
