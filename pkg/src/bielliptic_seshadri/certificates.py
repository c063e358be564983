"""Theorem-tagged certificates (exact values, lower and upper bounds)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from .constraints import CurveCandidate
from .surd import BoundValue
from .surfaces import PointSpec

if TYPE_CHECKING:
    from .harbourne_roe import HrReport

SCHEMA_VERSION = 1


class CertKind(enum.Enum):
    EXACT = "exact"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class Witness:
    """A curve class together with the point positions it is taken through."""

    candidate: CurveCandidate
    points: tuple[PointSpec, ...]

    def to_dict(self) -> dict:
        return {**self.candidate.to_dict(), "points": [str(p) for p in self.points]}

    @classmethod
    def from_dict(cls, d: dict) -> Witness:
        return cls(CurveCandidate.from_dict(d), tuple(PointSpec.parse(p) for p in d["points"]))


_KIND_ORDER = {CertKind.EXACT: 0, CertKind.LOWER: 1, CertKind.UPPER: 2}


@dataclass(frozen=True)
class Certificate:
    kind: CertKind
    value: BoundValue
    theorem_tag: str
    witness: Witness | None = None
    trace: tuple[str, ...] = ()
    report: HrReport | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "trace", tuple(self.trace))
        if self.kind is CertKind.EXACT and self.witness is None:
            raise ValueError("exact certificates need a witness")

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.value.radicand, self.theorem_tag)

    def describe(self) -> str:
        label = {CertKind.EXACT: "Exact", CertKind.LOWER: "Lower", CertKind.UPPER: "Upper"}
        return f"{label[self.kind]:<5} {self.value}  (~{self.value.approx()}, approximate)  [{self.theorem_tag}]"

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind.value,
            "value": self.value.to_dict(),
            "theorem": self.theorem_tag,
            "witness": self.witness.to_dict() if self.witness else None,
            "trace": list(self.trace),
            "report": self.report.to_dict() if self.report else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        from .harbourne_roe import HrReport

        return cls(
            kind=CertKind(d["kind"]),
            value=BoundValue.from_dict(d["value"]),
            theorem_tag=d["theorem"],
            witness=Witness.from_dict(d["witness"]) if d.get("witness") else None,
            trace=tuple(d["trace"]),
            report=HrReport.from_dict(d["report"]) if d.get("report") else None,
        )
