from typing import Any, Optional

from sqlmodel import Field, SQLModel

from core.functions import format_number
from core.report import Enclosure, LawReport, Value


def format_value(value: Value) -> str:
    "Exact values as 'p' or 'p/q', enclosures as '[lo, hi]' at fixed precision"

    if isinstance(value, Enclosure):
        return f"[{format_number(value.lo)}, {format_number(value.hi)}]"
    return format_number(value)


class LawRecordBase(SQLModel):
    "Flat projection of one LawReport: one row per graph, law and r"

    graph6: str
    law: str
    r: Optional[str] = None
    n: int
    m: int
    t: Optional[int] = None
    lhs: str
    rhs: str
    slack: str
    holds: bool
    equality: bool
    family: Optional[str] = None
    evidence_graph6: Optional[str] = None
    evidence: Optional[str] = None
    flags: str = ""

    @classmethod
    def from_report(cls, report: LawReport, graph6: str):
        return cls(
            graph6=graph6,
            law=report.law.value,
            r=None if report.r is None else format_number(report.r),
            n=report.n,
            m=report.m,
            t=report.t,
            lhs=format_value(report.lhs),
            rhs=format_value(report.rhs),
            slack=format_value(report.slack),
            holds=report.holds,
            equality=report.equality,
            family=None if report.matched_family is None else str(report.matched_family),
            evidence_graph6=None if report.evidence is None else report.evidence.graph6,
            evidence=None if report.evidence is None else report.evidence.detail,
            flags=",".join(report.flags),
        )


class LawRecord(LawRecordBase):
    pass


class LawRow(LawRecordBase, table=True):
    __tablename__ = "law_records"

    id: Optional[int] = Field(default=None, primary_key=True)
    run: str = Field(index=True)


class CensusEntry(SQLModel):
    "Equality holders seen for one (law, r, t) against the catalogue's list"

    law: str
    r: Optional[str] = None
    t: int
    expected: list[str] = Field(default_factory=list)
    observed: list[str] = Field(default_factory=list)
    missing: list[str] = Field(default_factory=list)
    unexpected: list[str] = Field(default_factory=list)
    matches: bool = True


class SweepReport(SQLModel):
    header: str
    status: str
    exit_code: int
    config: dict[str, Any]
    corpus_sha256: Optional[str] = None
    graphs_examined: int = 0
    critical_graphs: int = 0
    checks: int = 0
    violations: list[LawRecord] = Field(default_factory=list)
    census: list[CensusEntry] = Field(default_factory=list)
    records: list[LawRecord] = Field(default_factory=list)


class CheckDocument(SQLModel):
    graph6: str
    n: int
    m: int
    tau: int
    cover: list[int]
    critical: bool
    reason: str
    lambda1: Optional[str] = None
    q1: Optional[str] = None
    family: Optional[str] = None
    laws: list[LawRecord] = Field(default_factory=list)

    @property
    def violations(self) -> list[LawRecord]:
        return [record for record in self.laws if not record.holds]


class FamilyDocument(SQLModel):
    descriptor: str
    graph6: str
    n: int
    m: int
    tau: int
    critical: bool
    equality: bool
    equalities: list[str] = Field(default_factory=list)
    verified: bool
