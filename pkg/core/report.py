from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Optional, Union

from core.errors import NotCriticalError

if TYPE_CHECKING:
    from core.cover import TauCertificate
    from core.families import FamilyDescriptor


class LawId(str, Enum):
    EHM = "EHM"  # |E| <= C(t+1, 2)
    GL = "GL"  # n + |E| <= C(t+2, 2)
    RVPE = "RVPE"  # r n + |E| <= C(t+r+1, 2)
    HAJNAL = "HAJNAL"  # max degree <= 2t + 1 - n
    SURANYI = "SURANYI"  # d(v) <= |N(S)| - |S| + 1
    SANDWICH = "SANDWICH"  # 2m/n <= lambda1 <= max degree
    NLAM = "NLAM"  # n + lambda1 <= 2t + 1
    LAM1 = "LAM1"  # lambda1 <= t
    SPECT = "SPECT"  # n (r + lambda1 / 2) <= C(t+r+1, 2)
    HALF = "HALF"  # n (r + lambda1 / 2) <= (2t + 2r + 1)^2 / 8, real r
    NQ1 = "NQ1"  # n + q1 / 2 <= 2t + 1
    Q1 = "Q1"  # q1 <= 2t
    QSPECT = "QSPECT"  # n (r + q1 / 4) <= C(t+r+1, 2)
    REGULAR = "REGULAR"  # regular (2t+1-n) component => extremal family

    def __str__(self) -> str:
        return self.value


# Laws whose equality graphs are listed explicitly
CHARACTERIZED_LAWS = frozenset(
    {
        LawId.EHM,
        LawId.GL,
        LawId.RVPE,
        LawId.NLAM,
        LawId.LAM1,
        LawId.SPECT,
        LawId.HALF,
        LawId.NQ1,
        LawId.Q1,
        LawId.QSPECT,
    }
)

# Laws parameterised by an integer 0 <= r <= t
INTEGER_R_LAWS = frozenset({LawId.RVPE, LawId.SPECT, LawId.QSPECT})


@dataclass(frozen=True)
class Enclosure:
    "Closed real interval [lo, hi] carrying a certified spectral quantity"

    lo: float
    hi: float

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack


Value = Union[Fraction, Enclosure]


def lower(value: Value) -> Union[Fraction, float]:
    return value.lo if isinstance(value, Enclosure) else value


def upper(value: Value) -> Union[Fraction, float]:
    return value.hi if isinstance(value, Enclosure) else value


@dataclass(frozen=True)
class Evidence:
    "Violation witness: the offending graph plus whatever pins the failure down"

    graph6: str
    detail: str
    vertex: Optional[int] = None
    subset: Optional[int] = None


@dataclass(frozen=True)
class LawReport:
    law: LawId
    holds: bool
    lhs: Value
    rhs: Value
    equality: bool
    n: int
    m: int
    t: Optional[int] = None
    r: Optional[Fraction] = None
    matched_family: Optional["FamilyDescriptor"] = None
    evidence: Optional[Evidence] = None
    lower_equality: Optional[bool] = None
    upper_equality: Optional[bool] = None
    flags: tuple[str, ...] = field(default_factory=tuple)

    @property
    def slack(self) -> Value:
        if isinstance(self.lhs, Enclosure) or isinstance(self.rhs, Enclosure):
            return Enclosure(
                float(lower(self.rhs) - upper(self.lhs)),
                float(upper(self.rhs) - lower(self.lhs)),
            )
        return self.rhs - self.lhs


def require_critical(cert: "TauCertificate") -> None:
    if not cert.critical:
        raise NotCriticalError(
            "Laws apply only to tau-critical graphs; certificate says otherwise"
        )
