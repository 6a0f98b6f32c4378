"""One verifier per inequality on tau-critical graphs

Combinatorial sides are exact (int/Fraction). Spectral sides enter only as
certified enclosures, and a spectral law holds when the upper end of its
left-hand side stays below the right-hand side plus the error the enclosure
can contribute. Equality is always decided from the structure of the graph.
"""

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional, Union

from core.cover import SURANYI_CAP, TauCertificate, check_hajnal, check_suranyi
from core.errors import LawDomainError, SpectralError
from core.families import FamilyDescriptor, match_family
from core.functions import binomial, format_number, is_half_odd
from core.graph import Graph, has_regular_component
from core.graph6 import to_graph6
from core.report import (
    CHARACTERIZED_LAWS,
    INTEGER_R_LAWS,
    Enclosure,
    Evidence,
    LawId,
    LawReport,
    require_critical,
)
from core.spectral import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_TOLERANCE,
    SpectralInterval,
    check_sandwich,
    lambda1,
    q1,
)

logger = logging.getLogger("law-verifier")

HALF_R_DEFAULTS = (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2))
HALF_INTEGRAL_FLAG = "Remark-1-interpretation"
UNMATCHED_FLAG = "unmatched-equality"

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class Fault:
    "Test mode: shifts the right-hand side of one law by delta"

    law: LawId
    delta: int = -1


def _family(g: Graph, cert: TauCertificate) -> Optional[FamilyDescriptor]:
    family = match_family(g)
    if family is not None and family.t == cert.tau:
        return family
    return None


def _is_complete_extremal(g: Graph, cert: TauCertificate) -> bool:
    "g is K_{t+1}"

    return g.n == cert.tau + 1 and g.m == binomial(cert.tau + 1, 2)


def _is_order_extremal(g: Graph, cert: TauCertificate) -> bool:
    "Equality in n + lambda1 <= 2t + 1: an extremal family member with a (2t+1-n)-regular component"

    degree = 2 * cert.tau + 1 - g.n
    return (
        _family(g, cert) is not None
        and degree >= 0
        and has_regular_component(g, degree) is not None
    )


def _integer_r(r: Rational, cert: TauCertificate) -> Fraction:
    value = Fraction(r)
    if value.denominator != 1 or not 0 <= value <= cert.tau:
        raise LawDomainError(f"r must be an integer with 0 <= r <= t = {cert.tau}, got {r}")
    return value


def _check_width(interval: SpectralInterval, tol: float) -> None:
    if interval.width > tol:
        raise SpectralError(f"Enclosure [{interval.lo}, {interval.hi}] is wider than {tol}")


def _report(
    law: LawId,
    g: Graph,
    cert: TauCertificate,
    lhs: Union[Fraction, Enclosure],
    rhs: Fraction,
    holds: bool,
    equality: bool,
    r: Optional[Fraction] = None,
    flags: tuple[str, ...] = (),
) -> LawReport:
    family = _family(g, cert)
    if equality and law in CHARACTERIZED_LAWS and family is None:
        flags += (UNMATCHED_FLAG,)

    evidence = None
    if not holds:
        shown = f"[{lhs.lo}, {lhs.hi}]" if isinstance(lhs, Enclosure) else format_number(lhs)
        evidence = Evidence(to_graph6(g), f"{law}: lhs {shown} exceeds rhs {format_number(rhs)}")

    return LawReport(
        law=law,
        holds=holds,
        lhs=lhs,
        rhs=rhs,
        equality=equality,
        n=g.n,
        m=g.m,
        t=cert.tau,
        r=r,
        matched_family=family,
        evidence=evidence,
        flags=flags,
    )


def check_ehm(g: Graph, cert: TauCertificate, rhs_shift: int = 0) -> LawReport:
    require_critical(cert)

    lhs = Fraction(g.m)
    rhs = Fraction(binomial(cert.tau + 1, 2) + rhs_shift)
    return _report(LawId.EHM, g, cert, lhs, rhs, lhs <= rhs, _is_complete_extremal(g, cert))


def check_rvpe(g: Graph, cert: TauCertificate, r: Rational, rhs_shift: int = 0) -> LawReport:
    require_critical(cert)
    r = _integer_r(r, cert)

    lhs = r * g.n + g.m
    rhs = Fraction(binomial(cert.tau + int(r) + 1, 2) + rhs_shift)
    return _report(LawId.RVPE, g, cert, lhs, rhs, lhs <= rhs, lhs == rhs, r=r)


def check_gl(g: Graph, cert: TauCertificate, rhs_shift: int = 0) -> LawReport:
    require_critical(cert)

    # Same inequality as RVPE at r = 1
    lhs = Fraction(g.n + g.m)
    rhs = Fraction(binomial(cert.tau + 2, 2) + rhs_shift)
    return _report(LawId.GL, g, cert, lhs, rhs, lhs <= rhs, lhs == rhs)


def check_nlam(
    g: Graph,
    cert: TauCertificate,
    lam: SpectralInterval,
    tol: float = DEFAULT_TOLERANCE,
    rhs_shift: int = 0,
) -> LawReport:
    require_critical(cert)
    _check_width(lam, tol)

    lhs = Enclosure(g.n + lam.lo, g.n + lam.hi)
    rhs = Fraction(2 * cert.tau + 1 + rhs_shift)
    holds = lhs.hi <= rhs + tol
    return _report(LawId.NLAM, g, cert, lhs, rhs, holds, _is_order_extremal(g, cert))


def check_lam1(
    g: Graph,
    cert: TauCertificate,
    lam: SpectralInterval,
    tol: float = DEFAULT_TOLERANCE,
    rhs_shift: int = 0,
) -> LawReport:
    require_critical(cert)
    _check_width(lam, tol)

    lhs = Enclosure(lam.lo, lam.hi)
    rhs = Fraction(cert.tau + rhs_shift)
    holds = lhs.hi <= rhs + tol
    return _report(LawId.LAM1, g, cert, lhs, rhs, holds, _is_complete_extremal(g, cert))


def _spect_equality(g: Graph, cert: TauCertificate, r: Fraction) -> bool:
    return _is_order_extremal(g, cert) and g.n in (cert.tau + r, cert.tau + r + 1)


def check_spect(
    g: Graph,
    cert: TauCertificate,
    lam: SpectralInterval,
    r: Rational,
    tol: float = DEFAULT_TOLERANCE,
    rhs_shift: int = 0,
) -> LawReport:
    require_critical(cert)
    _check_width(lam, tol)
    r = _integer_r(r, cert)

    n = g.n
    lhs = Enclosure(float(n * r) + n * lam.lo / 2, float(n * r) + n * lam.hi / 2)
    rhs = Fraction(binomial(cert.tau + int(r) + 1, 2) + rhs_shift)
    # Doubled so the combinatorial part stays integral: 2nr + n lambda1 <= 2 C(t+r+1, 2)
    holds = float(2 * n * r) + n * lam.hi <= float(2 * rhs) + n * tol
    return _report(LawId.SPECT, g, cert, lhs, rhs, holds, _spect_equality(g, cert, r), r=r)


def check_half(
    g: Graph,
    cert: TauCertificate,
    lam: SpectralInterval,
    r: Rational,
    tol: float = DEFAULT_TOLERANCE,
    rhs_shift: int = 0,
) -> LawReport:
    require_critical(cert)
    _check_width(lam, tol)
    r = Fraction(r)
    if r < 0:
        raise LawDomainError(f"r must be non-negative, got {r}")

    n, t = g.n, cert.tau
    lhs = Enclosure(float(n * r) + n * lam.lo / 2, float(n * r) + n * lam.hi / 2)
    rhs = Fraction((2 * t + 2 * r + 1) ** 2, 8) + rhs_shift
    holds = lhs.hi <= float(rhs) + n * tol / 2

    flags: tuple[str, ...] = ()
    equality = False
    if is_half_odd(r):
        flags = (HALF_INTEGRAL_FLAG,)
        equality = _is_order_extremal(g, cert) and 2 * n == 2 * t + 2 * r + 1
    return _report(LawId.HALF, g, cert, lhs, rhs, holds, equality, r=r, flags=flags)


def check_q1(
    g: Graph,
    cert: TauCertificate,
    q: SpectralInterval,
    r: Rational,
    tol: float = DEFAULT_TOLERANCE,
    rhs_shifts: tuple[int, int, int] = (0, 0, 0),
) -> tuple[LawReport, LawReport, LawReport]:
    "n + q1/2 <= 2t + 1, q1 <= 2t and n (r + q1/4) <= C(t+r+1, 2)"

    require_critical(cert)
    _check_width(q, tol)
    r = _integer_r(r, cert)
    n, t = g.n, cert.tau

    order_lhs = Enclosure(n + q.lo / 2, n + q.hi / 2)
    order_rhs = Fraction(2 * t + 1 + rhs_shifts[0])
    order = _report(
        LawId.NQ1,
        g,
        cert,
        order_lhs,
        order_rhs,
        order_lhs.hi <= order_rhs + tol / 2,
        _is_order_extremal(g, cert),
    )

    radius_lhs = Enclosure(q.lo, q.hi)
    radius_rhs = Fraction(2 * t + rhs_shifts[1])
    radius = _report(
        LawId.Q1,
        g,
        cert,
        radius_lhs,
        radius_rhs,
        radius_lhs.hi <= radius_rhs + tol,
        _is_complete_extremal(g, cert),
    )

    weighted_lhs = Enclosure(float(n * r) + n * q.lo / 4, float(n * r) + n * q.hi / 4)
    weighted_rhs = Fraction(binomial(t + int(r) + 1, 2) + rhs_shifts[2])
    weighted = _report(
        LawId.QSPECT,
        g,
        cert,
        weighted_lhs,
        weighted_rhs,
        weighted_lhs.hi <= weighted_rhs + n * tol / 4,
        _spect_equality(g, cert, r),
        r=r,
    )
    return order, radius, weighted


def check_regular_component(g: Graph, cert: TauCertificate) -> LawReport:
    """A (2t+1-n)-regular component forces an extremal family

    Encoded as the implication lhs <= rhs with lhs = 1 when the regular
    component exists and rhs = 1 when the family is recognised.
    """

    require_critical(cert)

    degree = 2 * cert.tau + 1 - g.n
    hypothesis = degree >= 0 and has_regular_component(g, degree) is not None
    conclusion = _family(g, cert) is not None

    lhs, rhs = Fraction(int(hypothesis)), Fraction(int(conclusion))
    report = _report(LawId.REGULAR, g, cert, lhs, rhs, lhs <= rhs, hypothesis and conclusion)
    if not report.holds:
        report = replace(
            report,
            evidence=Evidence(
                to_graph6(g),
                f"{degree}-regular component present but no extremal family with t = {cert.tau}",
            ),
        )
    return report


def require_r_domain(r_values: Iterable[Rational], cert: TauCertificate) -> None:
    "Integral r above t is outside every integer-r law; half-integral r only feeds HALF"

    for r in r_values:
        value = Fraction(r)
        if value < 0:
            raise LawDomainError(f"r must be non-negative, got {format_number(value)}")
        if value.denominator == 1 and value > cert.tau:
            raise LawDomainError(
                f"r = {format_number(value)} exceeds t = {cert.tau} for RVPE, SPECT and QSPECT"
            )


def _r_values_for(law: LawId, t: int, r_values: Optional[Iterable[Fraction]]) -> list[Fraction]:
    if law in INTEGER_R_LAWS:
        if r_values is None:
            return [Fraction(r) for r in range(t + 1)]
        return sorted({r for r in r_values if r.denominator == 1 and 0 <= r <= t})
    if law is LawId.HALF:
        return sorted(set(HALF_R_DEFAULTS).union(r_values or ()))
    return []


def run_battery(
    g: Graph,
    cert: TauCertificate,
    r_values: Optional[Iterable[Rational]] = None,
    laws: Optional[Iterable[LawId]] = None,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITERATIONS,
    suranyi_cap: int = SURANYI_CAP,
    fault: Optional[Fault] = None,
    lam: Optional[SpectralInterval] = None,
    q: Optional[SpectralInterval] = None,
) -> list[LawReport]:
    """Runs every selected law on one tau-critical graph

    r_values None means r = 0..t for the integer-r laws; otherwise they use
    the integral members not exceeding t. The half-integral bound always runs
    at r in {1/2, 3/2, 5/2} plus every given value.
    """

    require_critical(cert)
    selected = set(LawId) if laws is None else {LawId(law) for law in laws}
    rationals = None if r_values is None else [Fraction(r) for r in r_values]

    def shift(law: LawId) -> int:
        return fault.delta if fault is not None and fault.law is law else 0

    spectral_laws = {LawId.NLAM, LawId.LAM1, LawId.SPECT, LawId.HALF, LawId.SANDWICH}
    if selected & spectral_laws and lam is None:
        lam = lambda1(g, tol, max_iter)
    if selected & {LawId.NQ1, LawId.Q1, LawId.QSPECT} and q is None:
        q = q1(g, tol, max_iter)

    shifts = (shift(LawId.NQ1), shift(LawId.Q1), shift(LawId.QSPECT))
    reports: list[LawReport] = []
    for law in LawId:
        if law not in selected:
            continue

        if law is LawId.EHM:
            reports.append(check_ehm(g, cert, shift(law)))
        elif law is LawId.GL:
            reports.append(check_gl(g, cert, shift(law)))
        elif law is LawId.RVPE:
            for r in _r_values_for(law, cert.tau, rationals):
                reports.append(check_rvpe(g, cert, r, shift(law)))
        elif law is LawId.HAJNAL:
            reports.append(_shifted(check_hajnal(g, cert), shift(law), g))
        elif law is LawId.SURANYI:
            if g.n > suranyi_cap:
                logger.warning(f"Skipping {law} on {to_graph6(g)}: n = {g.n} above cap {suranyi_cap}")
                continue
            reports.append(_shifted(check_suranyi(g, cert, suranyi_cap), shift(law), g))
        elif law is LawId.SANDWICH:
            assert lam is not None
            reports.append(_shifted(check_sandwich(g, tol, lam), shift(law), g))
        elif law is LawId.NLAM:
            assert lam is not None
            reports.append(check_nlam(g, cert, lam, tol, shift(law)))
        elif law is LawId.LAM1:
            assert lam is not None
            reports.append(check_lam1(g, cert, lam, tol, shift(law)))
        elif law is LawId.SPECT:
            assert lam is not None
            for r in _r_values_for(law, cert.tau, rationals):
                reports.append(check_spect(g, cert, lam, r, tol, shift(law)))
        elif law is LawId.HALF:
            assert lam is not None
            for r in _r_values_for(law, cert.tau, rationals):
                reports.append(check_half(g, cert, lam, r, tol, shift(law)))
        elif law in (LawId.NQ1, LawId.Q1):
            assert q is not None
            order, radius, _ = check_q1(g, cert, q, 0, tol, shifts)
            reports.append(order if law is LawId.NQ1 else radius)
        elif law is LawId.QSPECT:
            assert q is not None
            for r in _r_values_for(law, cert.tau, rationals):
                reports.append(check_q1(g, cert, q, r, tol, shifts)[2])
        elif law is LawId.REGULAR:
            reports.append(check_regular_component(g, cert))

    return reports


def _shifted(report: LawReport, delta: int, g: Graph) -> LawReport:
    "Applies a fault shift to a report produced outside this module"

    if not delta:
        return report

    rhs = report.rhs + delta
    holds = report.lhs <= rhs
    evidence = report.evidence
    if not holds and evidence is None:
        evidence = Evidence(
            to_graph6(g),
            f"{report.law}: lhs {format_number(report.lhs)} exceeds rhs {format_number(rhs)}",
        )
    return replace(report, rhs=rhs, holds=holds, evidence=evidence)
