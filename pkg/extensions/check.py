import argparse
import logging
from typing import Iterable, Optional

import termcolor

from core.cover import certify_tau_critical
from core.functions import bits, parse_rational_list
from core.graph6 import parse_graph6, to_graph6
from core.laws import require_r_domain, run_battery
from core.spectral import lambda1, q1
from models.config import Settings
from models.report import CheckDocument, LawRecord, format_value


class Check:
    "Full law battery on a single graph6 record"

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.logger = logging.getLogger("cli")

    def cmd_check(
        self, graph6: str, r_values: Optional[Iterable] = None, tol: Optional[float] = None
    ) -> CheckDocument:
        tol = self.settings.tolerance if tol is None else tol
        g = parse_graph6(graph6)
        record = to_graph6(g)
        cert = certify_tau_critical(g)

        lam = q = None
        if g.n:
            lam = lambda1(g, tol, self.settings.max_iterations)
            q = q1(g, tol, self.settings.max_iterations)

        document = CheckDocument(
            graph6=record,
            n=g.n,
            m=g.m,
            tau=cert.tau,
            cover=list(bits(cert.cover)),
            critical=cert.critical,
            reason=cert.reason,
            lambda1=None if lam is None else format_value(lam),
            q1=None if q is None else format_value(q),
        )

        if not cert.critical:
            self.logger.info(f"{record} is not tau-critical ({cert.reason}); laws skipped")
            return document

        if r_values is not None:
            r_values = list(r_values)
            require_r_domain(r_values, cert)

        reports = run_battery(
            g,
            cert,
            r_values=r_values,
            tol=tol,
            max_iter=self.settings.max_iterations,
            suranyi_cap=self.settings.suranyi_cap,
            lam=lam,
            q=q,
        )
        document.laws = [LawRecord.from_report(report, record) for report in reports]
        family = next((report.matched_family for report in reports if report.matched_family), None)
        if family is not None:
            document.family = str(family)
        return document

    def run(self, args: argparse.Namespace) -> int:
        r_values = parse_rational_list(args.r) if args.r else None
        document = self.cmd_check(args.graph6, r_values, args.tol)
        print(document.model_dump_json(indent=2))

        if document.violations:
            for record in document.violations:
                self.logger.error(termcolor.colored(f"{record.law}: {record.evidence}", "red"))
            return 1
        return 0


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("check", help="Certify one graph and run every law on it")
    parser.add_argument("graph6", type=str, help="graph6 record, e.g. C~ for K4")
    parser.add_argument("--r", type=str, help="Comma separated r values, e.g. 0,1,1/2")
    parser.add_argument("--tol", type=float, help="Width of spectral enclosures")
    parser.set_defaults(command=Check)
