import argparse
import logging
from typing import Optional

import termcolor

from core.cover import certify_tau_critical
from core.families import FamilyDescriptor, FamilyKind, build_family
from core.functions import format_number
from core.graph6 import to_graph6
from core.laws import run_battery
from core.report import LawId
from models.config import Settings
from models.report import FamilyDocument


class Family:
    "Builds one extremal graph and confirms it is what the catalogue claims"

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.logger = logging.getLogger("cli")

    def cmd_family(self, kind: str, s: Optional[int], t: int) -> FamilyDocument:
        descriptor = FamilyDescriptor(FamilyKind(kind), 0 if s is None else s, t)
        g = build_family(descriptor)
        cert = certify_tau_critical(g)

        equalities: list[str] = []
        equality = False
        if cert.critical:
            for report in run_battery(
                g,
                cert,
                tol=self.settings.tolerance,
                max_iter=self.settings.max_iterations,
                suranyi_cap=self.settings.suranyi_cap,
            ):
                if not report.equality:
                    continue
                if report.law is LawId.NLAM:
                    equality = True
                label = report.law.value
                if report.r is not None:
                    label += f"@r={format_number(report.r)}"
                equalities.append(label)

        return FamilyDocument(
            descriptor=str(descriptor),
            graph6=to_graph6(g),
            n=g.n,
            m=g.m,
            tau=cert.tau,
            critical=cert.critical,
            equality=equality,
            equalities=equalities,
            verified=cert.critical and cert.tau == t and equality,
        )

    def run(self, args: argparse.Namespace) -> int:
        document = self.cmd_family(args.kind, args.s, args.t)
        print(document.graph6)

        if args.summary:
            print(document.model_dump_json(indent=2))

        if document.verified:
            self.logger.info(
                termcolor.colored(
                    f"{document.descriptor}: tau = {document.tau}, tau-critical, "
                    f"equality in n + lambda1 <= 2t + 1 confirmed "
                    f"(equalities: {', '.join(document.equalities)})",
                    "green",
                )
            )
            return 0

        self.logger.error(
            termcolor.colored(
                f"{document.descriptor}: tau = {document.tau}, critical = {document.critical}, "
                f"order equality = {document.equality}",
                "red",
            )
        )
        return 1


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("family", help="Build and verify an extremal family member")
    parser.add_argument("--kind", required=True, choices=[kind.value for kind in FamilyKind])
    parser.add_argument("--s", type=int, help="Size parameter, 2 <= s <= t (not for all-matching)")
    parser.add_argument("--t", type=int, required=True, help="Transversal number")
    parser.add_argument(
        "--summary", action="store_true", help="Also print the verification summary as JSON"
    )
    parser.set_defaults(command=Family)
