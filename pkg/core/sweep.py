import logging
import multiprocessing
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import termcolor

from core.cover import certify_tau_critical
from core.enumerator import (
    NATIVE_ORDER_LIMIT,
    corpus_digest,
    enumerate_graphs,
    fetch_corpus,
    ingest_graph6,
)
from core.errors import EnumerationError
from core.families import equality_list
from core.functions import format_number
from core.graph import Graph
from core.graph6 import parse_graph6, to_graph6
from core.laws import Fault, run_battery
from core.report import CHARACTERIZED_LAWS, LawId, LawReport
from models.config import SweepConfig
from models.report import CensusEntry, LawRecord, SweepReport

REPORT_HEADER = (
    "Exit status 0 means every selected law held on every tau-critical graph and the "
    "equality census matched the family catalogue in both directions. A nonzero status "
    "is a potential counterexample or an implementation bug; the violations and census "
    "sections carry the graph6 evidence."
)

# (law, r, t)
CensusKey = tuple[LawId, Optional[Fraction], int]


@dataclass(frozen=True)
class SweepTask:
    graph6: str
    r_values: Optional[tuple[Fraction, ...]]
    laws: tuple[LawId, ...]
    tol: float
    max_iterations: int
    suranyi_cap: int
    fault: Optional[Fault] = None


@dataclass(frozen=True)
class GraphOutcome:
    graph6: str
    critical: bool
    tau: int
    reports: tuple[LawReport, ...] = ()


def evaluate_graph(task: SweepTask) -> GraphOutcome:
    "Certifies one graph and, when it is tau-critical, runs the law battery on it"

    g = parse_graph6(task.graph6)
    cert = certify_tau_critical(g)
    if not cert.critical:
        return GraphOutcome(task.graph6, False, cert.tau)

    reports = run_battery(
        g,
        cert,
        r_values=task.r_values,
        laws=task.laws,
        tol=task.tol,
        max_iter=task.max_iterations,
        suranyi_cap=task.suranyi_cap,
        fault=task.fault,
    )
    return GraphOutcome(task.graph6, True, cert.tau, tuple(reports))


def _census_label(report: LawReport, graph6: str) -> str:
    if report.matched_family is None:
        return f"graph6:{graph6}"
    return str(report.matched_family)


class SweepRunner:
    "Checks every tau-critical graph up to n_max and cross-checks the equality census"

    def __init__(self, config: SweepConfig) -> None:
        self.logger = logging.getLogger("sweep")
        self.config = config
        self.corpus_sha256: Optional[str] = None

    @property
    def exhaustive_order(self) -> int:
        "Largest order whose graphs are all enumerated natively"

        return min(self.config.n_max, NATIVE_ORDER_LIMIT)

    def _native_graphs(self) -> Iterator[Graph]:
        for n in range(2, self.exhaustive_order + 1):
            self.logger.info(termcolor.colored(f"Enumerating graphs of order {n}", "yellow"))
            yield from enumerate_graphs(n)

    def _corpus_graphs(self) -> Iterator[Graph]:
        source = self.config.corpus_path
        if source is None:
            return

        if source.startswith(("http://", "https://")):
            path = fetch_corpus(source)
        else:
            path = source
        self.corpus_sha256 = corpus_digest(path)
        self.logger.info(termcolor.colored(f"Ingesting corpus {path}", "yellow"))

        skipped = 0
        for g in ingest_graph6(path, fail_fast=self.config.fail_fast):
            if g.n <= self.exhaustive_order or g.n > self.config.n_max:
                skipped += 1
                continue
            yield g

        if skipped:
            self.logger.info(
                f"Skipped {skipped} corpus graphs already enumerated natively or above n_max"
            )

    def graphs(self) -> Iterator[Graph]:
        if self.config.n_max > NATIVE_ORDER_LIMIT and self.config.corpus_path is None:
            raise EnumerationError(
                f"n_max = {self.config.n_max} exceeds native enumeration (n <= "
                f"{NATIVE_ORDER_LIMIT}); pass a graph6 corpus for the larger orders"
            )

        yield from self._native_graphs()
        yield from self._corpus_graphs()

    def tasks(self) -> Iterator[SweepTask]:
        rationals = self.config.rationals
        for g in self.graphs():
            yield SweepTask(
                graph6=to_graph6(g),
                r_values=None if rationals is None else tuple(rationals),
                laws=tuple(self.config.law_ids),
                tol=self.config.tol,
                max_iterations=self.config.max_iterations,
                suranyi_cap=self.config.suranyi_cap,
                fault=self.config.fault_injection,
            )

    def evaluate(self) -> list[GraphOutcome]:
        "Outcomes in graph order, whatever the number of workers"

        tasks = self.tasks()
        if self.config.jobs == 1:
            return [evaluate_graph(task) for task in tasks]

        with multiprocessing.Pool(processes=self.config.jobs) as pool:
            return list(pool.imap(evaluate_graph, tasks, chunksize=16))

    def census(self, outcomes: list[GraphOutcome]) -> list[CensusEntry]:
        """Equality holders per (law, r, t) against equality_list

        Every observed holder must be listed. Listed graphs are required to
        show up only when their order was enumerated exhaustively.
        """

        observed: dict[CensusKey, set[str]] = defaultdict(set)
        for outcome in outcomes:
            for report in outcome.reports:
                if report.law not in CHARACTERIZED_LAWS or report.t is None:
                    continue
                holders = observed[(report.law, report.r, report.t)]
                if report.equality:
                    holders.add(_census_label(report, outcome.graph6))

        order = list(LawId)
        entries: list[CensusEntry] = []
        for law, r, t in sorted(
            observed, key=lambda k: (order.index(k[0]), -1 if k[1] is None else k[1], k[2])
        ):
            listed = [str(d) for d in equality_list(law, r, t)]
            required = {
                str(d) for d in equality_list(law, r, t, max_order=self.exhaustive_order)
            }
            seen = observed[(law, r, t)]

            missing = sorted(required - seen)
            unexpected = sorted(seen - set(listed))
            entries.append(
                CensusEntry(
                    law=law.value,
                    r=None if r is None else format_number(r),
                    t=t,
                    expected=sorted(required),
                    observed=sorted(seen),
                    missing=missing,
                    unexpected=unexpected,
                    matches=not missing and not unexpected,
                )
            )
        return entries

    def run(self) -> SweepReport:
        outcomes = self.evaluate()

        records: list[LawRecord] = []
        for outcome in outcomes:
            records.extend(LawRecord.from_report(report, outcome.graph6) for report in outcome.reports)

        violations = [record for record in records if not record.holds]
        census = self.census(outcomes)
        mismatched = [entry for entry in census if not entry.matches]

        for record in violations:
            self.logger.error(
                termcolor.colored(
                    f"{record.law} violated on {record.graph6}: {record.evidence}", "red"
                )
            )
        for entry in mismatched:
            self.logger.error(
                termcolor.colored(
                    f"Census mismatch for {entry.law} r={entry.r} t={entry.t}: "
                    f"missing {entry.missing}, unexpected {entry.unexpected}",
                    "red",
                )
            )

        if violations:
            status = "violations"
        elif mismatched:
            status = "census-mismatch"
        else:
            status = "verified"
        exit_code = 0 if status == "verified" else 1

        critical = sum(1 for outcome in outcomes if outcome.critical)
        summary = (
            f"Sweep {status}: {len(outcomes)} graphs, {critical} tau-critical, "
            f"{len(records)} checks, {len(violations)} violations, "
            f"{len(mismatched)} census mismatches"
        )
        self.logger.info(termcolor.colored(summary, "green" if exit_code == 0 else "red"))

        return SweepReport(
            header=REPORT_HEADER,
            status=status,
            exit_code=exit_code,
            config=self.config.embedded(),
            corpus_sha256=self.corpus_sha256,
            graphs_examined=len(outcomes),
            critical_graphs=critical,
            checks=len(records),
            violations=violations,
            census=census,
            records=records,
        )
