import argparse
import csv
import hashlib
import json
import logging
import sys
from typing import TextIO

from core.sweep import SweepRunner
from db import store_records
from models.config import REPORT_FORMATS, Settings, SweepConfig
from models.report import LawRecord, SweepReport


class Sweep:
    "Exhaustive verification of every law over all tau-critical graphs up to n_max"

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.logger = logging.getLogger("cli")

    def config_from_args(self, args: argparse.Namespace) -> SweepConfig:
        values = {
            "n_max": args.max_n,
            "r_values": args.r.split(",") if args.r else None,
            "tol": self.settings.tolerance if args.tol is None else args.tol,
            "max_iterations": self.settings.max_iterations,
            "suranyi_cap": self.settings.suranyi_cap,
            "corpus_path": args.corpus,
            "fail_fast": not args.skip_bad_records,
            "fault": args.fault,
            "output": args.out,
            "format": args.format,
            "jobs": args.jobs,
        }
        if args.laws:
            values["laws"] = args.laws.split(",")
        return SweepConfig.build(**values)

    def cmd_sweep(self, config: SweepConfig) -> tuple[SweepReport, int]:
        report = SweepRunner(config).run()
        # The serialized document must read back as the schema it claims
        SweepReport.model_validate_json(report.model_dump_json())
        return report, report.exit_code

    def _write_json(self, report: SweepReport, stream: TextIO) -> None:
        stream.write(report.model_dump_json(indent=2) + "\n")

    def _write_csv(self, report: SweepReport, stream: TextIO) -> None:
        writer = csv.DictWriter(stream, fieldnames=list(LawRecord.model_fields), lineterminator="\n")
        writer.writeheader()
        for record in report.records:
            writer.writerow(record.model_dump())

    def _write_sqlite(self, report: SweepReport, config: SweepConfig) -> None:
        url = f"sqlite:///{config.output}" if config.output else self.settings.database_url
        run = hashlib.sha256(
            json.dumps(report.config, sort_keys=True).encode("utf-8")
        ).hexdigest()[:16]
        store_records(report.records, url, run)

    def write(self, report: SweepReport, config: SweepConfig) -> None:
        if config.format == "sqlite":
            self._write_sqlite(report, config)
            return

        writer = self._write_csv if config.format == "csv" else self._write_json
        if config.output is None:
            writer(report, sys.stdout)
            return
        with open(config.output, "w", encoding="utf-8", newline="") as f:
            writer(report, f)
        self.logger.info(f"Report written to {config.output}")

    def run(self, args: argparse.Namespace) -> int:
        if args.schema:
            print(json.dumps(SweepReport.model_json_schema(), indent=2))
            return 0

        config = self.config_from_args(args)
        report, code = self.cmd_sweep(config)
        self.write(report, config)
        return code


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "sweep", help="Verify every law on all tau-critical graphs up to --max-n"
    )
    parser.add_argument("--max-n", type=int, default=7, help="Largest order to verify")
    parser.add_argument("--corpus", type=str, help="graph6 file or http(s) URL for orders above 7")
    parser.add_argument(
        "--skip-bad-records",
        action="store_true",
        help="Log and skip unparseable corpus lines instead of stopping",
    )
    parser.add_argument("--r", type=str, help="Comma separated r values, e.g. 0,1,2,3")
    parser.add_argument("--laws", type=str, help="Comma separated law ids (default: all)")
    parser.add_argument("--tol", type=float, help="Width of spectral enclosures")
    parser.add_argument("--out", type=str, help="Report file (default: standard output)")
    parser.add_argument("--format", default="json", choices=REPORT_FORMATS)
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes")
    parser.add_argument(
        "--fault", type=str, help="Test mode: decrement the right-hand side of this law"
    )
    parser.add_argument(
        "--schema", action="store_true", help="Print the JSON schema of the report and exit"
    )
    parser.set_defaults(command=Sweep)
