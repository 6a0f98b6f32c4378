import argparse
import logging
import sys
from typing import Iterator

from core.enumerator import enumerate_graphs, enumerate_tau_critical, write_graph6
from core.graph import Graph
from core.graph6 import to_graph6
from models.config import Settings


class Enumerate:
    "Graphs of one order up to isomorphism, as graph6 lines"

    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self.logger = logging.getLogger("cli")

    def _graphs(self, n: int, critical_only: bool) -> Iterator[Graph]:
        if critical_only:
            return (g for g, _ in enumerate_tau_critical(n))
        return enumerate_graphs(n)

    def cmd_enumerate(self, n: int, critical_only: bool = False) -> list[str]:
        return [to_graph6(g) for g in self._graphs(n, critical_only)]

    def run(self, args: argparse.Namespace) -> int:
        count = write_graph6(self._graphs(args.n, args.critical), sys.stdout)
        kind = "tau-critical graphs" if args.critical else "graphs"
        self.logger.info(f"Wrote {count} {kind} of order {args.n}")
        return 0


def setup(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "enumerate", help="List graphs of order n (n <= 7) up to isomorphism"
    )
    parser.add_argument("--n", type=int, required=True, help="Number of vertices")
    parser.add_argument("--critical", action="store_true", help="Only tau-critical graphs")
    parser.set_defaults(command=Enumerate)
