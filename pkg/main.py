import argparse
import importlib
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from coloredlogs import install as install_coloredlogs

from core.errors import ToolkitError
from models.config import SETTINGS_FILE, Settings

loglevels = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}

LOG_FORMAT = "%(levelname)s | %(asctime)s | %(name)s |->| %(message)s"

# Searching for all subcommand modules
EXTENSIONS = Path(__file__).resolve().parent / "extensions"
default_extensions = [
    "extensions." + i.stem for i in sorted(EXTENSIONS.glob("*.py")) if i.stem != "__init__"
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taucrit",
        description="Exact verification toolkit for tau-critical graphs",
    )
    parser.add_argument(
        "-l",
        "--logging",
        default=os.environ.get("TAUCRIT_LOGGING", "INFO"),
        choices=list(loglevels),
        help="Choose level of logging",
    )
    parser.add_argument("-f", "--file", type=str, help="Filename for logging")
    parser.add_argument(
        "-c",
        "--config",
        default=os.environ.get("TAUCRIT_CONFIG", SETTINGS_FILE),
        type=str,
        help="Settings file (ini with a [taucrit] section)",
    )

    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for extension in default_extensions:
        importlib.import_module(extension).setup(subparsers)

    return parser


def setup_logging(level: str, file: Optional[str] = None) -> None:
    if file:
        logging.basicConfig(
            level=loglevels[level],
            handlers=[logging.FileHandler(file, "w", "utf-8")],
            format=LOG_FORMAT,
            datefmt=r"%H:%M:%S",
        )

    # Coloring the logs, stderr only so reports on stdout stay clean
    install_coloredlogs(
        level=loglevels[level],
        fmt=LOG_FORMAT,
        datefmt=r"%H:%M:%S",
        stream=sys.stderr,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.logging, args.file)

    try:
        settings = Settings.load(args.config)
        return args.command(settings).run(args)
    except ToolkitError as e:
        logging.error(str(e))
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
