"""
OPTOTTO MAIN ENTRY POINT

Responsibilities:
- Parse command-line flags
- Set up logging
- Hand the configuration to the scenario manager and return its exit code

Does NOT contain physics.
"""

import argparse
import sys
from typing import List, Optional

from cli.scenario_manager import execute
from config.settings import APP_TITLE, VALID_FORMATS
from utils.progress import ProgressReporter, configure_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=APP_TITLE)
    parser.add_argument(
        "--config",
        required=True,
        help="Path to a JSON run configuration (see configs/)"
    )
    parser.add_argument(
        "--output",
        default=None,
        help="Output directory; overrides the config's output block"
    )
    parser.add_argument(
        "--format",
        choices=VALID_FORMATS,
        default=None,
        help="Result file format; overrides the config's output block"
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads for sweeps (default: Python's pool default)"
    )
    parser.add_argument(
        "--strict",
        action="store_true",
        help="Promote warnings to errors"
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Debug logging and progress lines on stderr"
    )
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, matching the parse-error code
        return int(exc.code or 0)

    configure_logging(args.verbose)
    return execute(
        args.config,
        output_directory=args.output,
        output_format=args.format,
        threads=args.threads,
        strict=args.strict,
        progress=ProgressReporter(echo=args.verbose),
    )


if __name__ == "__main__":
    sys.exit(main())
