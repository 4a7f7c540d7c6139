"""
OPTOTTO PROGRESS & LOGGING

Responsibilities:
- Timestamped progress lines for long runs
- One-time logging setup for the command line
"""

import logging
import sys
import time
from typing import List

from config.settings import LOG_FORMAT, PROGRESS_LOGGER


class ProgressReporter:
    """Simple progress reporter that timestamps updates and keeps the history."""

    def __init__(self, echo: bool = False):
        self.echo = echo
        self.messages: List[str] = []
        self._logger = logging.getLogger(PROGRESS_LOGGER)

    def info(self, msg: str):
        timestamp = time.strftime("%H:%M:%S")
        text = f"[{timestamp}] {msg}"
        self.messages.append(text)
        self._logger.info(msg)
        if self.echo:
            print(text, file=sys.stderr)

    def warning(self, msg: str):
        self.messages.append(f"[{time.strftime('%H:%M:%S')}] WARNING {msg}")
        self._logger.warning(msg)


def configure_logging(verbose: bool = False) -> None:
    """Route all library logging to stderr; stdout stays reserved for summaries."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logging.getLogger(PROGRESS_LOGGER).setLevel(logging.INFO)
