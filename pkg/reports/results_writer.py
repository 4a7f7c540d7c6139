"""
OPTOTTO RESULTS WRITER

Responsibilities:
- Single writer for every result file of a run
- CSV tables through pandas at full precision
- JSON documents mirroring record field names
- Header block with the resolved parameters and code version

Output contains no timestamps; identical inputs give byte-identical files.
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Mapping

import numpy as np
import pandas as pd

from config.settings import (
    APP_NAME,
    APP_VERSION,
    CSV_FLOAT_FORMAT,
    FORMAT_CSV,
    FORMAT_JSON,
    HEADER_PREFIX,
)

logger = logging.getLogger(__name__)


def _plain(value: Any) -> Any:
    """JSON-safe copy: numpy scalars/arrays unwrapped, NaN and inf as null."""
    if isinstance(value, Mapping):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    return value


class ResultsWriter:
    """Writes tables and documents into one output directory in one format."""

    def __init__(self, directory: str, fmt: str, resolved: Dict[str, Any]):
        self.directory = Path(directory)
        self.fmt = fmt
        self.header = {"app": APP_NAME, "version": APP_VERSION, "config": _plain(resolved)}
        self.written: List[Path] = []

    def _path(self, name: str) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        suffix = ".csv" if self.fmt == FORMAT_CSV else ".json"
        return self.directory / f"{name}{suffix}"

    def header_lines(self) -> List[str]:
        lines = [f"{HEADER_PREFIX}{APP_NAME} {APP_VERSION}"]
        for key, value in self.header["config"].items():
            lines.append(f"{HEADER_PREFIX}{key}: {json.dumps(value, sort_keys=True)}")
        return lines

    def write_table(self, name: str, frame: pd.DataFrame) -> Path:
        """One table; CSV gets the header as comment lines, JSON a list of records."""
        path = self._path(name)
        if self.fmt == FORMAT_CSV:
            with open(path, "w", encoding="utf-8", newline="") as handle:
                handle.write("\n".join(self.header_lines()) + "\n")
                frame.to_csv(handle, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        else:
            records = [_plain(row) for row in frame.to_dict(orient="records")]
            self._dump(path, {"header": self.header, name: records})
        self.written.append(path)
        logger.info("Wrote %s", path)
        return path

    def write_document(self, name: str, document: Dict[str, Any]) -> Path:
        """A structured document; in CSV mode it is flattened to key/value rows."""
        if self.fmt == FORMAT_JSON:
            path = self._path(name)
            self._dump(path, {"header": self.header, name: _plain(document)})
            self.written.append(path)
            return path
        rows = [{"key": key, "value": value} for key, value in _flatten(document)]
        return self.write_table(name, pd.DataFrame(rows, columns=["key", "value"]))

    def write_matrix(self, name: str, matrix: np.ndarray, row_name: str, rows: np.ndarray,
                     column_name: str, columns: np.ndarray) -> Path:
        """A 2-D grid; CSV puts the row axis in the first column, one column per grid value."""
        if self.fmt == FORMAT_JSON:
            return self.write_document(name, {row_name: rows, column_name: columns, "values": matrix})
        frame = pd.DataFrame(np.asarray(matrix), columns=[f"{column_name}={value!r}" for value in columns.tolist()])
        frame.insert(0, row_name, rows)
        return self.write_table(name, frame)

    def _dump(self, path: Path, document: Dict[str, Any]):
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            json.dump(document, handle, indent=2, allow_nan=False)
            handle.write("\n")


def _flatten(document: Mapping[str, Any], prefix: str = ""):
    for key, value in document.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            yield from _flatten(value, f"{name}.")
        else:
            plain = _plain(value)
            yield name, json.dumps(plain) if isinstance(plain, (list, dict)) else plain
