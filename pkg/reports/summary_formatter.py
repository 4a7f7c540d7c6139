"""
OPTOTTO RUN SUMMARY FORMATTER

Responsibilities:
- Format the run summary printed to standard output
- Fixed-width key/value layout with section separators
"""

from typing import Iterable, List, Optional, Sequence, Tuple

from config.settings import APP_NAME, APP_VERSION

Row = Tuple[str, object]


class SummaryFormatter:
    """Plain-text summary blocks; deterministic, no timestamps."""

    SUMMARY_WIDTH = 60
    SEPARATOR_CHAR = "-"
    KEY_WIDTH = 34

    def format_summary(
        self,
        scenario: str,
        sections: Sequence[Tuple[str, Iterable[Row]]],
        diagnostics: Optional[Sequence[str]] = None,
        files: Optional[Sequence[str]] = None,
    ) -> str:
        """
        Build the summary text.

        Args:
            scenario: Scenario name shown under the title.
            sections: (title, rows) pairs; each row is (label, value).
            diagnostics: Warning messages collected during the run.
            files: Paths written by the run.

        Returns:
            Multi-line summary.
        """
        lines = [
            self._center(f"{APP_NAME} {APP_VERSION}"),
            self._center(f"{scenario.upper()} SUMMARY"),
            self._separator(),
        ]
        for title, rows in sections:
            lines.append(title)
            lines.append(self._separator())
            for label, value in rows:
                lines.append(self._row(label, value))
            lines.append(self._separator())

        if diagnostics:
            lines.append(f"Diagnostics ({len(diagnostics)})")
            lines.extend(f"  ! {message}" for message in diagnostics)
            lines.append(self._separator())
        if files:
            lines.append("Files")
            lines.extend(f"  {path}" for path in files)
            lines.append(self._separator())
        return "\n".join(lines)

    def format_checks(self, results: Sequence[Tuple[str, bool, str]]) -> str:
        """✓/✗ lines for the validate scenario, followed by a pass count."""
        lines: List[str] = [self._center("VALIDATION"), self._separator()]
        for name, passed, detail in results:
            mark = "✓" if passed else "✗"
            lines.append(f"{mark} {name}: {detail}")
        lines.append(self._separator())
        passed = sum(1 for _, ok, _ in results if ok)
        lines.append(f"{passed}/{len(results)} checks passed")
        return "\n".join(lines)

    def _row(self, label: str, value: object) -> str:
        return f"{label:<{self.KEY_WIDTH}} {self._value(value):>{self.SUMMARY_WIDTH - self.KEY_WIDTH - 1}}"

    @staticmethod
    def _value(value: object) -> str:
        if isinstance(value, float):
            return f"{value:.6g}"
        return str(value)

    def _center(self, text: str) -> str:
        return text.center(self.SUMMARY_WIDTH)

    def _separator(self) -> str:
        return self.SEPARATOR_CHAR * self.SUMMARY_WIDTH
