"""
Reports package for OPTOTTO application.
"""

from .results_writer import ResultsWriter
from .summary_formatter import SummaryFormatter

__all__ = [
    "ResultsWriter",
    "SummaryFormatter",
]
