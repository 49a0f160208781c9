"""
Interface for the Report Repository.

This port defines the contract for persisting experiment reports
in machine-readable formats.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from src.application.dto import ExperimentReportDTO


class IReportRepository(ABC):
    """
    Abstract base class for report persistence.
    """

    @abstractmethod
    def write(
        self,
        report: ExperimentReportDTO,
        directory: Path,
        stem: str,
        include_timings: bool = False,
    ) -> list[Path]:
        """
        Writes ``<stem>.csv`` (the rows) and ``<stem>.json`` (rows and config).

        :param report: The report to write.
        :param directory: Output directory, created if missing.
        :param stem: File name without suffix.
        :param include_timings: Keep wall-clock columns (these differ run to run).
        :return: The paths written.
        """
        ...
