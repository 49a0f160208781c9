"""
File-based implementations of the repository ports.
"""

from .csv_dataset_repository import FLOAT_FORMAT, CsvDatasetRepository, sidecar_path
from .qubo_text_repository import QuboTextRepository
from .report_repository import FileReportRepository

__all__ = [
    "FLOAT_FORMAT",
    "CsvDatasetRepository",
    "sidecar_path",
    "QuboTextRepository",
    "FileReportRepository",
]
