"""
Data Transfer Objects Package

This package defines the public API for all DTOs
used by the Application Service layer.

It imports all DTO classes from their respective modules
and exposes them here, controlling the public API
via the ``__all__`` list.
"""

# Imports from dataset_dto.py
from .dataset_dto import (
    SyntheticSidecarDTO,
    FileReferenceDTO,
)

# Imports from fit_dto.py
from .fit_dto import (
    CompiledQuboDTO,
)

# Imports from experiment_dto.py
from .experiment_dto import (
    DEFAULT_LAMBDA_TIMES_D,
    TIMING_COLUMNS,
    ExperimentSpecDTO,
    ComparisonRowDTO,
    ExperimentReportDTO,
)


# --- Public API Definition ---

__all__ = [
    # Datasets
    "SyntheticSidecarDTO",
    "FileReferenceDTO",
    # Fits
    "CompiledQuboDTO",
    # Experiments
    "DEFAULT_LAMBDA_TIMES_D",
    "TIMING_COLUMNS",
    "ExperimentSpecDTO",
    "ComparisonRowDTO",
    "ExperimentReportDTO",
]
