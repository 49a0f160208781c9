"""
Exceptions Package

This package exposes all custom domain exceptions for the application.
It uses ``__all__`` to define the public API.
"""

from .exceptions import (
    DomainError,
    DatasetError,
    CsvParseError,
    NonNumericCellError,
    ZeroColumnError,
    MissingTargetColumnError,
    NonFiniteValueError,
    DegenerateSplitError,
    InvalidSyntheticSpecError,
    DatasetNotNormalizedError,
    ModelError,
    DimensionMismatchError,
    InvalidAlphaError,
    DegreeTooHighError,
    InvalidPenaltyError,
    NonSymmetricMatrixError,
    EmptyModelError,
    QuboFormatError,
    SolverError,
    SizeGuardError,
    InvalidScheduleError,
    ExperimentError,
    InvalidExperimentSpecError,
)

__all__ = [
    # Base classes
    "DomainError",
    "DatasetError",
    "ModelError",
    "SolverError",
    "ExperimentError",
    # "Dataset" errors
    "CsvParseError",
    "NonNumericCellError",
    "ZeroColumnError",
    "MissingTargetColumnError",
    "NonFiniteValueError",
    "DegenerateSplitError",
    "InvalidSyntheticSpecError",
    "DatasetNotNormalizedError",
    # "Model" errors
    "DimensionMismatchError",
    "InvalidAlphaError",
    "DegreeTooHighError",
    "InvalidPenaltyError",
    "NonSymmetricMatrixError",
    "EmptyModelError",
    "QuboFormatError",
    # "Solver" errors
    "SizeGuardError",
    "InvalidScheduleError",
    # "Experiment" errors
    "InvalidExperimentSpecError",
]
