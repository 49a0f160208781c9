"""
Domain Models Package

This package defines the public API for the core domain models.

It imports all models from the ``models`` module and exposes
them directly at the package level (e.g., ``from src.core.domain import Dataset``).

The ``__all__`` list is used to explicitly define which models
are part of this public API, enabling clean imports and
controlling wildcard imports.
"""

from .models import (
    MAX_POLY_DEGREE,
    XDistribution,
    SolverKind,
    OutputFormat,
    Dataset,
    SyntheticSpec,
    GramSummary,
    MultilinearPoly,
    CompileIntermediates,
    AuxDefinition,
    QuboModel,
    IsingModel,
    AnnealSchedule,
    Read,
    EnergySummary,
    SampleSet,
    Timings,
    FitReport,
)

__all__ = [
    # Constants
    "MAX_POLY_DEGREE",
    # Enums
    "XDistribution",
    "SolverKind",
    "OutputFormat",
    # Data
    "Dataset",
    "SyntheticSpec",
    "GramSummary",
    # Polynomials and models
    "MultilinearPoly",
    "CompileIntermediates",
    "AuxDefinition",
    "QuboModel",
    "IsingModel",
    # Sampling
    "AnnealSchedule",
    "Read",
    "EnergySummary",
    "SampleSet",
    # Reports
    "Timings",
    "FitReport",
]
