"""
Data Transfer Objects for the comparison experiments.

These define the inputs of a sweep (which datasets, which λ grid, which
solvers) and the rows of the resulting classical-vs-QUBO report.
"""

from pathlib import Path
from typing import Annotated, Any

from pydantic import BaseModel, Field, PositiveInt, model_validator

from src.core.domain import AnnealSchedule, SolverKind, SyntheticSpec
from src.core.exceptions import InvalidExperimentSpecError

from .dataset_dto import FileReferenceDTO

DEFAULT_LAMBDA_TIMES_D = (10.0, 1.0, 0.1, 0.01, 0.001)


class ExperimentSpecDTO(BaseModel):
    """
    Input DTO describing a sweep.

    Exactly one of ``lambda_grid`` (absolute λ values) and
    ``lambda_times_d`` (λ·d values, divided by each dataset's d) is used.

    :param datasets: Synthetic specs and/or files to fit.
    :param lambda_grid: Absolute λ values.
    :param lambda_times_d: λ·d values.
    :param solvers: Solvers to run; exhaustive search provides the classical columns.
    :param schedule: Annealing schedule (its ``num_reads`` is replaced by ``reads``).
    :param reads: Read counts; one row per count for annealing solvers.
    :param holdout_samples: Size of the separately generated synthetic test set.
    :param alpha: Neumann step size override.
    :param output_dir: Where reports are written (None = do not write).
    """

    datasets: Annotated[
        list[SyntheticSpec | FileReferenceDTO],
        Field(min_length=1, description="Datasets to fit."),
    ]
    lambda_grid: list[float] | None = None
    lambda_times_d: list[float] | None = None
    solvers: list[SolverKind] = [SolverKind.EXHAUSTIVE, SolverKind.SA]
    schedule: AnnealSchedule = AnnealSchedule()
    reads: list[PositiveInt] = [100]
    holdout_samples: PositiveInt | None = 1000
    alpha: float | None = None
    output_dir: Path | None = None

    @model_validator(mode="after")
    def _check_grids(self) -> "ExperimentSpecDTO":
        if (self.lambda_grid is None) == (self.lambda_times_d is None):
            raise InvalidExperimentSpecError(
                "Give exactly one of lambda_grid and lambda_times_d."
            )
        grid = self.lambda_grid if self.lambda_grid is not None else self.lambda_times_d
        if not grid:
            raise InvalidExperimentSpecError("The lambda grid is empty.")
        if any(value < 0 for value in grid):
            raise InvalidExperimentSpecError("Lambda values must be non-negative.")
        if not self.solvers:
            raise InvalidExperimentSpecError("At least one solver is required.")
        if not self.reads:
            raise InvalidExperimentSpecError("At least one read count is required.")
        return self

    def lambdas_for(self, d: int) -> list[tuple[float | None, float]]:
        """(λ·d or None, λ) pairs for a dataset with d features."""
        if self.lambda_times_d is not None:
            return [(value, value / d) for value in self.lambda_times_d]
        assert self.lambda_grid is not None
        return [(None, value) for value in self.lambda_grid]


class ComparisonRowDTO(BaseModel):
    """
    Output DTO: one row of a classical-vs-QUBO comparison table.

    Column order follows the published tables: N, d, λ×d, ‖w‖₀ classical,
    ‖w‖₀ QUBO, objective classical, objective QUBO, preprocessing and
    processing seconds; followed by the MSE-gap columns.
    """

    n: int
    d: int
    lambda_times_d: float | None = None
    lam: float
    qubo_solver: SolverKind | None = None
    reads: int | None = None
    cardinality_classical: int | None = None
    cardinality_qubo: int | None = None
    objective_classical: float | None = None
    objective_qubo: float | None = None
    preprocessing_seconds: float | None = None
    processing_seconds: float | None = None
    train_mse_gap: float | None = None
    test_mse_gap: float | None = None
    matched: bool | None = None


TIMING_COLUMNS = ("preprocessing_seconds", "processing_seconds")


class ExperimentReportDTO(BaseModel):
    """
    Output DTO: a full experiment report.

    :param name: Short identifier ("synthetic", "diabetes").
    :param rows: Rows ordered by (dataset, λ, reads, solver).
    :param config: Everything needed to rerun: seeds, schedule, α, grids.
    """

    name: str
    rows: list[ComparisonRowDTO]
    config: dict[str, Any]
