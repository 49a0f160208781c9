import logging
from pathlib import Path
from typing import Any, Sequence

from src.core.domain import AnnealSchedule, Dataset, FitReport, SolverKind, SyntheticSpec
from src.core.exceptions import InvalidExperimentSpecError

from src.application.dto import (
    ComparisonRowDTO,
    ExperimentReportDTO,
    ExperimentSpecDTO,
    FileReferenceDTO,
)
from src.application.interfaces import IDiabetesSource
from src.application.repositories import IReportRepository
from .dataset_service import DatasetService
from .regression_service import RegressionService

logger = logging.getLogger(__name__)

DIABETES_LAMBDAS = (10000.0, 1000.0, 100.0, 10.0, 1.0)
MATCH_TOLERANCE = 1e-9


def _matched(classical: float, qubo: float) -> bool:
    return abs(qubo - classical) <= MATCH_TOLERANCE * max(1.0, abs(classical))


def _gap(a: float | None, b: float | None) -> float | None:
    if a is None or b is None:
        return None
    return abs(a - b)


class ExperimentService:
    """
    Runs classical-vs-QUBO comparison experiments and assembles their reports.
    """

    def __init__(
        self,
        dataset_service: DatasetService,
        regression_service: RegressionService,
        diabetes_source: IDiabetesSource | None = None,
        report_repo: IReportRepository | None = None,
    ):
        """
        Initializes the service with its dependencies (Dependency Injection).

        :param dataset_service: Loads and synthesizes datasets.
        :param regression_service: Runs the individual fits.
        :param diabetes_source: Provider of the bundled Diabetes table.
        :param report_repo: Where reports are written when an output directory is given.
        """
        self._datasets = dataset_service
        self._regression = regression_service
        self._diabetes_source = diabetes_source
        self._report_repo = report_repo

    # --- Experiments ---

    def run_synthetic_sweep(
        self, spec: ExperimentSpecDTO, include_timings: bool = False
    ) -> ExperimentReportDTO:
        """
        Fits every dataset of the sweep over its λ grid with every solver.

        Business Rules:
        1. Exhaustive search provides the classical columns of each row.
        2. Annealing rows are repeated per read count; enumeration rows once.
        3. Synthetic datasets get a separately generated hold-out set.
        4. Rows are ordered by (dataset, λ as listed, reads, solver).

        :param spec: The sweep definition.
        :param include_timings: Keep wall-clock columns in the written files.
        :return: The `ExperimentReportDTO`.
        """
        rows: list[ComparisonRowDTO] = []
        for source in spec.datasets:
            train, test = self._materialize(source, spec.holdout_samples)
            for lambda_times_d, lam in spec.lambdas_for(train.n_features):
                rows.extend(
                    self._compare(
                        train,
                        lam,
                        lambda_times_d,
                        spec.solvers,
                        spec.schedule,
                        spec.reads,
                        spec.alpha,
                        test,
                    )
                )

        report = ExperimentReportDTO(
            name="synthetic",
            rows=rows,
            config=spec.model_dump(mode="json", exclude={"output_dir"}),
        )
        self._write(report, spec.output_dir, include_timings)
        return report

    def run_diabetes(
        self,
        path: Path | None = None,
        lambdas: Sequence[float] = DIABETES_LAMBDAS,
        reads: int = 100,
        schedule: AnnealSchedule | None = None,
        scaled: bool = True,
        solvers: Sequence[SolverKind] = (SolverKind.EXHAUSTIVE, SolverKind.SA),
        alpha: float | None = None,
        output_dir: Path | None = None,
        include_timings: bool = False,
    ) -> ExperimentReportDTO:
        """
        Runs the real-data comparison on the 442×10 Diabetes table.

        :param path: A CSV copy of the table; None uses the bundled source.
        :param lambdas: Absolute λ values, one row each.
        :param reads: Annealing reads per λ.
        :param schedule: Annealing schedule (its read count is replaced by ``reads``).
        :param scaled: For the bundled source, start from the pre-scaled features.
        :param solvers: Solvers to run.
        :param alpha: Neumann step size override.
        :param output_dir: Where the report is written (None = do not write).
        :param include_timings: Keep wall-clock columns in the written files.
        :raises InvalidExperimentSpecError: If no table is available or a grid is empty.
        :return: The `ExperimentReportDTO`.
        """
        if not lambdas or not solvers:
            raise InvalidExperimentSpecError("Give at least one lambda and one solver.")
        if path is not None:
            ds = self._datasets.load_csv(path)
        elif self._diabetes_source is not None:
            ds = self._diabetes_source.load(scaled=scaled)
        else:
            raise InvalidExperimentSpecError(
                "No Diabetes table: pass a CSV path or configure a data source."
            )
        schedule = schedule or AnnealSchedule()

        rows: list[ComparisonRowDTO] = []
        for lam in lambdas:
            rows.extend(
                self._compare(ds, lam, None, solvers, schedule, [reads], alpha, None)
            )

        config: dict[str, Any] = {
            "path": str(path) if path is not None else None,
            "scaled": scaled,
            "lambdas": list(lambdas),
            "reads": reads,
            "solvers": [solver.value for solver in solvers],
            "schedule": schedule.model_dump(mode="json"),
            "alpha": alpha,
        }
        report = ExperimentReportDTO(name="diabetes", rows=rows, config=config)
        self._write(report, output_dir, include_timings)
        return report

    # --- Internals ---

    def _materialize(
        self, source: SyntheticSpec | FileReferenceDTO, holdout_samples: int | None
    ) -> tuple[Dataset, Dataset | None]:
        if isinstance(source, FileReferenceDTO):
            ds = self._datasets.load_csv(
                source.path, target_column=source.target_column, center=source.center
            )
            return ds, None

        ds, true_w = self._datasets.generate_synthetic(source)
        if holdout_samples is None:
            return ds, None
        test = self._datasets.generate_holdout(
            source, true_w, ds.column_norms, holdout_samples
        )
        return ds, test

    def _compare(
        self,
        ds: Dataset,
        lam: float,
        lambda_times_d: float | None,
        solvers: Sequence[SolverKind],
        schedule: AnnealSchedule,
        reads: Sequence[int],
        alpha: float | None,
        test: Dataset | None,
    ) -> list[ComparisonRowDTO]:
        classical: FitReport | None = None
        if SolverKind.EXHAUSTIVE in solvers:
            classical = self._regression.fit(ds, lam, SolverKind.EXHAUSTIVE, test=test)

        runs: list[tuple[SolverKind, int | None, AnnealSchedule | None]] = []
        if SolverKind.SA in solvers:
            for read_count in reads:
                per_count = schedule.model_copy(update={"num_reads": read_count})
                runs.append((SolverKind.SA, read_count, per_count))
        if SolverKind.ENUMERATE in solvers:
            runs.append((SolverKind.ENUMERATE, None, None))

        if not runs:
            return [self._row(ds, lam, lambda_times_d, classical, None, None, None)]

        rows = []
        for solver, read_count, run_schedule in runs:
            qubo = self._regression.fit(
                ds, lam, solver, schedule=run_schedule, alpha=alpha, test=test
            )
            rows.append(
                self._row(ds, lam, lambda_times_d, classical, qubo, solver, read_count)
            )
        return rows

    @staticmethod
    def _row(
        ds: Dataset,
        lam: float,
        lambda_times_d: float | None,
        classical: FitReport | None,
        qubo: FitReport | None,
        solver: SolverKind | None,
        reads: int | None,
    ) -> ComparisonRowDTO:
        row = ComparisonRowDTO(
            n=ds.n_samples,
            d=ds.n_features,
            lambda_times_d=lambda_times_d,
            lam=lam,
            qubo_solver=solver,
            reads=reads,
            cardinality_classical=classical.cardinality if classical else None,
            cardinality_qubo=qubo.cardinality if qubo else None,
            objective_classical=classical.objective if classical else None,
            objective_qubo=qubo.objective if qubo else None,
            preprocessing_seconds=qubo.timings.compile_seconds if qubo else None,
            processing_seconds=qubo.timings.solve_seconds if qubo else None,
            train_mse_gap=_gap(
                classical.mse_train if classical else None,
                qubo.mse_train if qubo else None,
            ),
            test_mse_gap=_gap(
                classical.mse_test if classical else None,
                qubo.mse_test if qubo else None,
            ),
            matched=(
                _matched(classical.objective, qubo.objective)
                if classical and qubo
                else None
            ),
        )
        logger.info(
            "N=%d d=%d lambda=%g %s: classical |z|=%s, qubo |z|=%s, matched=%s",
            row.n,
            row.d,
            lam,
            solver.value if solver else "-",
            row.cardinality_classical,
            row.cardinality_qubo,
            row.matched,
        )
        return row

    def _write(
        self,
        report: ExperimentReportDTO,
        output_dir: Path | None,
        include_timings: bool,
    ) -> None:
        if output_dir is None:
            return
        if self._report_repo is None:
            raise InvalidExperimentSpecError(
                "An output directory was given but no report repository is configured."
            )
        written = self._report_repo.write(
            report, output_dir, report.name, include_timings=include_timings
        )
        logger.info("Wrote %s", ", ".join(str(path) for path in written))
