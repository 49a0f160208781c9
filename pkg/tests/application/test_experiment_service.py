from pathlib import Path

import pytest

from src.core.domain import AnnealSchedule, SolverKind, SyntheticSpec
from src.core.exceptions import InvalidExperimentSpecError

from src.application.dto import ExperimentSpecDTO, FileReferenceDTO
from src.application.interfaces import IDiabetesSource
from src.application.repositories import IReportRepository
from src.application.services.experiment_service import ExperimentService
from src.application.services.regression_service import RegressionService
from src.infrastructure.samplers import ExactSampler, SimulatedAnnealingSampler


@pytest.fixture
def regression_service() -> RegressionService:
    return RegressionService(
        {SolverKind.SA: SimulatedAnnealingSampler(), SolverKind.ENUMERATE: ExactSampler()}
    )


@pytest.fixture
def report_repo(mocker):
    repo = mocker.create_autospec(IReportRepository, instance=True)
    repo.write.return_value = []
    return repo


@pytest.fixture
def service(dataset_service, regression_service, report_repo) -> ExperimentService:
    return ExperimentService(dataset_service, regression_service, report_repo=report_repo)


def _sweep(**overrides) -> ExperimentSpecDTO:
    values = {
        "datasets": [SyntheticSpec(n=40, d=4, k_true=2, seed=3)],
        "lambda_times_d": [0.1, 0.01],
        "solvers": [SolverKind.EXHAUSTIVE, SolverKind.SA, SolverKind.ENUMERATE],
        "schedule": AnnealSchedule(sweeps_per_read=50),
        "reads": [5, 10],
        "holdout_samples": 20,
    }
    values.update(overrides)
    return ExperimentSpecDTO(**values)


class TestSyntheticSweep:
    def test_rows_are_ordered_by_lambda_reads_and_solver(self, service):
        report = service.run_synthetic_sweep(_sweep())

        keys = [(row.lambda_times_d, row.qubo_solver, row.reads) for row in report.rows]
        assert keys == [
            (0.1, SolverKind.SA, 5),
            (0.1, SolverKind.SA, 10),
            (0.1, SolverKind.ENUMERATE, None),
            (0.01, SolverKind.SA, 5),
            (0.01, SolverKind.SA, 10),
            (0.01, SolverKind.ENUMERATE, None),
        ]
        assert report.name == "synthetic"

    def test_rows_carry_both_fits(self, service):
        report = service.run_synthetic_sweep(_sweep())

        for row in report.rows:
            assert (row.n, row.d) == (40, 4)
            assert row.lam == pytest.approx(row.lambda_times_d / 4)
            assert row.objective_qubo >= row.objective_classical - 1e-9
            assert row.matched == (
                abs(row.objective_qubo - row.objective_classical)
                <= 1e-9 * max(1.0, abs(row.objective_classical))
            )
            assert row.train_mse_gap >= 0.0
            assert row.test_mse_gap is not None

    def test_held_out_mse_gap_is_negligible_for_moderate_lambda(self, service):
        report = service.run_synthetic_sweep(
            _sweep(
                datasets=[SyntheticSpec(n=300, d=5, k_true=2, seed=5)],
                lambda_times_d=[1.0, 0.1],
                solvers=[SolverKind.EXHAUSTIVE, SolverKind.SA],
                schedule=AnnealSchedule(sweeps_per_read=300, seed=2),
                reads=[100],
                holdout_samples=1000,
            )
        )

        assert len(report.rows) == 2
        for row in report.rows:
            assert row.test_mse_gap is not None
            assert abs(row.test_mse_gap) < 1e-6

    def test_classical_only_sweep_has_one_row_per_lambda(self, service):
        report = service.run_synthetic_sweep(
            _sweep(solvers=[SolverKind.EXHAUSTIVE], holdout_samples=None)
        )

        assert len(report.rows) == 2
        for row in report.rows:
            assert row.qubo_solver is None
            assert row.objective_qubo is None
            assert row.matched is None
            assert row.cardinality_classical is not None
            assert row.test_mse_gap is None

    def test_absolute_lambda_grid(self, service):
        report = service.run_synthetic_sweep(
            _sweep(lambda_times_d=None, lambda_grid=[0.5], solvers=[SolverKind.ENUMERATE])
        )

        (row,) = report.rows
        assert row.lam == 0.5
        assert row.lambda_times_d is None
        assert row.cardinality_classical is None

    def test_config_is_recorded_without_output_dir(self, service, tmp_path):
        report = service.run_synthetic_sweep(_sweep(output_dir=tmp_path))

        assert "output_dir" not in report.config
        assert report.config["reads"] == [5, 10]
        assert report.config["datasets"][0]["seed"] == 3

    def test_writes_report_when_output_dir_given(self, service, report_repo, tmp_path):
        report = service.run_synthetic_sweep(_sweep(output_dir=tmp_path), include_timings=True)

        report_repo.write.assert_called_once_with(
            report, tmp_path, "synthetic", include_timings=True
        )

    def test_does_not_write_without_output_dir(self, service, report_repo):
        service.run_synthetic_sweep(_sweep(solvers=[SolverKind.EXHAUSTIVE]))

        report_repo.write.assert_not_called()

    def test_output_dir_needs_a_repository(self, dataset_service, regression_service, tmp_path):
        service = ExperimentService(dataset_service, regression_service)

        with pytest.raises(InvalidExperimentSpecError):
            service.run_synthetic_sweep(
                _sweep(solvers=[SolverKind.EXHAUSTIVE], output_dir=tmp_path)
            )

    def test_file_datasets_are_loaded(self, service, dataset_service, small_dataset):
        dataset_service._dataset_repo.load.return_value = small_dataset
        reference = FileReferenceDTO(path=Path("table.csv"), target_column=2)

        report = service.run_synthetic_sweep(
            _sweep(datasets=[reference], solvers=[SolverKind.EXHAUSTIVE])
        )

        dataset_service._dataset_repo.load.assert_called_once_with(
            Path("table.csv"), target_column=2, center=False
        )
        assert report.rows[0].n == 30
        assert report.rows[0].test_mse_gap is None


class TestDiabetes:
    @pytest.fixture
    def source(self, mocker, make_dataset):
        source = mocker.create_autospec(IDiabetesSource, instance=True)
        source.load.return_value = make_dataset(n=50, d=5, seed=1)
        return source

    def test_uses_source_and_absolute_lambdas(
        self, dataset_service, regression_service, source
    ):
        service = ExperimentService(dataset_service, regression_service, diabetes_source=source)

        report = service.run_diabetes(
            lambdas=(10.0, 0.1),
            reads=5,
            schedule=AnnealSchedule(sweeps_per_read=30),
            scaled=False,
        )

        source.load.assert_called_once_with(scaled=False)
        assert report.name == "diabetes"
        assert [row.lam for row in report.rows] == [10.0, 0.1]
        assert all(row.reads == 5 for row in report.rows)
        assert report.config["schedule"]["num_reads"] == 100
        assert report.config["scaled"] is False

    def test_csv_path_takes_precedence(
        self, dataset_service, regression_service, source, make_dataset
    ):
        dataset_service._dataset_repo.load.return_value = make_dataset(n=20, d=3, seed=2)
        service = ExperimentService(dataset_service, regression_service, diabetes_source=source)

        report = service.run_diabetes(
            path=Path("diabetes.csv"), lambdas=(1.0,), solvers=(SolverKind.EXHAUSTIVE,)
        )

        source.load.assert_not_called()
        assert report.rows[0].d == 3

    def test_needs_a_table(self, dataset_service, regression_service):
        service = ExperimentService(dataset_service, regression_service)

        with pytest.raises(InvalidExperimentSpecError):
            service.run_diabetes()

    def test_rejects_empty_grid(self, dataset_service, regression_service, source):
        service = ExperimentService(dataset_service, regression_service, diabetes_source=source)

        with pytest.raises(InvalidExperimentSpecError):
            service.run_diabetes(lambdas=())


def test_spec_requires_exactly_one_grid():
    with pytest.raises(InvalidExperimentSpecError):
        ExperimentSpecDTO(datasets=[SyntheticSpec(n=5, d=2, k_true=1)])
    with pytest.raises(InvalidExperimentSpecError):
        ExperimentSpecDTO(
            datasets=[SyntheticSpec(n=5, d=2, k_true=1)], lambda_grid=[1.0], lambda_times_d=[1.0]
        )
