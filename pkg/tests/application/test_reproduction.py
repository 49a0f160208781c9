"""
Longer end-to-end runs of the synthetic experiment. Excluded from the
default run; select them with ``pytest -m slow``.
"""

import pytest

from src.core.domain import AnnealSchedule, SolverKind, SyntheticSpec

from src.application.dto import DEFAULT_LAMBDA_TIMES_D, ExperimentSpecDTO
from src.application.services.experiment_service import ExperimentService
from src.application.services.regression_service import RegressionService
from src.infrastructure.samplers import ExactSampler, SimulatedAnnealingSampler

pytestmark = pytest.mark.slow


@pytest.fixture
def experiments(dataset_service) -> ExperimentService:
    regression = RegressionService(
        {SolverKind.SA: SimulatedAnnealingSampler(), SolverKind.ENUMERATE: ExactSampler()}
    )
    return ExperimentService(dataset_service, regression)


@pytest.mark.parametrize("d", [5, 6, 7])
@pytest.mark.parametrize("lambda_times_d", [0.1, 0.01, 0.001])
def test_exhaustive_recovers_noise_free_support(dataset_service, d, lambda_times_d):
    spec = SyntheticSpec(n=300, d=d, k_true=d // 2, seed=d)
    ds, true_w = dataset_service.generate_synthetic(spec)
    lam = lambda_times_d / d

    report = RegressionService({}).fit(ds, lam, SolverKind.EXHAUSTIVE)

    assert report.z == tuple(int(w != 0) for w in true_w)
    assert report.objective == pytest.approx(lam * (d // 2), abs=1e-9)


SUPERSET_ARGMIN = pytest.mark.xfail(
    reason=(
        "the Neumann-weight polynomial is minimized by a superset of the true support "
        "here, so even an exact QUBO ground state refits above the exhaustive optimum"
    ),
    strict=False,
)


@pytest.mark.parametrize(
    ("d", "lambda_times_d"),
    [
        (5, 0.1),
        (5, 0.01),
        (5, 0.001),
        (6, 0.1),
        (6, 0.01),
        (6, 0.001),
        (7, 0.1),
        pytest.param(7, 0.01, marks=SUPERSET_ARGMIN),
        pytest.param(7, 0.001, marks=SUPERSET_ARGMIN),
    ],
)
def test_annealing_matches_exhaustive_on_nine_of_ten_seeds(dataset_service, d, lambda_times_d):
    spec = SyntheticSpec(n=300, d=d, k_true=d // 2, seed=d)
    ds, _ = dataset_service.generate_synthetic(spec)
    lam = lambda_times_d / d
    regression = RegressionService({SolverKind.SA: SimulatedAnnealingSampler()})
    exhaustive = regression.fit(ds, lam, SolverKind.EXHAUSTIVE).objective

    objectives = [
        regression.fit(ds, lam, SolverKind.SA, AnnealSchedule(seed=seed)).objective
        for seed in range(10)
    ]

    matches = sum(abs(objective - exhaustive) <= 1e-9 for objective in objectives)

    assert matches >= 9

def test_full_scale_d5_row_matches_for_both_solvers(experiments):
    spec = ExperimentSpecDTO(
        datasets=[SyntheticSpec(n=3000, d=5, k_true=2, seed=0)],
        lambda_times_d=[0.1],
        solvers=[SolverKind.EXHAUSTIVE, SolverKind.SA],
        holdout_samples=None,
    )

    (row,) = experiments.run_synthetic_sweep(spec).rows

    assert row.cardinality_classical == row.cardinality_qubo == 2
    assert row.objective_classical == pytest.approx(0.04, abs=1e-9)
    assert row.matched


def test_more_reads_never_score_worse(experiments):
    spec = ExperimentSpecDTO(
        datasets=[SyntheticSpec(n=300, d=10, k_true=5, seed=0)],
        lambda_times_d=list(DEFAULT_LAMBDA_TIMES_D),
        solvers=[SolverKind.SA],
        schedule=AnnealSchedule(seed=11),
        reads=[100, 500],
        holdout_samples=None,
    )

    rows = experiments.run_synthetic_sweep(spec).rows

    for few, many in zip(rows[::2], rows[1::2]):
        assert (few.reads, many.reads) == (100, 500)
        assert many.objective_qubo <= few.objective_qubo
