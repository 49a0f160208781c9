import numpy as np
import pytest

from src.core.domain import AnnealSchedule, Dataset, Read, SampleSet, SolverKind
from src.core.exceptions import SizeGuardError, SolverError
from src.core.kernels import default_alpha, exhaustive_subset_search, qubo_value, score

from src.application.interfaces import ISampler
from src.application.services.regression_service import RegressionService
from src.infrastructure.samplers import ExactSampler


@pytest.fixture
def sampler(mocker):
    return mocker.create_autospec(ISampler, instance=True)


def _reads(qubo, assignments: list[tuple[int, tuple[int, ...]]]) -> SampleSet:
    return SampleSet(
        reads=tuple(
            Read(assignment=x, energy=qubo_value(qubo, x), read_index=r) for r, x in assignments
        )
    )


class TestCompile:
    def test_produces_consistent_artifacts(self, small_dataset):
        compiled = RegressionService({}).compile(small_dataset, 0.1)

        assert compiled.gram.alpha == pytest.approx(default_alpha(4))
        assert compiled.poly.num_vars == 4
        assert compiled.qubo.num_original == 4
        assert compiled.qubo.num_vars == 4 + compiled.qubo.num_aux
        assert compiled.compile_seconds >= 0.0

    def test_overrides_reach_the_kernels(self, small_dataset):
        compiled = RegressionService({}).compile(small_dataset, 0.1, alpha=0.2, penalty=50.0)

        assert compiled.gram.alpha == 0.2
        assert compiled.qubo.penalty_m == 50.0


class TestFit:
    def test_exhaustive_matches_subset_search(self, small_dataset):
        report = RegressionService({}).fit(small_dataset, 0.5, SolverKind.EXHAUSTIVE)

        z, _, objective = exhaustive_subset_search(small_dataset, 0.5)
        assert report.z == z
        assert report.objective == pytest.approx(objective)
        assert report.solver is SolverKind.EXHAUSTIVE
        assert report.read_energies == ()
        assert report.alpha is None

    def test_exhaustive_respects_size_guard(self, small_dataset):
        service = RegressionService({}, exhaustive_max_features=3)

        with pytest.raises(SizeGuardError):
            service.fit(small_dataset, 0.5, SolverKind.EXHAUSTIVE)

    def test_unregistered_sampler(self, small_dataset):
        with pytest.raises(SolverError):
            RegressionService({}).fit(small_dataset, 0.5, SolverKind.SA)

    def test_sampler_receives_compiled_model_and_schedule(self, small_dataset, sampler):
        service = RegressionService({SolverKind.SA: sampler})
        qubo = service.compile(small_dataset, 0.1).qubo
        sampler.sample.return_value = _reads(qubo, [(0, (0,) * qubo.num_vars)])
        schedule = AnnealSchedule(num_reads=1, seed=4)

        report = service.fit(small_dataset, 0.1, SolverKind.SA, schedule=schedule)

        sampler.sample.assert_called_once_with(qubo, schedule)
        assert report.z == (0, 0, 0, 0)
        assert report.solver is SolverKind.SA
        assert report.num_reads == 1
        assert report.alpha == pytest.approx(default_alpha(4))
        assert report.num_aux == qubo.num_aux

    def test_default_schedule(self, small_dataset, sampler):
        service = RegressionService({SolverKind.SA: sampler})
        qubo = service.compile(small_dataset, 0.1).qubo
        sampler.sample.return_value = _reads(qubo, [(0, (0,) * qubo.num_vars)])

        service.fit(small_dataset, 0.1, SolverKind.SA)

        assert sampler.sample.call_args.args[1] == AnnealSchedule()

    def test_enumeration_returns_refit_of_ground_state(self, small_dataset):
        service = RegressionService({SolverKind.ENUMERATE: ExactSampler()})

        report = service.fit(small_dataset, 0.1, SolverKind.ENUMERATE)

        expected = score(small_dataset, report.z, 0.1)
        assert report.objective == pytest.approx(expected.objective)
        np.testing.assert_allclose(report.w, expected.w)


class TestSelectBest:
    def test_keeps_lowest_refit_objective(self, small_dataset):
        service = RegressionService({})
        qubo = service.compile(small_dataset, 0.01).qubo
        n_aux = qubo.num_aux
        candidates = [(1, 0, 0, 0), (1, 1, 1, 1), (0, 0, 0, 0)]
        sampleset = _reads(qubo, [(r, z + (0,) * n_aux) for r, z in enumerate(candidates)])

        report = service.select_best(small_dataset, 0.01, qubo, sampleset, SolverKind.SA)

        objectives = [score(small_dataset, z, 0.01).objective for z in candidates]
        assert report.z == candidates[int(np.argmin(objectives))]
        assert report.read_energies == sampleset.energies
        assert report.num_reads == 3

    def test_ties_go_to_lowest_read_index(self):
        column = [1.0, 2.0, 3.0]
        ds = Dataset.from_raw(np.column_stack([column, column]), [1.0, 2.5, 2.0])
        service = RegressionService({})
        qubo = service.compile(ds, 0.1).qubo
        assert qubo.num_aux == 0
        sampleset = _reads(qubo, [(5, (1, 0)), (2, (0, 1)), (7, (1, 0))])

        report = service.select_best(ds, 0.1, qubo, sampleset, SolverKind.SA)

        assert report.z == (0, 1)
