from itertools import product

import numpy as np
import pytest

from src.core.domain import Dataset, SolverKind
from src.core.exceptions import DimensionMismatchError, SizeGuardError
from src.core.kernels import exhaustive_subset_search, mse, refit, score


def _gray_code_objectives(ds: Dataset, lam: float):
    d = ds.n_features
    for k in range(1 << d):
        code = k ^ (k >> 1)
        z = tuple((code >> (d - 1 - i)) & 1 for i in range(d))
        _, sse = refit(ds, z)
        yield z, sse + lam * sum(z)


class TestScore:
    def test_empty_selection_scores_sum_of_squares(self, small_dataset):
        report = score(small_dataset, (0, 0, 0, 0), 3.0)

        assert report.objective == pytest.approx(float(small_dataset.y @ small_dataset.y))
        assert report.w == (0.0, 0.0, 0.0, 0.0)
        assert report.cardinality == 0

    def test_true_support_of_noise_free_data(self, synthetic_d5):
        ds, true_w = synthetic_d5
        z = tuple(int(v != 0) for v in true_w)

        report = score(ds, z, 0.02)

        assert report.cardinality == 2
        assert report.sse <= 1e-10
        assert report.objective == pytest.approx(0.04, abs=1e-9)
        np.testing.assert_allclose(report.w, true_w, atol=1e-9)

    def test_objective_shifts_linearly_in_lambda(self, small_dataset):
        z = (1, 0, 1, 1)

        low = score(small_dataset, z, 0.5)
        high = score(small_dataset, z, 2.0)

        assert high.objective - low.objective == pytest.approx(1.5 * 3, abs=1e-12)

    def test_reports_train_and_test_mse(self, small_dataset, make_dataset):
        test = make_dataset(n=10, d=4, seed=99)

        report = score(small_dataset, (1, 1, 0, 0), 0.1, solver=SolverKind.SA, test=test)

        assert report.mse_train == pytest.approx(report.sse / 30)
        assert report.mse_test == pytest.approx(mse(test, report.w))
        assert report.solver is SolverKind.SA

    def test_checks_selection_length(self, small_dataset):
        with pytest.raises(DimensionMismatchError):
            score(small_dataset, (1, 0), 0.1)


class TestMse:
    def test_zero_weights_give_mean_square_target(self, small_dataset):
        expected = float(np.mean(small_dataset.y**2))

        assert mse(small_dataset, [0.0] * 4) == pytest.approx(expected)

    def test_generating_weights_fit_noise_free_data(self, synthetic_d5):
        ds, true_w = synthetic_d5

        assert mse(ds, true_w) <= 1e-12

    def test_checks_weight_length(self, small_dataset):
        with pytest.raises(DimensionMismatchError):
            mse(small_dataset, [1.0])


class TestExhaustiveSubsetSearch:
    @pytest.mark.parametrize(("lam", "z", "objective"), [(0.5, (1,), 0.5), (5.0, (0,), 4.0)])
    def test_single_feature(self, lam, z, objective):
        ds = Dataset.from_raw([[1.0]], [2.0])

        found, _, value = exhaustive_subset_search(ds, lam)

        assert found == z
        assert value == pytest.approx(objective)

    def test_noise_free_synthetic_recovers_support(self, synthetic_d5):
        ds, true_w = synthetic_d5

        z, w, objective = exhaustive_subset_search(ds, 0.02)

        assert z == tuple(int(v != 0) for v in true_w)
        assert objective == pytest.approx(0.04, abs=1e-9)
        np.testing.assert_allclose(w, true_w, atol=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_no_selection_scores_lower(self, make_dataset, seed):
        ds = make_dataset(n=25, d=6, seed=seed, noise=0.3)

        _, _, best = exhaustive_subset_search(ds, 0.05)

        for _, objective in _gray_code_objectives(ds, 0.05):
            assert objective >= best - 1e-9

    def test_adding_a_feature_reduces_sse_by_at_most_lambda(self, make_dataset):
        ds = make_dataset(n=40, d=8, seed=21, noise=0.5)
        lam = 0.2

        z, _, _ = exhaustive_subset_search(ds, lam)
        _, sse = refit(ds, z)

        for i in (i for i in range(8) if not z[i]):
            grown = tuple(1 if j == i else bit for j, bit in enumerate(z))
            _, grown_sse = refit(ds, grown)
            assert sse - grown_sse <= lam + 1e-9

    def test_optimum_does_not_increase_as_lambda_decreases(self, make_dataset):
        ds = make_dataset(n=30, d=5, seed=4, noise=0.4)

        optima = [exhaustive_subset_search(ds, lam)[2] for lam in (10.0, 1.0, 0.1, 0.01, 0.0)]

        assert all(a >= b - 1e-9 for a, b in zip(optima, optima[1:]))

    def test_zero_lambda_matches_full_least_squares(self, make_dataset):
        ds = make_dataset(n=30, d=4, seed=8)
        _, full_sse = refit(ds, (1, 1, 1, 1))

        _, _, objective = exhaustive_subset_search(ds, 0.0)

        assert objective == pytest.approx(full_sse, abs=1e-9)

    def test_large_lambda_selects_nothing(self, small_dataset):
        total = float(small_dataset.y @ small_dataset.y)

        z, _, objective = exhaustive_subset_search(small_dataset, total + 1.0)

        assert z == (0, 0, 0, 0)
        assert objective == pytest.approx(total)

    def test_ties_prefer_fewer_features_then_lexicographic_order(self):
        column = [1.0, 2.0, 3.0]
        ds = Dataset.from_raw(np.column_stack([column, column]), column)

        z, _, _ = exhaustive_subset_search(ds, 0.1)

        assert z == (0, 1)

    def test_size_guard(self, small_dataset):
        with pytest.raises(SizeGuardError):
            exhaustive_subset_search(small_dataset, 0.1, max_features=3)

    def test_matches_independent_enumeration(self, make_dataset):
        ds = make_dataset(n=20, d=4, seed=13)
        lam = 0.05

        objectives = {
            z: refit(ds, z)[1] + lam * sum(z) for z in product((0, 1), repeat=4)
        }

        assert exhaustive_subset_search(ds, lam)[2] == pytest.approx(min(objectives.values()))


class TestExhaustiveTieWindow:
    @pytest.fixture
    def fake_sse(self, mocker, small_dataset):
        ds = Dataset.from_raw(small_dataset.x[:, :2], small_dataset.y)
        tolerance = 1e-12 * max(1.0, float(ds.y @ ds.y))

        def install(values):
            mocker.patch(
                "src.core.kernels.subset_search.refit",
                side_effect=lambda _, z, rcond: (np.zeros(2), values(tolerance)[z]),
            )
            return ds

        return install

    def test_earlier_ties_survive_a_smaller_minimum_within_tolerance(self, fake_sse):
        ds = fake_sse(
            lambda tol: {
                (0, 0): 1.0,
                (0, 1): 0.5,
                (1, 0): 0.5 - 0.4 * tol,
                (1, 1): 0.5 - 0.8 * tol,
            }
        )

        z, _, objective = exhaustive_subset_search(ds, 0.0)

        assert z == (0, 1)
        assert objective == 0.5

    def test_a_clearly_better_selection_evicts_earlier_ties(self, fake_sse):
        ds = fake_sse(lambda tol: {(0, 0): 1.0, (0, 1): 0.5, (1, 0): 0.5, (1, 1): 0.4})

        z, _, objective = exhaustive_subset_search(ds, 0.0)

        assert z == (1, 1)
        assert objective == 0.4
