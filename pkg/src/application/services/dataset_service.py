import logging
from pathlib import Path

import numpy as np

from src.core.domain import Dataset, SyntheticSpec, XDistribution
from src.core.exceptions import DegenerateSplitError

from src.application.dto import SyntheticSidecarDTO
from src.application.repositories import IDatasetRepository

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1

# Independent random streams of one synthetic spec.
_TRAIN_STREAM = 0
_HOLDOUT_STREAM = 1


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed & _MASK64, stream)))


def _draw_design(
    rng: np.random.Generator, n: int, d: int, distribution: XDistribution
) -> np.ndarray:
    if distribution is XDistribution.UNIFORM:
        return rng.uniform(-1.0, 1.0, size=(n, d))
    return rng.standard_normal(size=(n, d))


def _feature_names(d: int) -> tuple[str, ...]:
    return tuple(f"x{j}" for j in range(d))


class DatasetService:
    """
    Manages ingestion, synthesis and splitting of regression datasets.
    """

    def __init__(self, dataset_repo: IDatasetRepository):
        """
        Initializes the service with its repository dependency (Dependency Injection).

        :param dataset_repo: The repository tables are read from and written to.
        """
        self._dataset_repo = dataset_repo

    def load_csv(
        self,
        path: Path,
        target_column: str | int | None = None,
        center: bool = False,
    ) -> Dataset:
        """
        Reads a CSV table with ℓ2-normalized feature columns.

        :param path: The CSV file (header row mandatory).
        :param target_column: Header name or 0-based index; None selects the last column.
        :param center: Subtract column means before normalizing.
        :return: The `Dataset`, rows in file order.
        """
        ds = self._dataset_repo.load(path, target_column=target_column, center=center)
        logger.info("Loaded %s: N=%d, d=%d", path, ds.n_samples, ds.n_features)
        return ds

    def generate_synthetic(self, spec: SyntheticSpec) -> tuple[Dataset, np.ndarray]:
        """
        Draws a noise-free instance y = X·w with a k_true-sparse w.

        X is drawn from ``spec.x_distribution`` and column-normalized
        *before* y is computed, so the generating weights are exact in
        normalized coordinates. Identical specs give bit-identical output.

        :param spec: The `SyntheticSpec` (k_true ≤ d is enforced by the model).
        :return: The dataset and the generating weight vector.
        """
        rng = _rng(spec.seed, _TRAIN_STREAM)
        x_raw = _draw_design(rng, spec.n, spec.d, spec.x_distribution)

        support = rng.choice(spec.d, size=spec.k_true, replace=False)
        low, high = spec.w_range
        magnitudes = rng.uniform(low, high, size=spec.k_true)
        signs = rng.choice(np.array([-1.0, 1.0]), size=spec.k_true)
        true_w = np.zeros(spec.d)
        true_w[support] = signs * magnitudes

        unlabeled = Dataset.from_raw(x_raw, np.zeros(spec.n), _feature_names(spec.d))
        ds = Dataset(
            x=unlabeled.x,
            y=unlabeled.x @ true_w,
            column_norms=unlabeled.column_norms,
            feature_names=unlabeled.feature_names,
        )
        logger.info(
            "Generated synthetic data: N=%d, d=%d, k_true=%d, seed=%d",
            spec.n,
            spec.d,
            spec.k_true,
            spec.seed,
        )
        return ds, true_w

    def generate_holdout(
        self,
        spec: SyntheticSpec,
        true_w: np.ndarray,
        column_norms: np.ndarray,
        n: int,
    ) -> Dataset:
        """
        Draws a separate test set from the distribution of ``spec``.

        Rows are scaled by the *training* column norms and labeled with the
        same generating weights, so a perfect training fit is perfect here too.

        :param spec: The spec the training data came from.
        :param true_w: Its generating weights.
        :param column_norms: The training normalization statistics.
        :param n: Number of test rows.
        """
        rng = _rng(spec.seed, _HOLDOUT_STREAM)
        x_raw = _draw_design(rng, n, spec.d, spec.x_distribution)
        x_scaled = x_raw / column_norms
        return Dataset.from_scaled(
            x_raw, x_scaled @ true_w, column_norms, _feature_names(spec.d)
        )

    def split(
        self, ds: Dataset, test_fraction: float, seed: int
    ) -> tuple[Dataset, Dataset]:
        """
        Partitions rows at random into train and test sets.

        Normalization statistics are recomputed on the train rows only and
        applied unchanged to the test rows. Row order is kept within each part.

        :param ds: The dataset to split.
        :param test_fraction: Share of rows going to the test set, in (0, 1).
        :param seed: Seed of the row permutation.
        :raises DegenerateSplitError: If either part would be empty.
        :return: (train, test)
        """
        n = ds.n_samples
        n_test = int(round(n * test_fraction)) if 0.0 < test_fraction < 1.0 else 0
        n_train = n - n_test
        if n_test < 1 or n_train < 1:
            raise DegenerateSplitError(n_train, n_test)

        permutation = _rng(seed, _TRAIN_STREAM).permutation(n)
        test_rows = np.sort(permutation[:n_test])
        train_rows = np.sort(permutation[n_test:])

        raw = ds.raw_x()
        train = Dataset.from_raw(raw[train_rows], ds.y[train_rows], ds.feature_names)
        test = Dataset.from_scaled(
            raw[test_rows], ds.y[test_rows], train.column_norms, ds.feature_names
        )
        return train, test

    def save_synthetic(
        self,
        ds: Dataset,
        true_w: np.ndarray,
        spec: SyntheticSpec,
        path: Path,
    ) -> None:
        """
        Writes a synthetic dataset as CSV plus its JSON sidecar.

        :param ds: The generated dataset.
        :param true_w: Its generating weights.
        :param spec: The spec it was generated from.
        :param path: Destination of the CSV file.
        """
        sidecar = SyntheticSidecarDTO(
            spec=spec,
            true_w=[float(v) for v in true_w],
            column_norms=[float(v) for v in ds.column_norms],
        )
        self._dataset_repo.save(ds, path, sidecar=sidecar)
        logger.info("Wrote %s and its sidecar", path)
