import numpy as np
import pytest

from src.core.domain import Dataset, SyntheticSpec
from src.application.repositories import IDatasetRepository
from src.application.services.dataset_service import DatasetService


def random_dataset(n: int, d: int, seed: int, noise: float = 0.1) -> Dataset:
    """A normalized dataset with dense random weights and Gaussian noise."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, d))
    y = x @ rng.uniform(-1.0, 1.0, size=d) + noise * rng.standard_normal(n)
    return Dataset.from_raw(x, y)


@pytest.fixture
def make_dataset():
    return random_dataset


@pytest.fixture
def small_dataset() -> Dataset:
    return random_dataset(n=30, d=4, seed=11)


@pytest.fixture
def dataset_service(mocker) -> DatasetService:
    return DatasetService(mocker.create_autospec(IDatasetRepository, instance=True))


@pytest.fixture
def synthetic_d5(dataset_service) -> tuple[Dataset, np.ndarray]:
    spec = SyntheticSpec(n=300, d=5, k_true=2, seed=7)
    return dataset_service.generate_synthetic(spec)
