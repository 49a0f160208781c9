import logging

from sklearn.datasets import load_diabetes

from src.core.domain import Dataset

from src.application.interfaces import IDiabetesSource

logger = logging.getLogger(__name__)


class SklearnDiabetesSource(IDiabetesSource):
    """
    The 442×10 Diabetes table bundled with scikit-learn.

    ``scaled=True`` starts from scikit-learn's centered, unit-norm features;
    ``scaled=False`` re-normalizes the raw measurements (no centering).
    Targets are the raw disease-progression values in both cases.
    """

    def load(self, scaled: bool = True) -> Dataset:
        bunch = load_diabetes(scaled=scaled)
        ds = Dataset.from_raw(bunch.data, bunch.target, tuple(bunch.feature_names))
        logger.info(
            "Loaded Diabetes (%s features): N=%d, d=%d",
            "scaled" if scaled else "raw",
            ds.n_samples,
            ds.n_features,
        )
        return ds
