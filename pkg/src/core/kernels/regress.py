"""
Objective evaluation with exact refits.

A selection z is always scored by refitting least squares on the selected
columns and adding λ‖z‖₀, whatever produced z.
"""

from typing import Sequence

import numpy as np

from src.core.domain import Dataset, FitReport, SolverKind, Timings
from src.core.exceptions import DimensionMismatchError
from src.core.kernels.linalg import SINGULAR_RCOND, least_squares


def refit(
    ds: Dataset, z: Sequence[int], rcond: float = SINGULAR_RCOND
) -> tuple[np.ndarray, float]:
    """
    Exact least-squares weights on the support of z, embedded in length d,
    and their residual sum of squares. The empty selection gives w = 0 and
    sse = Σ y_t².
    """
    if len(z) != ds.n_features:
        raise DimensionMismatchError("selection vector", ds.n_features, len(z))
    support = [i for i, bit in enumerate(z) if bit]
    w = np.zeros(ds.n_features)
    if support:
        w[support] = least_squares(ds.x[:, support], ds.y, rcond=rcond)
    residual = ds.y - ds.x @ w
    return w, float(residual @ residual)


def score(
    ds: Dataset,
    z: Sequence[int],
    lam: float,
    solver: SolverKind = SolverKind.EXHAUSTIVE,
    test: Dataset | None = None,
    rcond: float = SINGULAR_RCOND,
) -> FitReport:
    """
    Refits the selection and evaluates sse + λ‖z‖₀.

    :param test: Optional hold-out set for ``mse_test``.
    :raises DimensionMismatchError: If len(z) != d.
    """
    w, sse = refit(ds, z, rcond=rcond)
    selection = tuple(1 if bit else 0 for bit in z)
    cardinality = sum(selection)
    return FitReport(
        z=selection,
        w=tuple(float(v) for v in w),
        cardinality=cardinality,
        objective=sse + lam * cardinality,
        sse=sse,
        mse_train=sse / ds.n_samples,
        mse_test=mse(test, w) if test is not None else None,
        lam=lam,
        solver=solver,
        timings=Timings(),
    )


def mse(ds: Dataset, w: Sequence[float]) -> float:
    """(1/N)·Σ_t (y_t − wᵀx_t)²."""
    if len(w) != ds.n_features:
        raise DimensionMismatchError("weights", ds.n_features, len(w))
    residual = ds.y - ds.x @ np.asarray(w, dtype=np.float64)
    return float(residual @ residual) / ds.n_samples
