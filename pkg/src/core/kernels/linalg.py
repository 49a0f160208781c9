"""
Dense linear algebra kernels.

Gram summaries, minimum-norm least squares, extremal eigenvalues and the
truncated Neumann series used to approximate (XᵀX)⁻¹ with step size
alpha ≤ 2/(d+1). All functions are pure.
"""

import numpy as np

from src.core.domain import Dataset, GramSummary
from src.core.exceptions import (
    DatasetNotNormalizedError,
    DimensionMismatchError,
    InvalidAlphaError,
    NonSymmetricMatrixError,
)

SINGULAR_RCOND = 1e-10
SYMMETRY_TOLERANCE = 1e-12


def default_alpha(d: int) -> float:
    """The largest step size for which the Neumann series converges: 2/(d+1)."""
    return 2.0 / (d + 1)


def gram_summary(ds: Dataset, alpha_override: float | None = None) -> GramSummary:
    """
    Computes p = XᵀX, q = Xᵀy and the Neumann step size.

    alpha is always derived from the full feature count d, even when the
    summary is later used for subsets.

    :raises DatasetNotNormalizedError: If the columns are not unit-norm.
    :raises InvalidAlphaError: If the override is outside (0, 2/(d+1)].
    """
    if not ds.is_normalized():
        raise DatasetNotNormalizedError("Gram summaries need unit-norm columns.")
    upper = default_alpha(ds.n_features)
    alpha = upper if alpha_override is None else float(alpha_override)
    if not (0.0 < alpha <= upper):
        raise InvalidAlphaError(alpha, upper)
    p = ds.x.T @ ds.x
    # Symmetrize away matmul rounding so the model invariant holds exactly.
    p = 0.5 * (p + p.T)
    return GramSummary(p=p, q=ds.x.T @ ds.y, alpha=alpha)


def least_squares(
    x_sub: np.ndarray, y: np.ndarray, rcond: float = SINGULAR_RCOND
) -> np.ndarray:
    """
    Minimum-norm minimizer of ‖y − X′w′‖₂.

    Singular values below ``rcond``·σ_max are treated as zero, so collinear
    or duplicated columns never make the solve fail.
    """
    x_sub = np.asarray(x_sub, dtype=np.float64)
    if x_sub.ndim != 2 or x_sub.shape[1] < 1:
        raise DimensionMismatchError("least-squares columns", 1, 0)
    if x_sub.shape[0] != len(y):
        raise DimensionMismatchError("least-squares targets", x_sub.shape[0], len(y))
    solution, *_ = np.linalg.lstsq(x_sub, y, rcond=rcond)
    return solution


def neumann_inverse_approx(p_sub: np.ndarray, alpha: float, order: int) -> np.ndarray:
    """
    Returns alpha·Σ_{i=0..order} (I − alpha·p_sub)^i.

    ``order=1`` gives the first-order form alpha(2I − alpha·p_sub) used to
    compile the regression objective.
    """
    if alpha <= 0:
        raise InvalidAlphaError(alpha, float("inf"))
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    p_sub = np.asarray(p_sub, dtype=np.float64)
    identity = np.eye(p_sub.shape[0])
    step = identity - alpha * p_sub
    term = identity
    total = identity.copy()
    for _ in range(order):
        term = term @ step
        total += term
    return alpha * total


def neumann_error_bound(p: np.ndarray, alpha: float, order: int) -> float:
    """‖p⁻¹‖₂ · ρ(I − alpha·p)^(order+1) for a full-rank symmetric p."""
    eigenvalues = np.linalg.eigvalsh(p)
    rho = float(np.max(np.abs(1.0 - alpha * eigenvalues)))
    return float(1.0 / np.min(eigenvalues)) * rho ** (order + 1)


def eigen_range_check(p: np.ndarray) -> tuple[float, float]:
    """
    Extremal eigenvalues of a symmetric matrix.

    For a Gram matrix of unit-norm columns both values lie in [0, d].

    :raises NonSymmetricMatrixError: If p is not symmetric to 1e-12.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise NonSymmetricMatrixError(f"Expected a square matrix, got shape {p.shape}.")
    if not np.allclose(p, p.T, rtol=0.0, atol=SYMMETRY_TOLERANCE):
        raise NonSymmetricMatrixError("Matrix is not symmetric.")
    eigenvalues = np.linalg.eigvalsh(p)
    return float(eigenvalues[0]), float(eigenvalues[-1])
