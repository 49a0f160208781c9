"""
Compilation of the ℓ0-regularized least-squares objective into a quartic
pseudo-Boolean polynomial.

With the first-order inverse approximation (X′ᵀX′)⁻¹ ≈ α(2I − αX′ᵀX′),
the refit weights of a selection z are the multilinear functions

    w_i = z_i (q′_i − α² Σ_{j≠i} z_j p_ij q_j),   q′_i = α(2−α) q_i,

so every residual is quadratic in z and the objective

    Σ_t (y_t − Σ_i q′_i x_ti z_i + Σ_{i<j} b(t)_ij z_i z_j)² + λ Σ_r z_r

expands into a constant, linear (e_i + λ), pair (f_ij), triple (g_ijk)
and quadruple (h_ijkl) coefficients.
"""

import logging
from itertools import combinations
from typing import Sequence

import numpy as np

from src.core.domain import CompileIntermediates, Dataset, GramSummary, MultilinearPoly
from src.core.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)

COMPILE_CHUNK_SIZE = 256


def compile_intermediates(gs: GramSummary) -> CompileIntermediates:
    alpha = gs.alpha
    # Uses the symmetric form: p_ji = p_ij for a Gram matrix.
    return CompileIntermediates(
        q_prime=alpha * (2.0 - alpha) * gs.q,
        pq=alpha**2 * gs.p * gs.q[None, :],
    )


def _check_selection(z: Sequence[int], d: int) -> np.ndarray:
    if len(z) != d:
        raise DimensionMismatchError("selection vector", d, len(z))
    return np.asarray(z, dtype=np.float64)


def compile_objective(
    ds: Dataset,
    gs: GramSummary,
    lam: float,
    chunk_size: int = COMPILE_CHUNK_SIZE,
) -> MultilinearPoly:
    """
    Builds the quartic polynomial whose value at z is the objective with
    first-order Neumann weights.

    Samples are accumulated in fixed-size blocks in row order, so the
    result is bit-identical for a given chunk size and memory stays
    O(chunk_size·d² + d⁴).

    :raises DimensionMismatchError: If the summary was built for another d.
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    d = ds.n_features
    if gs.n_features != d:
        raise DimensionMismatchError("Gram summary", d, gs.n_features)

    inter = compile_intermediates(gs)
    e = np.zeros(d)
    f = np.zeros((d, d))
    s3 = np.zeros((d, d, d))
    u3 = np.zeros((d, d, d))
    w4 = np.zeros((d, d, d, d))

    for start in range(0, ds.n_samples, chunk_size):
        x_rows = ds.x[start : start + chunk_size]
        y_rows = ds.y[start : start + chunk_size]
        a = x_rows * inter.q_prime[None, :]
        b = inter.b_tables(x_rows)

        e += np.einsum("ti,ti->i", a, a) - 2.0 * (a.T @ y_rows)
        f += (
            np.einsum("tij,tij->ij", b, b)
            + 2.0 * np.einsum("ti,tj->ij", a, a)
            - 2.0 * np.einsum("ti,tij->ij", a, b)
            - 2.0 * np.einsum("tj,tij->ij", a, b)
            + 2.0 * np.einsum("t,tij->ij", y_rows, b)
        )
        s3 += np.einsum("tij,tik->ijk", b, b)
        u3 += np.einsum("tk,tij->ijk", a, b)
        w4 += np.einsum("tij,tkl->ijkl", b, b)

    terms: dict[tuple[int, ...], float] = {}
    for i in range(d):
        terms[(i,)] = e[i] + lam
    for i, j in combinations(range(d), 2):
        terms[(i, j)] = f[i, j]
    for i, j, k in combinations(range(d), 3):
        terms[(i, j, k)] = 2.0 * (
            s3[i, j, k]
            + s3[j, i, k]
            + s3[k, i, j]
            - u3[i, j, k]
            - u3[j, k, i]
            - u3[i, k, j]
        )
    for i, j, k, m in combinations(range(d), 4):
        terms[(i, j, k, m)] = 2.0 * (w4[i, j, k, m] + w4[i, k, j, m] + w4[i, m, j, k])

    poly = MultilinearPoly(num_vars=d, constant=float(ds.y @ ds.y), terms=terms)
    logger.debug("Compiled %d-variable polynomial with %d terms", d, len(poly.terms))
    return poly


def evaluate(poly: MultilinearPoly, z: Sequence[int]) -> float:
    """constant + Σ_terms c_I · Π_{j∈I} z_j."""
    if len(z) != poly.num_vars:
        raise DimensionMismatchError("assignment", poly.num_vars, len(z))
    total = poly.constant
    for key, coeff in poly.terms.items():
        if all(z[j] for j in key):
            total += coeff
    return float(total)


def approx_weights(ds: Dataset, gs: GramSummary, z: Sequence[int]) -> np.ndarray:
    """
    First-order Neumann weights of selection z, embedded in length d
    (zeros where z_i = 0).
    """
    d = ds.n_features
    zf = _check_selection(z, d)
    alpha = gs.alpha
    off_diagonal = gs.p - np.diag(np.diag(gs.p))
    correction = off_diagonal @ (zf * gs.q)
    return zf * (alpha * (2.0 - alpha) * gs.q - alpha**2 * correction)


def neumann_objective(
    ds: Dataset, gs: GramSummary, z: Sequence[int], lam: float
) -> float:
    """Σ_t (y_t − w(z)ᵀx_t)² + λ‖z‖₀ with first-order Neumann weights."""
    w = approx_weights(ds, gs, z)
    residual = ds.y - ds.x @ w
    return float(residual @ residual + lam * sum(int(bit) for bit in z))
