"""
Exhaustive best-subset search on the true ℓ0-regularized objective.

This is the classical oracle the QUBO pipeline is compared against.
"""

import logging
from itertools import product

import numpy as np

from src.core.domain import Dataset
from src.core.exceptions import SizeGuardError
from src.core.kernels.linalg import SINGULAR_RCOND
from src.core.kernels.regress import refit

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_FEATURES = 25
TIE_TOLERANCE = 1e-12


def exhaustive_subset_search(
    ds: Dataset,
    lam: float,
    max_features: int = EXHAUSTIVE_MAX_FEATURES,
    rcond: float = SINGULAR_RCOND,
) -> tuple[tuple[int, ...], np.ndarray, float]:
    """
    Refits and scores all 2^d selections and returns the minimizer.

    Objectives within 1e-12·max(1, Σy²) of the minimum are ties; ties
    resolve to the smaller cardinality, then the lexicographically
    smallest z.

    :raises SizeGuardError: If d exceeds ``max_features``.
    :return: (z, w, objective)
    """
    d = ds.n_features
    if d > max_features:
        raise SizeGuardError("exhaustive subset search", d, max_features)

    tolerance = TIE_TOLERANCE * max(1.0, float(ds.y @ ds.y))
    best = np.inf
    # every selection seen so far whose objective is within tolerance of best
    window: list[tuple[float, tuple[int, ...]]] = []
    for z in product((0, 1), repeat=d):
        _, sse = refit(ds, z, rcond=rcond)
        objective = sse + lam * sum(z)
        if objective > best + tolerance:
            continue
        if objective < best:
            best = objective
            window = [entry for entry in window if entry[0] <= best + tolerance]
        window.append((objective, z))

    winner_objective, z = min(window, key=lambda entry: (sum(entry[1]), entry[1]))
    w, _ = refit(ds, z, rcond=rcond)
    logger.debug(
        "Exhaustive search over %d subsets: |z|=%d objective=%.10g",
        2**d,
        sum(z),
        winner_objective,
    )
    return z, w, float(winner_objective)
