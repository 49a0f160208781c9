"""
Degree reduction of pseudo-Boolean polynomials to QUBO form, and the
QUBO ↔ Ising change of variables.

The reduction substitutes an auxiliary variable u for a product z_i z_j
and adds the consistency gadget

    M·(z_i z_j − 2 z_i u − 2 z_j u + 3u),

which is 0 when u = z_i z_j and at least M otherwise.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Sequence

import numpy as np

from src.core.domain import (
    MAX_POLY_DEGREE,
    AuxDefinition,
    IsingModel,
    MultilinearPoly,
    QuboModel,
)
from src.core.exceptions import DegreeTooHighError, DimensionMismatchError, InvalidPenaltyError

logger = logging.getLogger(__name__)

Term = tuple[int, ...]


def default_penalty(poly: MultilinearPoly) -> float:
    """1 + 2·Σ|c| over the non-constant coefficients."""
    return 1.0 + 2.0 * sum(abs(c) for c in poly.terms.values())


def _most_shared_pair(terms: dict[Term, float]) -> tuple[int, int] | None:
    counts: Counter[tuple[int, int]] = Counter()
    for key in terms:
        if len(key) >= 3:
            counts.update(combinations(key, 2))
    if not counts:
        return None
    # Highest coverage first, then the lexicographically smallest pair.
    return min(counts, key=lambda pair: (-counts[pair], pair))


def quadratize(poly: MultilinearPoly, penalty: float | None = None) -> QuboModel:
    """
    Reduces a polynomial of degree ≤ 4 to a quadratic binary model.

    Repeatedly substitutes the pair occurring in the most terms of degree
    ≥ 3 (ties broken lexicographically) until no such term is left.
    Quadratic and linear terms are never rewritten. For every original
    assignment, the minimum over auxiliary completions equals the
    polynomial value, and it is attained exactly at the consistent
    completion.

    :param penalty: Gadget strength M; defaults to :func:`default_penalty`.
    :raises DegreeTooHighError: If a term has degree > 4.
    :raises InvalidPenaltyError: If ``penalty`` is not strictly positive.
    """
    if poly.degree > MAX_POLY_DEGREE:
        raise DegreeTooHighError(poly.degree, MAX_POLY_DEGREE)
    if penalty is not None and not penalty > 0:
        raise InvalidPenaltyError(f"Penalty must be positive, got {penalty!r}.")
    m = default_penalty(poly) if penalty is None else float(penalty)

    terms: dict[Term, float] = dict(poly.terms)
    gadgets: dict[Term, float] = {}
    aux_defs: list[AuxDefinition] = []
    num_vars = poly.num_vars

    while (pair := _most_shared_pair(terms)) is not None:
        i, j = pair
        u = num_vars
        num_vars += 1
        aux_defs.append(AuxDefinition(aux_index=u, parent_i=i, parent_j=j))

        rewritten: dict[Term, float] = {}
        for key, coeff in terms.items():
            if len(key) >= 3 and i in key and j in key:
                # u is the largest index so far, the tuple stays sorted.
                key = tuple(v for v in key if v != i and v != j) + (u,)
            rewritten[key] = rewritten.get(key, 0.0) + coeff
        terms = rewritten

        for key, coeff in (((i, j), m), ((i, u), -2.0 * m), ((j, u), -2.0 * m), ((u,), 3.0 * m)):
            gadgets[key] = gadgets.get(key, 0.0) + coeff

    linear = [0.0] * num_vars
    quadratic: dict[tuple[int, int], float] = {}
    for source in (terms, gadgets):
        for key, coeff in source.items():
            if len(key) == 1:
                linear[key[0]] += coeff
            else:
                a, b = key
                quadratic[(a, b)] = quadratic.get((a, b), 0.0) + coeff

    logger.debug(
        "Quadratized %d variables with %d auxiliaries (M=%.6g)",
        poly.num_vars,
        len(aux_defs),
        m,
    )
    return QuboModel(
        num_vars=num_vars,
        num_original=poly.num_vars,
        offset=poly.constant,
        linear=tuple(linear),
        quadratic=quadratic,
        aux_defs=tuple(aux_defs),
        penalty_m=m,
    )


def qubo_value(q: QuboModel, x: Sequence[int]) -> float:
    """offset + Σ linear_i x_i + Σ quadratic_ij x_i x_j."""
    if len(x) != q.num_vars:
        raise DimensionMismatchError("assignment", q.num_vars, len(x))
    total = q.offset
    for i, coeff in enumerate(q.linear):
        if x[i]:
            total += coeff
    for (i, j), coeff in q.quadratic.items():
        if x[i] and x[j]:
            total += coeff
    return float(total)


def qubo_energies(q: QuboModel, states: np.ndarray) -> np.ndarray:
    """Vectorized :func:`qubo_value` over the rows of a 0/1 matrix."""
    states = np.asarray(states, dtype=np.float64)
    if states.ndim != 2 or states.shape[1] != q.num_vars:
        raise DimensionMismatchError("assignment", q.num_vars, states.shape[-1])
    energies = q.offset + states @ np.asarray(q.linear)
    if q.quadratic:
        pairs = np.array(list(q.quadratic.keys()), dtype=np.intp)
        coeffs = np.array(list(q.quadratic.values()))
        energies += (states[:, pairs[:, 0]] * states[:, pairs[:, 1]]) @ coeffs
    return energies


def coupling_matrix(q: QuboModel) -> np.ndarray:
    """Symmetric pair-coefficient matrix with a zero diagonal."""
    matrix = np.zeros((q.num_vars, q.num_vars))
    for (i, j), coeff in q.quadratic.items():
        matrix[i, j] = coeff
        matrix[j, i] = coeff
    return matrix


def to_ising(q: QuboModel) -> IsingModel:
    """
    Substitutes x = (1 + s)/2.

    ising_value(s) equals qubo_value(x) for every binary x and its spin image.
    """
    h = [coeff / 2.0 for coeff in q.linear]
    offset = q.offset + sum(q.linear) / 2.0
    j: dict[tuple[int, int], float] = {}
    for (a, b), coeff in q.quadratic.items():
        quarter = coeff / 4.0
        h[a] += quarter
        h[b] += quarter
        j[(a, b)] = quarter
        offset += quarter
    return IsingModel(num_spins=q.num_vars, offset=offset, h=tuple(h), j=j)


def ising_value(model: IsingModel, s: Sequence[int]) -> float:
    """offset + Σ h_i s_i + Σ J_uv s_u s_v for spins in {−1, +1}."""
    if len(s) != model.num_spins:
        raise DimensionMismatchError("spins", model.num_spins, len(s))
    total = model.offset + sum(h * spin for h, spin in zip(model.h, s))
    for (u, v), coeff in model.j.items():
        total += coeff * s[u] * s[v]
    return float(total)


def project(q: QuboModel, x: Sequence[int]) -> tuple[int, ...]:
    """Drops the auxiliary variables of an assignment."""
    return tuple(int(bit) for bit in x[: q.num_original])
