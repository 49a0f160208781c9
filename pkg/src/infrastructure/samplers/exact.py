"""
Exact QUBO minimization by full enumeration.

Serves as the ground-truth oracle for the annealer on small models.
"""

import logging

import numpy as np

from src.core.domain import AnnealSchedule, EnergySummary, QuboModel, Read, SampleSet
from src.core.exceptions import SizeGuardError
from src.core.kernels import qubo_energies, qubo_value

from src.application.interfaces import ISampler

logger = logging.getLogger(__name__)

ENUMERATE_MAX_VARS = 22
GROUND_TOLERANCE = 1e-9
_CHUNK_BITS = 16


def _states(codes: np.ndarray, n: int) -> np.ndarray:
    # Variable 0 is the most significant bit, so code order is lexicographic.
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts) & 1).astype(np.int8)


def enumerate_qubo(q: QuboModel, max_vars: int = ENUMERATE_MAX_VARS) -> SampleSet:
    """
    Evaluates all 2^n assignments and returns every ground state.

    Ground states are the assignments within 1e-9·max(1, |E_min|) of the
    minimum, in lexicographic order; ``read_index`` numbers them. The
    energies of all states are condensed into the summary.

    :raises SizeGuardError: If num_vars exceeds ``max_vars``.
    """
    n = q.num_vars
    if n > max_vars:
        raise SizeGuardError("QUBO enumeration", n, max_vars)

    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    minimum, maximum, energy_sum = np.inf, -np.inf, 0.0
    candidates: list[tuple[int, float]] = []

    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        energies = qubo_energies(q, _states(codes, n))
        maximum = max(maximum, float(energies.max()))
        energy_sum += float(energies.sum())
        minimum = min(minimum, float(energies.min()))

        cutoff = minimum + GROUND_TOLERANCE * max(1.0, abs(minimum))
        candidates = [(code, e) for code, e in candidates if e <= cutoff]
        hits = np.flatnonzero(energies <= cutoff)
        candidates.extend((int(codes[k]), float(energies[k])) for k in hits)

    reads = []
    for index, (code, _) in enumerate(candidates):
        assignment = tuple(int(bit) for bit in _states(np.array([code]), n)[0])
        reads.append(
            Read(assignment=assignment, energy=qubo_value(q, assignment), read_index=index)
        )
    summary = EnergySummary(
        num_states=total, minimum=minimum, maximum=maximum, mean=energy_sum / total
    )
    logger.debug(
        "Enumerated %d states: %d ground states at %.10g", total, len(reads), minimum
    )
    return SampleSet(reads=tuple(reads), summary=summary)


class ExactSampler(ISampler):
    """
    `ISampler` adapter around :func:`enumerate_qubo`. The schedule is ignored.
    """

    def __init__(self, max_vars: int = ENUMERATE_MAX_VARS):
        self._max_vars = max_vars

    def sample(self, model: QuboModel, schedule: AnnealSchedule) -> SampleSet:
        return enumerate_qubo(model, max_vars=self._max_vars)
