"""
Classical simulated annealing for QUBO models.

Each read starts from a uniform random assignment and performs
sequential-index single-flip Metropolis sweeps while the inverse
temperature grows geometrically, then descends greedily to a local
minimum. Reads are vectorized in fixed-size
batches using elementwise operations only, so read r produces the same
bits whatever batch, thread count or total read count it runs under.
"""

import logging
import math

import numpy as np
from joblib import Parallel, delayed

from src.core.domain import AnnealSchedule, QuboModel, Read, SampleSet
from src.core.exceptions import EmptyModelError
from src.core.kernels import coupling_matrix, qubo_value

from src.application.interfaces import ISampler

logger = logging.getLogger(__name__)

SA_BATCH_SIZE = 64
_MASK64 = (1 << 64) - 1
_MAX_DESCENT_PASSES = 100


def default_betas(q: QuboModel) -> tuple[float, float]:
    """
    Inverse-temperature range derived from the coefficients.

    The hottest sweep accepts the largest possible single-flip uphill move
    with probability 1/2, the coldest accepts the smallest one with
    probability 1/100:

        beta_initial = ln 2 / max_i (|a_i| + Σ_j |b_ij|)
        beta_final   = ln 100 / min nonzero |coefficient|

    :raises EmptyModelError: If every coefficient is zero.
    """
    linear = np.abs(np.asarray(q.linear, dtype=np.float64))
    couplings = np.abs(coupling_matrix(q))
    magnitudes = np.concatenate([linear, np.abs(list(q.quadratic.values()))])
    nonzero = magnitudes[magnitudes > 0.0]
    if nonzero.size == 0:
        raise EmptyModelError("The model has no nonzero coefficient to anneal.")

    delta_max = float((linear + couplings.sum(axis=1)).max())
    delta_min = float(nonzero.min())
    return math.log(2.0) / delta_max, math.log(100.0) / delta_min


def _read_rng(seed: int, read_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed & _MASK64, read_index)))


def _anneal_batch(
    linear: np.ndarray,
    couplings: np.ndarray,
    betas: np.ndarray,
    seed: int,
    read_indices: range,
) -> np.ndarray:
    n = linear.shape[0]
    sweeps = betas.shape[0]
    starts, draws = [], []
    for r in read_indices:
        rng = _read_rng(seed, r)
        starts.append(rng.integers(0, 2, size=n).astype(np.float64))
        draws.append(rng.random((sweeps, n)))
    x = np.stack(starts)
    u = np.stack(draws)

    # Local field: a_i + Σ_j b_ij x_j, maintained incrementally.
    field = np.repeat(linear[None, :], len(read_indices), axis=0)
    for i in range(n):
        field += x[:, i : i + 1] * couplings[i]

    for sweep, beta in enumerate(betas):
        for i in range(n):
            flip = 1.0 - 2.0 * x[:, i]
            delta = flip * field[:, i]
            accept = u[:, sweep, i] < np.exp(-beta * np.maximum(delta, 0.0))
            dx = np.where(accept, flip, 0.0)
            x[:, i] += dx
            field += dx[:, None] * couplings[i]

    # Zero-temperature descent: every read ends in a single-flip local minimum.
    for _ in range(_MAX_DESCENT_PASSES):
        changed = False
        for i in range(n):
            flip = 1.0 - 2.0 * x[:, i]
            dx = np.where(flip * field[:, i] < 0.0, flip, 0.0)
            if dx.any():
                changed = True
                x[:, i] += dx
                field += dx[:, None] * couplings[i]
        if not changed:
            break

    logger.debug(
        "Annealed reads %d..%d", read_indices.start, read_indices.stop - 1
    )
    return x.astype(np.int8)


def simulated_anneal(
    q: QuboModel,
    schedule: AnnealSchedule,
    threads: int = 1,
    batch_size: int = SA_BATCH_SIZE,
) -> SampleSet:
    """
    Runs ``schedule.num_reads`` independent annealing restarts.

    Read r draws its start state and acceptance thresholds from
    ``SeedSequence((seed, r))``; batches run on a joblib thread pool and
    are reassembled in read order.

    :param q: The model to minimize.
    :param schedule: Reads, sweeps, betas (derived when None) and seed.
    :param threads: Worker threads.
    :param batch_size: Reads per vectorized batch. Changing it does not change results.
    :return: One read per restart, energies re-evaluated with ``qubo_value``.
    """
    if schedule.beta_initial is None or schedule.beta_final is None:
        beta_initial, beta_final = default_betas(q)
    else:
        beta_initial, beta_final = schedule.beta_initial, schedule.beta_final
    betas = np.geomspace(beta_initial, beta_final, schedule.sweeps_per_read)

    linear = np.asarray(q.linear, dtype=np.float64)
    couplings = coupling_matrix(q)
    batches = [
        range(start, min(start + batch_size, schedule.num_reads))
        for start in range(0, schedule.num_reads, batch_size)
    ]
    logger.info(
        "Annealing %d variables: %d reads x %d sweeps, beta %.4g -> %.4g, seed=%d, threads=%d",
        q.num_vars,
        schedule.num_reads,
        schedule.sweeps_per_read,
        beta_initial,
        beta_final,
        schedule.seed,
        threads,
    )

    results = Parallel(n_jobs=threads, prefer="threads")(
        delayed(_anneal_batch)(linear, couplings, betas, schedule.seed, batch)
        for batch in batches
    )

    reads = []
    for batch, states in zip(batches, results):
        for r, state in zip(batch, states):
            assignment = tuple(int(bit) for bit in state)
            reads.append(
                Read(assignment=assignment, energy=qubo_value(q, assignment), read_index=r)
            )
    return SampleSet(reads=tuple(reads))


class SimulatedAnnealingSampler(ISampler):
    """
    `ISampler` adapter around :func:`simulated_anneal`.
    """

    def __init__(self, threads: int = 1, batch_size: int = SA_BATCH_SIZE):
        """
        :param threads: Worker threads used for read batches.
        :param batch_size: Reads per vectorized batch.
        """
        self._threads = threads
        self._batch_size = batch_size

    def sample(self, model: QuboModel, schedule: AnnealSchedule) -> SampleSet:
        return simulated_anneal(
            model, schedule, threads=self._threads, batch_size=self._batch_size
        )
