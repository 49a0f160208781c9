import logging
from time import perf_counter
from typing import Mapping

from src.core.domain import (
    AnnealSchedule,
    Dataset,
    FitReport,
    QuboModel,
    SampleSet,
    SolverKind,
    Timings,
)
from src.core.exceptions import SolverError
from src.core.kernels import (
    compile_objective,
    exhaustive_subset_search,
    gram_summary,
    project,
    quadratize,
    score,
)
from src.core.kernels.linalg import SINGULAR_RCOND
from src.core.kernels.pbf import COMPILE_CHUNK_SIZE
from src.core.kernels.subset_search import EXHAUSTIVE_MAX_FEATURES

from src.application.dto import CompiledQuboDTO
from src.application.interfaces import ISampler

logger = logging.getLogger(__name__)


class RegressionService:
    """
    Fits ℓ0-regularized regressions, either by exhaustive subset search
    or by compiling the objective to a QUBO and minimizing it with a
    sampler. Every selection is scored with an exact least-squares refit.
    """

    def __init__(
        self,
        samplers: Mapping[SolverKind, ISampler],
        exhaustive_max_features: int = EXHAUSTIVE_MAX_FEATURES,
        rcond: float = SINGULAR_RCOND,
        compile_chunk_size: int = COMPILE_CHUNK_SIZE,
    ):
        """
        Initializes the service with its sampler dependencies (Dependency Injection).

        :param samplers: QUBO minimizers keyed by the solver they implement
                         (``SolverKind.SA``, ``SolverKind.ENUMERATE``).
        :param exhaustive_max_features: Guard of the exhaustive search.
        :param rcond: Relative singular-value cutoff of refits.
        :param compile_chunk_size: Samples per accumulation block during compilation.
        """
        self._samplers = dict(samplers)
        self._exhaustive_max_features = exhaustive_max_features
        self._rcond = rcond
        self._compile_chunk_size = compile_chunk_size

    def compile(
        self,
        ds: Dataset,
        lam: float,
        alpha: float | None = None,
        penalty: float | None = None,
    ) -> CompiledQuboDTO:
        """
        Compiles the regression objective to a quartic polynomial and
        quadratizes it.

        :param ds: A normalized dataset.
        :param lam: Sparsity penalty λ ≥ 0.
        :param alpha: Neumann step size override (default 2/(d+1)).
        :param penalty: Quadratization gadget strength override.
        :return: The Gram summary, polynomial, QUBO and compile time.
        """
        started = perf_counter()
        gram = gram_summary(ds, alpha_override=alpha)
        poly = compile_objective(ds, gram, lam, chunk_size=self._compile_chunk_size)
        qubo = quadratize(poly, penalty=penalty)
        elapsed = perf_counter() - started
        logger.info(
            "Compiled d=%d, lambda=%g: %d terms, %d auxiliaries, M=%.6g",
            ds.n_features,
            lam,
            len(poly.terms),
            qubo.num_aux,
            qubo.penalty_m,
        )
        return CompiledQuboDTO(gram=gram, poly=poly, qubo=qubo, compile_seconds=elapsed)

    def fit(
        self,
        ds: Dataset,
        lam: float,
        solver: SolverKind,
        schedule: AnnealSchedule | None = None,
        alpha: float | None = None,
        penalty: float | None = None,
        test: Dataset | None = None,
    ) -> FitReport:
        """
        Selects features with the requested solver and refits them.

        Business Rules:
        1. ``exhaustive`` scores every subset on the true objective.
        2. ``sa`` / ``enumerate`` compile, quadratize, minimize, project
           every read to a selection, refit and keep the best (ties go to
           the lowest read index).

        :param ds: A normalized dataset.
        :param lam: Sparsity penalty λ ≥ 0.
        :param solver: Which solver to use.
        :param schedule: Annealing schedule (default `AnnealSchedule()`).
        :param alpha: Neumann step size override.
        :param penalty: Quadratization gadget strength override.
        :param test: Optional hold-out set for ``mse_test``.
        :raises SizeGuardError: If the instance is too large for the solver.
        :raises SolverError: If no sampler is registered for the solver.
        :return: The `FitReport` of the best selection.
        """
        if solver is SolverKind.EXHAUSTIVE:
            started = perf_counter()
            z, _, _ = exhaustive_subset_search(
                ds, lam, max_features=self._exhaustive_max_features, rcond=self._rcond
            )
            elapsed = perf_counter() - started
            report = score(ds, z, lam, solver=solver, test=test, rcond=self._rcond)
            report = report.model_copy(update={"timings": Timings(solve_seconds=elapsed)})
            logger.info(
                "Exhaustive fit: |z|=%d objective=%.10g", report.cardinality, report.objective
            )
            return report

        sampler = self._samplers.get(solver)
        if sampler is None:
            raise SolverError(f"No sampler is registered for solver {solver.value!r}.")

        compiled = self.compile(ds, lam, alpha=alpha, penalty=penalty)
        schedule = schedule or AnnealSchedule()
        started = perf_counter()
        sampleset = sampler.sample(compiled.qubo, schedule)
        elapsed = perf_counter() - started

        report = self.select_best(ds, lam, compiled.qubo, sampleset, solver, test=test)
        return report.model_copy(
            update={
                "timings": Timings(
                    compile_seconds=compiled.compile_seconds, solve_seconds=elapsed
                ),
                "alpha": compiled.gram.alpha,
            }
        )

    def select_best(
        self,
        ds: Dataset,
        lam: float,
        qubo: QuboModel,
        sampleset: SampleSet,
        solver: SolverKind,
        test: Dataset | None = None,
    ) -> FitReport:
        """
        Best-of-reads selection: projects every read to the original
        variables, refits it exactly and keeps the minimum objective
        (ties go to the lowest read index).

        :return: The `FitReport` of the winning read, carrying all read energies.
        """
        scored: dict[tuple[int, ...], FitReport] = {}
        best: tuple[float, int, FitReport] | None = None
        for read in sampleset.reads:
            z = project(qubo, read.assignment)
            if z not in scored:
                scored[z] = score(ds, z, lam, solver=solver, test=test, rcond=self._rcond)
            candidate = (scored[z].objective, read.read_index, scored[z])
            if best is None or candidate[:2] < best[:2]:
                best = candidate
        assert best is not None

        logger.info(
            "Best of %d reads (%d distinct selections): |z|=%d objective=%.10g",
            len(sampleset.reads),
            len(scored),
            best[2].cardinality,
            best[0],
        )
        return best[2].model_copy(
            update={
                "read_energies": sampleset.energies,
                "num_reads": len(sampleset.reads),
                "num_aux": qubo.num_aux,
                "penalty_m": qubo.penalty_m,
            }
        )
