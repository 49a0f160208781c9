"""
Interface for QUBO samplers.

This port defines the contract the regression service uses to minimize
a compiled `QuboModel`, independent of how the minimization is done
(exact enumeration, simulated annealing, or an external annealer).
"""

from abc import ABC, abstractmethod

from src.core.domain import AnnealSchedule, QuboModel, SampleSet


class ISampler(ABC):
    """
    Abstract base class for QUBO minimizers.
    """

    @abstractmethod
    def sample(self, model: QuboModel, schedule: AnnealSchedule) -> SampleSet:
        """
        Minimizes a quadratic binary model.

        Samplers that do not anneal ignore the schedule.

        :param model: The `QuboModel` to minimize.
        :param schedule: Read count, sweeps, betas and seed.
        :raises SizeGuardError: If the model is too large for the sampler.
        :return: A `SampleSet` whose energies equal ``qubo_value`` of its assignments.
        """
        ...
