"""
Interface for the Diabetes regression table.

The table is used by the real-data experiment when no CSV file is given.
"""

from abc import ABC, abstractmethod

from src.core.domain import Dataset


class IDiabetesSource(ABC):
    """
    Abstract base class for a provider of the 442×10 Diabetes table.
    """

    @abstractmethod
    def load(self, scaled: bool = True) -> Dataset:
        """
        Builds the column-normalized Diabetes dataset.

        :param scaled: Start from the standard pre-scaled (centered) features
                       instead of the raw measurements.
        :return: A `Dataset` with N=442, d=10 and raw targets.
        """
        ...
