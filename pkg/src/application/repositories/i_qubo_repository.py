"""
Interface for the QUBO Repository.

This port defines the contract for exporting and importing compiled
`QuboModel` instances so they can be solved out of process.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from src.core.domain import QuboModel


class IQuboRepository(ABC):
    """
    Abstract base class for QUBO model persistence.
    """

    @abstractmethod
    def load(self, path: Path) -> QuboModel:
        """
        Reads a model written by :meth:`save`.

        :param path: Location of the model file.
        :raises QuboFormatError: If a line does not follow the format.
        :return: A `QuboModel` bit-identical to the one saved.
        """
        ...

    @abstractmethod
    def save(self, model: QuboModel, path: Path) -> None:
        """
        Writes a model so that :meth:`load` reproduces it exactly.

        :param model: The `QuboModel` to write.
        :param path: Destination file.
        """
        ...
