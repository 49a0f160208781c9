"""
Interface for the Dataset Repository.

This port defines the contract for reading regression tables into
`Dataset` models and writing synthetic instances back out.
"""

from abc import ABC, abstractmethod
from pathlib import Path

from src.core.domain import Dataset
from src.application.dto import SyntheticSidecarDTO


class IDatasetRepository(ABC):
    """
    Abstract base class for dataset persistence.
    """

    @abstractmethod
    def load(
        self,
        path: Path,
        target_column: str | int | None = None,
        center: bool = False,
    ) -> Dataset:
        """
        Reads a table and returns it with ℓ2-normalized feature columns.

        :param path: Location of the table.
        :param target_column: Header name or 0-based index of the target;
                              None selects the last column.
        :param center: Subtract column means before normalizing.
        :raises CsvParseError: If the file cannot be parsed.
        :raises MissingTargetColumnError: If the target column is absent.
        :raises NonNumericCellError: If a cell is empty or not a real.
        :raises ZeroColumnError: If a feature column is all zeros.
        :return: The `Dataset` domain model, rows in file order.
        """
        ...

    @abstractmethod
    def save(
        self,
        ds: Dataset,
        path: Path,
        sidecar: SyntheticSidecarDTO | None = None,
    ) -> None:
        """
        Writes a dataset in original units, target last, plus an optional
        JSON sidecar next to it (same stem, ``.json`` suffix).

        :param ds: The `Dataset` to write.
        :param path: Destination of the table.
        :param sidecar: Generation metadata of a synthetic dataset.
        """
        ...
