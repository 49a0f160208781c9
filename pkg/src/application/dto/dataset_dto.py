"""
Data Transfer Objects for dataset ingestion and synthetic generation.
"""

from pathlib import Path

from pydantic import BaseModel

from src.core.domain import SyntheticSpec


class SyntheticSidecarDTO(BaseModel):
    """
    JSON sidecar written next to a synthetic CSV file.

    :param spec: The `SyntheticSpec` the data was generated from.
    :param true_w: Generating weights in normalized coordinates.
    :param column_norms: Norms the raw columns were divided by.
    """

    spec: SyntheticSpec
    true_w: list[float]
    column_norms: list[float]


class FileReferenceDTO(BaseModel):
    """
    Input DTO: a regression table on disk used as an experiment dataset.

    :param path: Location of the CSV file.
    :param target_column: Header name or 0-based index (None = last column).
    :param center: Center feature columns before normalizing.
    """

    path: Path
    target_column: str | int | None = None
    center: bool = False
