import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.core.domain import Dataset
from src.core.exceptions import (
    CsvParseError,
    MissingTargetColumnError,
    NonNumericCellError,
)

from src.application.dto import SyntheticSidecarDTO
from src.application.repositories import IDatasetRepository

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def sidecar_path(path: Path) -> Path:
    return path.with_suffix(".json")


class CsvDatasetRepository(IDatasetRepository):
    """
    pandas implementation of the IDatasetRepository.

    Tables are comma-separated UTF-8 files with a mandatory header row.
    """

    def load(
        self,
        path: Path,
        target_column: str | int | None = None,
        center: bool = False,
    ) -> Dataset:
        try:
            frame = pd.read_csv(
                path, dtype=str, keep_default_na=False, skipinitialspace=True
            )
        except FileNotFoundError:
            raise CsvParseError(str(path), "file not found")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise CsvParseError(str(path), str(e))

        columns = [str(c) for c in frame.columns]
        target = self._resolve_target(columns, target_column)
        features = [c for c in columns if c != target]
        if not features:
            raise CsvParseError(str(path), "no feature column besides the target")

        values = self._to_float(frame, columns)
        position = {c: k for k, c in enumerate(columns)}
        x_raw = values[:, [position[c] for c in features]]
        y = values[:, position[target]]
        if x_raw.shape[0] < 1:
            raise CsvParseError(str(path), "the table has no data rows")

        return Dataset.from_raw(x_raw, y, features, center=center)

    def save(
        self,
        ds: Dataset,
        path: Path,
        sidecar: SyntheticSidecarDTO | None = None,
    ) -> None:
        names = [ds.feature_name(j) for j in range(ds.n_features)]
        frame = pd.DataFrame(ds.raw_x(), columns=names)
        frame["y"] = ds.y
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
        if sidecar is not None:
            sidecar_path(path).write_text(
                json.dumps(sidecar.model_dump(mode="json"), indent=2) + "\n",
                encoding="utf-8",
            )

    @staticmethod
    def _resolve_target(columns: list[str], target_column: str | int | None) -> str:
        if target_column is None:
            return columns[-1]
        # Header names win over indices given as text.
        if isinstance(target_column, str) and target_column not in columns:
            if target_column.isdigit():
                target_column = int(target_column)
        if isinstance(target_column, int):
            if not 0 <= target_column < len(columns):
                raise MissingTargetColumnError(str(target_column))
            return columns[target_column]
        if target_column not in columns:
            raise MissingTargetColumnError(target_column)
        return target_column

    @staticmethod
    def _to_float(frame: pd.DataFrame, columns: list[str]) -> np.ndarray:
        values = np.empty(frame.shape, dtype=np.float64)
        for k, column in enumerate(columns):
            converted = pd.to_numeric(frame.iloc[:, k].str.strip(), errors="coerce")
            bad = converted.isna().to_numpy()
            if bad.any():
                row = int(np.flatnonzero(bad)[0])
                raise NonNumericCellError(row + 1, column, str(frame.iloc[row, k]))
            values[:, k] = converted.to_numpy(dtype=np.float64)
        return values
