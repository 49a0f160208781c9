import json
import logging
from pathlib import Path

import pandas as pd

from src.application.dto import TIMING_COLUMNS, ExperimentReportDTO
from src.application.repositories import IReportRepository

from .csv_dataset_repository import FLOAT_FORMAT

logger = logging.getLogger(__name__)


class FileReportRepository(IReportRepository):
    """
    Writes experiment reports as a CSV table of rows plus a JSON document
    holding the rows and the configuration they were produced with.
    """

    def write(
        self,
        report: ExperimentReportDTO,
        directory: Path,
        stem: str,
        include_timings: bool = False,
    ) -> list[Path]:
        exclude = None if include_timings else set(TIMING_COLUMNS)
        rows = [row.model_dump(mode="json", exclude=exclude) for row in report.rows]
        directory.mkdir(parents=True, exist_ok=True)

        csv_path = directory / f"{stem}.csv"
        columns = list(rows[0].keys()) if rows else None
        pd.DataFrame(rows, columns=columns).to_csv(
            csv_path, index=False, float_format=FLOAT_FORMAT
        )

        json_path = directory / f"{stem}.json"
        document = {"name": report.name, "config": report.config, "rows": rows}
        json_path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
        return [csv_path, json_path]
