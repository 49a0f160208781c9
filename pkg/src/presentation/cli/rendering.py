"""
Output formatting for the command line.

Machine formats (JSON, CSV) print reals losslessly: JSON through Python's
shortest round-trip repr, CSV with 17 significant digits. Human tables
print 4 decimals. Wall-clock timings are left out unless requested, so
repeated runs print identical bytes.
"""

import io
import json
from typing import Any

import pandas as pd
from rich.table import Table

from src.core.domain import FitReport
from src.application.dto import TIMING_COLUMNS, ExperimentReportDTO
from src.infrastructure.persistence.files import FLOAT_FORMAT

_REPORT_HEADERS = {
    "n": "N",
    "d": "d",
    "lambda_times_d": "λ×d",
    "lam": "λ",
    "qubo_solver": "solver",
    "reads": "reads",
    "cardinality_classical": "‖w‖₀ classical",
    "cardinality_qubo": "‖w‖₀ QUBO",
    "objective_classical": "objective classical",
    "objective_qubo": "objective QUBO",
    "preprocessing_seconds": "preprocessing s",
    "processing_seconds": "processing s",
    "train_mse_gap": "train MSE gap",
    "test_mse_gap": "test MSE gap",
    "matched": "matched",
}


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if value != 0.0 and abs(value) < 1e-4:
            return f"{value:.2e}"
        return f"{value:.4f}"
    return str(value)


def _to_csv(rows: list[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    columns = list(rows[0].keys()) if rows else None
    pd.DataFrame(rows, columns=columns).to_csv(buffer, index=False, float_format=FLOAT_FORMAT)
    return buffer.getvalue()


# --- Single fits ---


def fit_document(report: FitReport, include_timings: bool = False) -> dict[str, Any]:
    exclude = None if include_timings else {"timings"}
    return report.model_dump(mode="json", by_alias=True, exclude=exclude)


def fit_json(report: FitReport, include_timings: bool = False) -> str:
    return json.dumps(fit_document(report, include_timings), indent=2)


def fit_csv(report: FitReport, include_timings: bool = False) -> str:
    row: dict[str, Any] = {
        "solver": report.solver.value,
        "lambda": report.lam,
        "cardinality": report.cardinality,
        "objective": report.objective,
        "sse": report.sse,
        "mse_train": report.mse_train,
        "mse_test": report.mse_test,
        "z": "".join(str(bit) for bit in report.z),
        "num_reads": report.num_reads,
        "alpha": report.alpha,
        "num_aux": report.num_aux,
        "penalty_m": report.penalty_m,
    }
    row.update({f"w{j}": value for j, value in enumerate(report.w)})
    if include_timings:
        row["compile_seconds"] = report.timings.compile_seconds
        row["solve_seconds"] = report.timings.solve_seconds
    return _to_csv([row])


def fit_table(
    report: FitReport,
    feature_names: list[str] | None = None,
    include_timings: bool = False,
) -> Table:
    table = Table(title=f"{report.solver.value} fit, λ = {_cell(report.lam)}")
    table.add_column("feature")
    table.add_column("selected", justify="center")
    table.add_column("w", justify="right")
    for j, (bit, weight) in enumerate(zip(report.z, report.w)):
        name = feature_names[j] if feature_names else f"x{j}"
        table.add_row(name, "x" if bit else "", _cell(weight))

    caption = [
        f"‖w‖₀ = {report.cardinality}",
        f"objective = {_cell(report.objective)}",
        f"MSE train = {_cell(report.mse_train)}",
    ]
    if report.mse_test is not None:
        caption.append(f"MSE test = {_cell(report.mse_test)}")
    if report.num_reads:
        caption.append(f"reads = {report.num_reads}")
    if include_timings:
        caption.append(
            f"compile {report.timings.compile_seconds:.4f}s, "
            f"solve {report.timings.solve_seconds:.4f}s"
        )
    table.caption = ", ".join(caption)
    return table


# --- Experiment reports ---


def report_rows(report: ExperimentReportDTO, include_timings: bool = False) -> list[dict]:
    exclude = None if include_timings else set(TIMING_COLUMNS)
    return [row.model_dump(mode="json", exclude=exclude) for row in report.rows]


def report_json(report: ExperimentReportDTO, include_timings: bool = False) -> str:
    document = {
        "name": report.name,
        "config": report.config,
        "rows": report_rows(report, include_timings),
    }
    return json.dumps(document, indent=2)


def report_csv(report: ExperimentReportDTO, include_timings: bool = False) -> str:
    return _to_csv(report_rows(report, include_timings))


def report_table(report: ExperimentReportDTO, include_timings: bool = False) -> Table:
    rows = report_rows(report, include_timings)
    columns = list(rows[0].keys()) if rows else list(_REPORT_HEADERS)
    table = Table(title=f"{report.name} experiment")
    for column in columns:
        table.add_column(_REPORT_HEADERS.get(column, column), justify="right")
    for row in rows:
        table.add_row(*(_cell(row[column]) for column in columns))
    return table
