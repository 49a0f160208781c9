"""
Command-line interface and composition root.

Every command builds its services from `Settings`, runs one use case and
prints the outcome on standard output; logs go to standard error.
Domain errors map to exit codes: 2 usage, 3 dataset or file format,
4 solver size guard, 1 anything else.
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from time import perf_counter
from typing import Annotated, Iterator, Optional

import typer
from pydantic import ValidationError
from rich.console import Console

from src.core.domain import (
    AnnealSchedule,
    FitReport,
    OutputFormat,
    SolverKind,
    SyntheticSpec,
    Timings,
    XDistribution,
)
from src.core.exceptions import (
    DatasetError,
    DimensionMismatchError,
    DomainError,
    InvalidAlphaError,
    InvalidExperimentSpecError,
    InvalidPenaltyError,
    InvalidScheduleError,
    InvalidSyntheticSpecError,
    QuboFormatError,
    SizeGuardError,
)
from src.core.kernels import project

from src.application.dto import (
    DEFAULT_LAMBDA_TIMES_D,
    ExperimentReportDTO,
    ExperimentSpecDTO,
    FileReferenceDTO,
)
from src.application.services.dataset_service import DatasetService
from src.application.services.experiment_service import DIABETES_LAMBDAS, ExperimentService
from src.application.services.regression_service import RegressionService

from src.infrastructure.config import Settings, get_settings
from src.infrastructure.datasets import SklearnDiabetesSource
from src.infrastructure.log_config import configure_logging
from src.infrastructure.persistence.files import (
    CsvDatasetRepository,
    FileReportRepository,
    QuboTextRepository,
)
from src.infrastructure.samplers import ExactSampler, SimulatedAnnealingSampler

from . import rendering

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="subset-qubo",
    help="Best-subset linear regression through QUBO compilation and annealing.",
    no_args_is_help=True,
    add_completion=False,
)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DATASET = 3
EXIT_SIZE_GUARD = 4

DEFAULT_SWEEP_FEATURES = [5, 6, 7, 8, 9, 10]

# --- Shared options ---

LambdaOption = Annotated[
    Optional[float], typer.Option("--lambda", min=0.0, help="Sparsity penalty λ.")
]
LambdaTimesDOption = Annotated[
    Optional[float],
    typer.Option("--lambda-times-d", min=0.0, help="λ·d; λ is this value divided by d."),
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Random seed (default from settings).")
]
ReadsOption = Annotated[
    Optional[int], typer.Option("--reads", min=1, help="Annealing reads.")
]
SweepsOption = Annotated[
    Optional[int], typer.Option("--sweeps", min=1, help="Metropolis sweeps per read.")
]
BetaInitialOption = Annotated[
    Optional[float], typer.Option("--beta-initial", help="First inverse temperature.")
]
BetaFinalOption = Annotated[
    Optional[float], typer.Option("--beta-final", help="Last inverse temperature.")
]
AlphaOption = Annotated[
    Optional[float], typer.Option("--alpha", help="Neumann step size (default 2/(d+1)).")
]
PenaltyOption = Annotated[
    Optional[float], typer.Option("--penalty", help="Quadratization penalty M.")
]
TargetOption = Annotated[
    Optional[str],
    typer.Option("--target", help="Target column name or 0-based index (default last)."),
]
CenterOption = Annotated[
    bool, typer.Option("--center", help="Center feature columns before normalizing.")
]
ThreadsOption = Annotated[
    Optional[int], typer.Option("--threads", min=1, help="Sampler worker threads.")
]
FormatOption = Annotated[
    OutputFormat, typer.Option("--format", help="Output format.")
]
TimingsOption = Annotated[
    bool, typer.Option("--timings", help="Include wall-clock timings in the output.")
]


@app.callback()
def main(
    log_level: Annotated[
        Optional[str], typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR.")
    ] = None,
) -> None:
    configure_logging(log_level or get_settings().log_level)


# --- Composition ---


def _regression_service(settings: Settings, threads: int | None) -> RegressionService:
    samplers = {
        SolverKind.SA: SimulatedAnnealingSampler(
            threads=threads or settings.threads, batch_size=settings.sa_batch_size
        ),
        SolverKind.ENUMERATE: ExactSampler(max_vars=settings.enumerate_max_vars),
    }
    return RegressionService(
        samplers,
        exhaustive_max_features=settings.exhaustive_max_features,
        rcond=settings.singular_rcond,
        compile_chunk_size=settings.compile_chunk_size,
    )


def _experiment_service(settings: Settings, threads: int | None) -> ExperimentService:
    return ExperimentService(
        DatasetService(CsvDatasetRepository()),
        _regression_service(settings, threads),
        diabetes_source=SklearnDiabetesSource(),
        report_repo=FileReportRepository(),
    )


def _seed(settings: Settings, seed: int | None) -> int:
    resolved = settings.seed if seed is None else seed
    logger.info("Using seed %d", resolved)
    return resolved


def _schedule(
    settings: Settings,
    seed: int,
    reads: int | None,
    sweeps: int | None,
    beta_initial: float | None,
    beta_final: float | None,
) -> AnnealSchedule:
    return AnnealSchedule(
        num_reads=reads or settings.num_reads,
        sweeps_per_read=sweeps or settings.sweeps_per_read,
        beta_initial=beta_initial,
        beta_final=beta_final,
        seed=seed,
    )


def _check_lambda_flags(lam: object, lam_times_d: object, required: bool = True) -> None:
    if lam is not None and lam_times_d is not None:
        raise typer.BadParameter(
            "--lambda and --lambda-times-d are mutually exclusive.", param_hint="--lambda"
        )
    if required and lam is None and lam_times_d is None:
        raise typer.BadParameter(
            "give one of --lambda and --lambda-times-d.", param_hint="--lambda"
        )


def _resolve_lambda(lam: float | None, lam_times_d: float | None, d: int) -> float:
    if lam is not None:
        return lam
    assert lam_times_d is not None
    return lam_times_d / d


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except (
        InvalidSyntheticSpecError,
        InvalidScheduleError,
        InvalidExperimentSpecError,
        InvalidAlphaError,
        InvalidPenaltyError,
        ValidationError,
    ) as e:
        _fail(e, EXIT_USAGE)
    except (DatasetError, QuboFormatError) as e:
        _fail(e, EXIT_DATASET)
    except SizeGuardError as e:
        _fail(e, EXIT_SIZE_GUARD)
    except DomainError as e:
        _fail(e, EXIT_FAILURE)


def _fail(error: Exception, code: int) -> None:
    Console(stderr=True).print(f"Error: {error}", markup=False, highlight=False)
    raise typer.Exit(code)


def _emit(text: str, output: Path | None = None) -> None:
    text = text.rstrip("\n") + "\n"
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", output)


def _emit_fit(
    report: FitReport,
    fmt: OutputFormat,
    output: Path | None,
    include_timings: bool,
    feature_names: list[str] | None = None,
) -> None:
    if fmt is OutputFormat.JSON:
        _emit(rendering.fit_json(report, include_timings), output)
    elif fmt is OutputFormat.CSV:
        _emit(rendering.fit_csv(report, include_timings), output)
    else:
        Console().print(rendering.fit_table(report, feature_names, include_timings))


def _emit_report(
    report: ExperimentReportDTO, fmt: OutputFormat, include_timings: bool
) -> None:
    if fmt is OutputFormat.JSON:
        _emit(rendering.report_json(report, include_timings))
    elif fmt is OutputFormat.CSV:
        _emit(rendering.report_csv(report, include_timings))
    else:
        Console().print(rendering.report_table(report, include_timings))


# --- Commands ---


@app.command()
def gen(
    d: Annotated[int, typer.Option("--d", min=1, help="Feature count.")],
    output: Annotated[Path, typer.Option("--output", "-o", help="CSV file to write.")],
    n: Annotated[
        Optional[int], typer.Option("--n", min=1, help="Sample count (default desk scale).")
    ] = None,
    k: Annotated[
        Optional[int], typer.Option("--k", min=1, help="True support size (default d // 2).")
    ] = None,
    seed: SeedOption = None,
    distribution: Annotated[
        XDistribution, typer.Option("--distribution", help="Distribution of X entries.")
    ] = XDistribution.UNIFORM,
    w_low: Annotated[float, typer.Option("--w-low", help="Smallest true |w|.")] = 0.5,
    w_high: Annotated[float, typer.Option("--w-high", help="Largest true |w|.")] = 2.0,
) -> None:
    """Generate a noise-free synthetic dataset plus its JSON sidecar."""
    settings = get_settings()
    with _exit_codes():
        spec = SyntheticSpec(
            n=n or settings.desk_samples,
            d=d,
            k_true=k or max(1, d // 2),
            seed=_seed(settings, seed),
            x_distribution=distribution,
            w_range=(w_low, w_high),
        )
        service = DatasetService(CsvDatasetRepository())
        ds, true_w = service.generate_synthetic(spec)
        service.save_synthetic(ds, true_w, spec, output)


@app.command()
def fit(
    data: Annotated[Path, typer.Argument(help="CSV table with a header row.")],
    lam: LambdaOption = None,
    lam_times_d: LambdaTimesDOption = None,
    solver: Annotated[
        SolverKind, typer.Option("--solver", help="How features are selected.")
    ] = SolverKind.EXHAUSTIVE,
    reads: ReadsOption = None,
    sweeps: SweepsOption = None,
    seed: SeedOption = None,
    beta_initial: BetaInitialOption = None,
    beta_final: BetaFinalOption = None,
    alpha: AlphaOption = None,
    penalty: PenaltyOption = None,
    target: TargetOption = None,
    center: CenterOption = False,
    test_fraction: Annotated[
        Optional[float],
        typer.Option("--test-fraction", help="Hold out this share of rows for a test MSE."),
    ] = None,
    threads: ThreadsOption = None,
    fmt: FormatOption = OutputFormat.TABLE,
    output: Annotated[
        Optional[Path], typer.Option("--output", "-o", help="Write to a file instead.")
    ] = None,
    timings: TimingsOption = False,
) -> None:
    """Fit an ℓ0-regularized regression on a CSV table."""
    _check_lambda_flags(lam, lam_times_d)
    settings = get_settings()
    with _exit_codes():
        resolved_seed = _seed(settings, seed)
        schedule = _schedule(settings, resolved_seed, reads, sweeps, beta_initial, beta_final)
        datasets = DatasetService(CsvDatasetRepository())
        ds = datasets.load_csv(data, target_column=target, center=center)
        test = None
        if test_fraction is not None:
            ds, test = datasets.split(ds, test_fraction, resolved_seed)

        report = _regression_service(settings, threads).fit(
            ds,
            _resolve_lambda(lam, lam_times_d, ds.n_features),
            solver,
            schedule=schedule,
            alpha=alpha,
            penalty=penalty,
            test=test,
        )
        names = [ds.feature_name(j) for j in range(ds.n_features)]
        _emit_fit(report, fmt, output, timings, names)


@app.command()
def sweep(
    d: Annotated[
        Optional[list[int]], typer.Option("--d", min=1, help="Feature counts (repeatable).")
    ] = None,
    n: Annotated[Optional[int], typer.Option("--n", min=1, help="Sample count.")] = None,
    full_scale: Annotated[
        bool, typer.Option("--full-scale", help="Use the full-scale sample count.")
    ] = False,
    lam: Annotated[
        Optional[list[float]], typer.Option("--lambda", min=0.0, help="λ values (repeatable).")
    ] = None,
    lam_times_d: Annotated[
        Optional[list[float]],
        typer.Option("--lambda-times-d", min=0.0, help="λ·d values (repeatable)."),
    ] = None,
    reads: Annotated[
        Optional[list[int]], typer.Option("--reads", min=1, help="Read counts (repeatable).")
    ] = None,
    solvers: Annotated[
        Optional[list[SolverKind]], typer.Option("--solver", help="Solvers (repeatable).")
    ] = None,
    data: Annotated[
        Optional[list[Path]],
        typer.Option("--data", help="Fit CSV tables instead of synthetic data (repeatable)."),
    ] = None,
    seed: SeedOption = None,
    sweeps: SweepsOption = None,
    beta_initial: BetaInitialOption = None,
    beta_final: BetaFinalOption = None,
    holdout: Annotated[
        Optional[int],
        typer.Option("--holdout", min=0, help="Hold-out rows per synthetic dataset (0 = none)."),
    ] = None,
    distribution: Annotated[
        XDistribution, typer.Option("--distribution", help="Distribution of X entries.")
    ] = XDistribution.UNIFORM,
    alpha: AlphaOption = None,
    threads: ThreadsOption = None,
    output: Annotated[
        Optional[Path], typer.Option("--output", "-o", help="Directory for CSV and JSON reports.")
    ] = None,
    fmt: FormatOption = OutputFormat.TABLE,
    timings: TimingsOption = False,
) -> None:
    """Compare exhaustive search and QUBO solvers over a λ grid (synthetic data)."""
    _check_lambda_flags(lam, lam_times_d, required=False)
    settings = get_settings()
    with _exit_codes():
        resolved_seed = _seed(settings, seed)
        if data:
            datasets: list[SyntheticSpec | FileReferenceDTO] = [
                FileReferenceDTO(path=path) for path in data
            ]
        else:
            n_samples = n or (settings.full_scale_samples if full_scale else settings.desk_samples)
            datasets = [
                SyntheticSpec(
                    n=n_samples,
                    d=features,
                    k_true=max(1, features // 2),
                    seed=resolved_seed,
                    x_distribution=distribution,
                )
                for features in (d or DEFAULT_SWEEP_FEATURES)
            ]
        holdout_samples = settings.holdout_samples if holdout is None else holdout
        spec = ExperimentSpecDTO(
            datasets=datasets,
            lambda_grid=lam or None,
            lambda_times_d=lam_times_d or (None if lam else list(DEFAULT_LAMBDA_TIMES_D)),
            solvers=solvers or [SolverKind.EXHAUSTIVE, SolverKind.SA],
            schedule=_schedule(
                settings, resolved_seed, None, sweeps, beta_initial, beta_final
            ),
            reads=reads or [settings.num_reads],
            holdout_samples=holdout_samples or None,
            alpha=alpha,
            output_dir=output,
        )
        report = _experiment_service(settings, threads).run_synthetic_sweep(
            spec, include_timings=timings
        )
        _emit_report(report, fmt, timings)


@app.command()
def diabetes(
    data: Annotated[
        Optional[Path],
        typer.Option("--data", help="CSV copy of the table (default: scikit-learn's)."),
    ] = None,
    raw: Annotated[
        bool, typer.Option("--raw", help="Re-normalize raw measurements instead.")
    ] = False,
    lam: Annotated[
        Optional[list[float]], typer.Option("--lambda", min=0.0, help="λ values (repeatable).")
    ] = None,
    reads: ReadsOption = None,
    solvers: Annotated[
        Optional[list[SolverKind]], typer.Option("--solver", help="Solvers (repeatable).")
    ] = None,
    seed: SeedOption = None,
    sweeps: SweepsOption = None,
    beta_initial: BetaInitialOption = None,
    beta_final: BetaFinalOption = None,
    alpha: AlphaOption = None,
    threads: ThreadsOption = None,
    output: Annotated[
        Optional[Path], typer.Option("--output", "-o", help="Directory for CSV and JSON reports.")
    ] = None,
    fmt: FormatOption = OutputFormat.TABLE,
    timings: TimingsOption = False,
) -> None:
    """Compare exhaustive search and QUBO solvers on the Diabetes table."""
    settings = get_settings()
    with _exit_codes():
        resolved_seed = _seed(settings, seed)
        schedule = _schedule(settings, resolved_seed, None, sweeps, beta_initial, beta_final)
        report = _experiment_service(settings, threads).run_diabetes(
            path=data,
            lambdas=lam or DIABETES_LAMBDAS,
            reads=reads or settings.num_reads,
            schedule=schedule,
            scaled=not raw,
            solvers=solvers or (SolverKind.EXHAUSTIVE, SolverKind.SA),
            alpha=alpha,
            output_dir=output,
            include_timings=timings,
        )
        _emit_report(report, fmt, timings)


@app.command("export-qubo")
def export_qubo(
    data: Annotated[Path, typer.Argument(help="CSV table with a header row.")],
    output: Annotated[Path, typer.Option("--output", "-o", help="QUBO file to write.")],
    lam: LambdaOption = None,
    lam_times_d: LambdaTimesDOption = None,
    alpha: AlphaOption = None,
    penalty: PenaltyOption = None,
    target: TargetOption = None,
    center: CenterOption = False,
    poly_output: Annotated[
        Optional[Path],
        typer.Option("--poly-output", help="Also write the quartic polynomial as JSON."),
    ] = None,
) -> None:
    """Compile a regression instance to a QUBO file."""
    _check_lambda_flags(lam, lam_times_d)
    settings = get_settings()
    with _exit_codes():
        ds = DatasetService(CsvDatasetRepository()).load_csv(
            data, target_column=target, center=center
        )
        compiled = _regression_service(settings, None).compile(
            ds,
            _resolve_lambda(lam, lam_times_d, ds.n_features),
            alpha=alpha,
            penalty=penalty,
        )
        QuboTextRepository().save(compiled.qubo, output)
        if poly_output is not None:
            _emit(json.dumps(compiled.poly.to_serializable(), indent=2), poly_output)


@app.command("solve-qubo")
def solve_qubo(
    instance: Annotated[Path, typer.Argument(help="QUBO file written by export-qubo.")],
    solver: Annotated[
        SolverKind, typer.Option("--solver", help="sa or enumerate.")
    ] = SolverKind.SA,
    reads: ReadsOption = None,
    sweeps: SweepsOption = None,
    seed: SeedOption = None,
    beta_initial: BetaInitialOption = None,
    beta_final: BetaFinalOption = None,
    threads: ThreadsOption = None,
    data: Annotated[
        Optional[Path],
        typer.Option("--data", help="Refit and score reads on this CSV table."),
    ] = None,
    lam: LambdaOption = None,
    lam_times_d: LambdaTimesDOption = None,
    target: TargetOption = None,
    center: CenterOption = False,
    samples_output: Annotated[
        Optional[Path], typer.Option("--samples-output", help="Write every read as JSON.")
    ] = None,
    fmt: Annotated[
        OutputFormat, typer.Option("--format", help="Output format.")
    ] = OutputFormat.JSON,
    output: Annotated[
        Optional[Path], typer.Option("--output", "-o", help="Write to a file instead.")
    ] = None,
    timings: TimingsOption = False,
) -> None:
    """Minimize a QUBO file and project its reads to the original variables."""
    if solver is SolverKind.EXHAUSTIVE:
        raise typer.BadParameter("solve-qubo takes sa or enumerate.", param_hint="--solver")
    _check_lambda_flags(lam, lam_times_d, required=data is not None)
    settings = get_settings()
    with _exit_codes():
        schedule = _schedule(
            settings, _seed(settings, seed), reads, sweeps, beta_initial, beta_final
        )
        model = QuboTextRepository().load(instance)
        regression = _regression_service(settings, threads)
        sampler = (
            SimulatedAnnealingSampler(
                threads=threads or settings.threads, batch_size=settings.sa_batch_size
            )
            if solver is SolverKind.SA
            else ExactSampler(max_vars=settings.enumerate_max_vars)
        )
        started = perf_counter()
        sampleset = sampler.sample(model, schedule)
        elapsed = perf_counter() - started
        if samples_output is not None:
            _emit(json.dumps(sampleset.to_serializable(), indent=2), samples_output)

        if data is None:
            best = sampleset.best_read
            document = {
                "z": list(project(model, best.assignment)),
                "energy": best.energy,
                "read_index": best.read_index,
                "num_reads": len(sampleset.reads),
                "num_vars": model.num_vars,
                "num_original": model.num_original,
            }
            if timings:
                document["solve_seconds"] = elapsed
            _emit(json.dumps(document, indent=2), output)
            return

        ds = DatasetService(CsvDatasetRepository()).load_csv(
            data, target_column=target, center=center
        )
        if ds.n_features != model.num_original:
            raise DimensionMismatchError("dataset features", model.num_original, ds.n_features)
        report = regression.select_best(
            ds, _resolve_lambda(lam, lam_times_d, ds.n_features), model, sampleset, solver
        )
        report = report.model_copy(update={"timings": Timings(solve_seconds=elapsed)})
        names = [ds.feature_name(j) for j in range(ds.n_features)]
        _emit_fit(report, fmt, output, timings, names)
