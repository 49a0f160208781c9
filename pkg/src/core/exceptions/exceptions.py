"""
This module defines all custom, domain-specific exceptions.

These exceptions are raised by the kernels and the application services
when inputs violate a model invariant or a solver guard.
The presentation (CLI) layer is responsible for catching these
and translating them into messages on standard error and exit codes.
"""


class DomainError(Exception):
    """Base class for all domain-specific exceptions."""

    pass


# --- "Dataset" Group ---


class DatasetError(DomainError):
    """Base class for exceptions raised while ingesting or splitting data."""

    def __init__(self, message: str):
        super().__init__(message)


class CsvParseError(DatasetError):
    """Raised when a file cannot be parsed as a CSV table with a header row."""

    def __init__(self, path: str, detail: str):
        self.path = path
        self.detail = detail
        super().__init__(f"Cannot parse CSV file {path}: {detail}")


class NonNumericCellError(DatasetError):
    """
    Raised when a cell of the table is empty or not a decimal real.

    `row` is the 1-based data row (the header is not counted).
    """

    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"Non-numeric cell {value!r} at row {row}, column {column!r}.")


class ZeroColumnError(DatasetError):
    """Raised when a feature column has ℓ2 norm zero (all-zero column)."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"Feature column {column!r} is an all-zero column.")


class MissingTargetColumnError(DatasetError):
    """Raised when the requested target column is not in the table."""

    def __init__(self, column: str):
        self.column = column
        super().__init__(f"Target column {column!r} is missing.")


class NonFiniteValueError(DatasetError):
    """Raised when a design matrix or target vector holds NaN or Inf."""

    pass


class DegenerateSplitError(DatasetError):
    """Raised when a train/test split would leave one side empty."""

    def __init__(self, n_train: int, n_test: int):
        self.n_train = n_train
        self.n_test = n_test
        super().__init__(
            f"Degenerate split: {n_train} train rows and {n_test} test rows."
        )


class InvalidSyntheticSpecError(DatasetError):
    """
    Raised when a synthetic dataset cannot be generated from its spec
    (e.g., k_true > d).
    """

    pass


class DatasetNotNormalizedError(DatasetError):
    """Raised when a kernel needs unit-norm columns and gets something else."""

    pass


# --- "Model" Group ---


class ModelError(DomainError):
    """
    Base class for exceptions raised when a numerical model (Gram summary,
    polynomial, QUBO) is malformed or used inconsistently.
    """

    def __init__(self, message: str):
        super().__init__(message)


class DimensionMismatchError(ModelError):
    """Raised when two objects disagree on a dimension."""

    def __init__(self, what: str, expected: int, actual: int):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected length {expected}, got {actual}.")


class InvalidAlphaError(ModelError):
    """Raised when a Neumann step size is outside (0, 2/(d+1)]."""

    def __init__(self, alpha: float, upper: float):
        self.alpha = alpha
        self.upper = upper
        super().__init__(f"alpha={alpha!r} is outside (0, {upper!r}].")


class DegreeTooHighError(ModelError):
    """Raised when a polynomial term exceeds the supported degree."""

    def __init__(self, degree: int, limit: int):
        self.degree = degree
        self.limit = limit
        super().__init__(f"Term of degree {degree} exceeds the limit {limit}.")


class InvalidPenaltyError(ModelError):
    """Raised when a quadratization penalty is not strictly positive."""

    pass


class NonSymmetricMatrixError(ModelError):
    """Raised when an eigenvalue routine gets a non-symmetric matrix."""

    pass


class EmptyModelError(ModelError):
    """Raised when a model has no nonzero coefficient to scale from."""

    pass


class QuboFormatError(ModelError):
    """Raised when a QUBO text file does not follow the expected format."""

    def __init__(self, line_no: int, detail: str):
        self.line_no = line_no
        self.detail = detail
        super().__init__(f"QUBO file line {line_no}: {detail}")


# --- "Solver" Group ---


class SolverError(DomainError):
    """Base class for exceptions raised by minimizers."""

    def __init__(self, message: str):
        super().__init__(message)


class SizeGuardError(SolverError):
    """
    Raised when an exhaustive minimizer is asked to enumerate
    more states than its guard allows.
    """

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds the enumeration guard {limit}.")


class InvalidScheduleError(SolverError):
    """Raised when an annealing schedule violates its invariants."""

    pass


# --- "Experiment" Group ---


class ExperimentError(DomainError):
    """Base class for exceptions raised while orchestrating experiments."""

    def __init__(self, message: str):
        super().__init__(message)


class InvalidExperimentSpecError(ExperimentError):
    """Raised when an experiment has an empty grid or no solver."""

    pass
