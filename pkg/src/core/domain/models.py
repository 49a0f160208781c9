"""
Core Domain Models

This module defines all core entities of the best-subset regression
system: datasets, Gram summaries, pseudo-Boolean polynomials, quadratic
binary models, sample sets and fit reports.

These models are implemented as Pydantic `BaseModel` classes and are
configured to be immutable via ``IMMUTABLE_CONFIG`` (or ``ARRAY_CONFIG``
for models that hold NumPy arrays, whose buffers are also made read-only).

They are intentionally decoupled from any file format (CSV, QUBO text)
or presentation (tables, DTOs) details.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Sequence

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    field_validator,
    model_validator,
)

from src.core.exceptions import (
    DegreeTooHighError,
    DimensionMismatchError,
    InvalidAlphaError,
    InvalidScheduleError,
    InvalidSyntheticSpecError,
    ModelError,
    NonFiniteValueError,
    NonSymmetricMatrixError,
    ZeroColumnError,
)

# --- Configuration ---

# Domain models are read-only. Kernels return *new* instances,
# they never modify existing ones in place.
IMMUTABLE_CONFIG = ConfigDict(frozen=True)
ARRAY_CONFIG = ConfigDict(frozen=True, arbitrary_types_allowed=True)

MAX_POLY_DEGREE = 4
ZERO_COEFFICIENT = 1e-15
UNIT_NORM_TOLERANCE = 1e-10


def _readonly(values: Any, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != ndim:
        raise DimensionMismatchError("array rank", ndim, array.ndim)
    array.setflags(write=False)
    return array


# --- Enumerations ---


class XDistribution(str, Enum):
    """
    Distribution the synthetic design matrix is drawn from
    (before column normalization).
    """

    UNIFORM = "uniform"  #: uniform(-1, 1)
    NORMAL = "normal"  #: standard normal


class SolverKind(str, Enum):
    """
    Describes how a feature selection was obtained.
    """

    EXHAUSTIVE = "exhaustive"  #: classical oracle on the true objective
    SA = "sa"  #: simulated annealing on the compiled QUBO
    ENUMERATE = "enumerate"  #: exact QUBO ground state


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    TABLE = "table"


# --- Data ---


class Dataset(BaseModel):
    """
    A design matrix with (usually) ℓ2-normalized columns and its targets.

    Targets are never normalized. Datasets built with :meth:`from_raw`
    have unit-norm columns; hold-out sets built with :meth:`from_scaled`
    carry the training norms instead and are not unit-norm.

    :param x: N×d design matrix.
    :param y: Target vector of length N.
    :param column_norms: Norms the raw columns were divided by.
    :param feature_names: Optional names of the d features.
    """

    model_config = ARRAY_CONFIG

    x: np.ndarray
    y: np.ndarray
    column_norms: np.ndarray
    feature_names: tuple[str, ...] | None = None

    @field_validator("x", mode="before")
    @classmethod
    def _matrix(cls, value: Any) -> np.ndarray:
        return _readonly(value, 2)

    @field_validator("y", "column_norms", mode="before")
    @classmethod
    def _vector(cls, value: Any) -> np.ndarray:
        return _readonly(value, 1)

    @model_validator(mode="after")
    def _check_shapes(self) -> Dataset:
        n, d = self.x.shape
        if n < 1 or d < 1:
            raise DimensionMismatchError("design matrix", 1, min(n, d))
        if self.y.shape[0] != n:
            raise DimensionMismatchError("targets", n, self.y.shape[0])
        if self.column_norms.shape[0] != d:
            raise DimensionMismatchError("column norms", d, self.column_norms.shape[0])
        if self.feature_names is not None and len(self.feature_names) != d:
            raise DimensionMismatchError("feature names", d, len(self.feature_names))
        if not (np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))):
            raise NonFiniteValueError("Design matrix and targets must be finite.")
        for j, norm in enumerate(self.column_norms):
            if not norm > 0:
                raise ZeroColumnError(self.feature_name(j))
        return self

    @classmethod
    def from_raw(
        cls,
        x_raw: Any,
        y: Any,
        feature_names: Sequence[str] | None = None,
        center: bool = False,
    ) -> Dataset:
        """
        Builds a dataset by dividing every column by its ℓ2 norm.

        :param center: Subtract column means before normalizing.
        :raises ZeroColumnError: If a column has norm zero.
        """
        x = np.array(x_raw, dtype=np.float64)
        if x.ndim != 2:
            raise DimensionMismatchError("array rank", 2, x.ndim)
        if center:
            x = x - x.mean(axis=0)
        norms = np.linalg.norm(x, axis=0)
        names = tuple(feature_names) if feature_names is not None else None
        for j, norm in enumerate(norms):
            if norm == 0.0:
                raise ZeroColumnError(names[j] if names else f"x{j}")
        return cls(x=x / norms, y=y, column_norms=norms, feature_names=names)

    @classmethod
    def from_scaled(
        cls,
        x_raw: Any,
        y: Any,
        column_norms: Any,
        feature_names: Sequence[str] | None = None,
    ) -> Dataset:
        """
        Builds a dataset by dividing raw columns by *given* norms
        (normalization statistics of another dataset, e.g. a training split).
        """
        norms = np.asarray(column_norms, dtype=np.float64)
        x = np.array(x_raw, dtype=np.float64) / norms
        names = tuple(feature_names) if feature_names is not None else None
        return cls(x=x, y=y, column_norms=norms, feature_names=names)

    @property
    def n_samples(self) -> int:
        return int(self.x.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.x.shape[1])

    def feature_name(self, j: int) -> str:
        return self.feature_names[j] if self.feature_names else f"x{j}"

    def raw_x(self) -> np.ndarray:
        """The design matrix in original (un-normalized) units."""
        return self.x * self.column_norms

    def is_normalized(self, tolerance: float = UNIT_NORM_TOLERANCE) -> bool:
        norms = np.linalg.norm(self.x, axis=0)
        return bool(np.all(np.abs(norms - 1.0) <= tolerance))


class SyntheticSpec(BaseModel):
    """
    Parameters of a noise-free synthetic regression instance y = X·w.

    :param n: Sample count.
    :param d: Feature count.
    :param k_true: Support size of the generating weight vector.
    :param seed: 64-bit seed; identical specs give bit-identical datasets.
    :param x_distribution: Distribution of raw design entries.
    :param w_range: Magnitude bounds of the nonzero true weights.
    """

    model_config = IMMUTABLE_CONFIG

    n: PositiveInt
    d: PositiveInt
    k_true: PositiveInt
    seed: int = Field(default=0, ge=-(2**63), lt=2**64)
    x_distribution: XDistribution = XDistribution.UNIFORM
    w_range: tuple[float, float] = (0.5, 2.0)

    @model_validator(mode="after")
    def _check_support(self) -> SyntheticSpec:
        if self.k_true > self.d:
            raise InvalidSyntheticSpecError(
                f"k_true={self.k_true} exceeds the feature count d={self.d}."
            )
        low, high = self.w_range
        if not (0 < low <= high):
            raise InvalidSyntheticSpecError(
                f"w_range={self.w_range} must be positive and ordered."
            )
        return self


# --- Linear algebra ---


class GramSummary(BaseModel):
    """
    Sufficient statistics of a normalized dataset.

    :param p: Gram matrix XᵀX (unit diagonal).
    :param q: Correlations Xᵀy.
    :param alpha: Neumann step size, 0 < alpha ≤ 2/(d+1).
    """

    model_config = ARRAY_CONFIG

    p: np.ndarray
    q: np.ndarray
    alpha: float

    @field_validator("p", mode="before")
    @classmethod
    def _matrix(cls, value: Any) -> np.ndarray:
        return _readonly(value, 2)

    @field_validator("q", mode="before")
    @classmethod
    def _vector(cls, value: Any) -> np.ndarray:
        return _readonly(value, 1)

    @model_validator(mode="after")
    def _check(self) -> GramSummary:
        d = self.q.shape[0]
        if self.p.shape != (d, d):
            raise DimensionMismatchError("Gram matrix", d, self.p.shape[0])
        if not np.allclose(self.p, self.p.T, rtol=0.0, atol=1e-12):
            raise NonSymmetricMatrixError("Gram matrix is not symmetric.")
        if not np.all(np.abs(np.diag(self.p) - 1.0) <= UNIT_NORM_TOLERANCE):
            raise ModelError("Gram matrix diagonal must be 1 (unit-norm columns).")
        upper = 2.0 / (d + 1)
        if not (0.0 < self.alpha <= upper):
            raise InvalidAlphaError(self.alpha, upper)
        return self

    @property
    def n_features(self) -> int:
        return int(self.q.shape[0])


# --- Pseudo-Boolean polynomials ---


class MultilinearPoly(BaseModel):
    """
    A multilinear polynomial of degree ≤ 4 over binary variables.

    Terms are keyed by strictly increasing index tuples; coefficients with
    magnitude ≤ 1e-15 are pruned on construction.
    """

    model_config = IMMUTABLE_CONFIG

    num_vars: PositiveInt
    constant: float = 0.0
    terms: dict[tuple[int, ...], float] = Field(default_factory=dict)

    @field_validator("terms")
    @classmethod
    def _canonical_terms(
        cls, terms: dict[tuple[int, ...], float]
    ) -> dict[tuple[int, ...], float]:
        pruned: dict[tuple[int, ...], float] = {}
        for key, coeff in terms.items():
            if not 1 <= len(key) <= MAX_POLY_DEGREE:
                raise DegreeTooHighError(len(key), MAX_POLY_DEGREE)
            if any(a >= b for a, b in zip(key, key[1:])) or key[0] < 0:
                raise ModelError(f"Term index tuple {key} is not strictly increasing.")
            if abs(coeff) > ZERO_COEFFICIENT:
                pruned[key] = float(coeff)
        return pruned

    @model_validator(mode="after")
    def _check_indices(self) -> MultilinearPoly:
        for key in self.terms:
            if key[-1] >= self.num_vars:
                raise ModelError(
                    f"Term {key} references a variable beyond num_vars={self.num_vars}."
                )
        return self

    @property
    def degree(self) -> int:
        return max((len(key) for key in self.terms), default=0)

    def to_serializable(self) -> dict[str, Any]:
        return {
            "num_vars": self.num_vars,
            "constant": self.constant,
            "terms": [[list(key), coeff] for key, coeff in self.terms.items()],
        }

    @classmethod
    def from_serializable(cls, obj: dict[str, Any]) -> MultilinearPoly:
        return cls(
            num_vars=obj["num_vars"],
            constant=obj["constant"],
            terms={tuple(key): coeff for key, coeff in obj["terms"]},
        )


class CompileIntermediates(BaseModel):
    """
    Quantities shared by every sample during polynomial compilation.

    The per-sample pair tables are not stored; ``b_tables`` materializes
    them for a block of rows:
    b(t)_ij = α²(p_ij q_j x_ti + p_ji q_i x_tj).

    :param q_prime: α(2−α)·q.
    :param pq: α²·p_ij·q_j, so that b(t)_ij = pq_ij x_ti + pq_ji x_tj.
    """

    model_config = ARRAY_CONFIG

    q_prime: np.ndarray
    pq: np.ndarray

    @field_validator("q_prime", mode="before")
    @classmethod
    def _vector(cls, value: Any) -> np.ndarray:
        return _readonly(value, 1)

    @field_validator("pq", mode="before")
    @classmethod
    def _matrix(cls, value: Any) -> np.ndarray:
        return _readonly(value, 2)

    @model_validator(mode="after")
    def _check_finite(self) -> CompileIntermediates:
        if not (np.all(np.isfinite(self.q_prime)) and np.all(np.isfinite(self.pq))):
            raise NonFiniteValueError("Compile intermediates must be finite.")
        return self

    def b_tables(self, x_rows: np.ndarray) -> np.ndarray:
        """Returns the (T, d, d) symmetric pair tables of a block of rows."""
        left = x_rows[:, :, None] * self.pq[None, :, :]
        tables = left + np.transpose(left, (0, 2, 1))
        d = self.pq.shape[0]
        tables[:, np.arange(d), np.arange(d)] = 0.0
        return tables


# --- Quadratic binary models ---


class AuxDefinition(BaseModel):
    """
    Records that auxiliary variable `aux_index` stands for the product
    of `parent_i` and `parent_j` (original or earlier auxiliary variables).
    """

    model_config = IMMUTABLE_CONFIG

    aux_index: NonNegativeInt
    parent_i: NonNegativeInt
    parent_j: NonNegativeInt


class QuboModel(BaseModel):
    """
    A quadratic unconstrained binary model over original and auxiliary variables.

    :param num_vars: Total variable count (original + auxiliary).
    :param num_original: Leading variables that are original.
    :param offset: Constant energy.
    :param linear: Linear coefficients, one per variable.
    :param quadratic: Pair coefficients keyed by (i, j) with i < j.
    :param aux_defs: Auxiliary substitutions in creation order.
    :param penalty_m: Strength of the consistency gadgets.
    """

    model_config = IMMUTABLE_CONFIG

    num_vars: PositiveInt
    num_original: PositiveInt
    offset: float = 0.0
    linear: tuple[float, ...]
    quadratic: dict[tuple[int, int], float] = Field(default_factory=dict)
    aux_defs: tuple[AuxDefinition, ...] = ()
    penalty_m: PositiveFloat = 1.0

    @field_validator("quadratic")
    @classmethod
    def _prune(cls, quadratic: dict[tuple[int, int], float]) -> dict[tuple[int, int], float]:
        return {key: float(c) for key, c in quadratic.items() if c != 0.0}

    @model_validator(mode="after")
    def _check(self) -> QuboModel:
        if len(self.linear) != self.num_vars:
            raise DimensionMismatchError("linear coefficients", self.num_vars, len(self.linear))
        if self.num_original > self.num_vars:
            raise ModelError("num_original exceeds num_vars.")
        for i, j in self.quadratic:
            if not 0 <= i < j < self.num_vars:
                raise ModelError(f"Quadratic key {(i, j)} is not an ordered in-range pair.")
        for aux in self.aux_defs:
            if aux.aux_index < self.num_original or aux.aux_index >= self.num_vars:
                raise ModelError(f"Auxiliary index {aux.aux_index} is out of range.")
            if aux.parent_i >= aux.aux_index or aux.parent_j >= aux.aux_index:
                raise ModelError(
                    f"Auxiliary {aux.aux_index} has a parent defined after it."
                )
        return self

    @property
    def num_aux(self) -> int:
        return self.num_vars - self.num_original


class IsingModel(BaseModel):
    """
    Spin model equivalent to a QuboModel under s = 2x − 1.
    """

    model_config = IMMUTABLE_CONFIG

    num_spins: PositiveInt
    offset: float = 0.0
    h: tuple[float, ...]
    j: dict[tuple[int, int], float] = Field(default_factory=dict)

    @field_validator("j")
    @classmethod
    def _prune(cls, j: dict[tuple[int, int], float]) -> dict[tuple[int, int], float]:
        return {key: float(c) for key, c in j.items() if c != 0.0}

    @model_validator(mode="after")
    def _check(self) -> IsingModel:
        if len(self.h) != self.num_spins:
            raise DimensionMismatchError("fields", self.num_spins, len(self.h))
        for u, v in self.j:
            if not 0 <= u < v < self.num_spins:
                raise ModelError(f"Coupling key {(u, v)} is not an ordered in-range pair.")
        return self


# --- Sampling ---


class AnnealSchedule(BaseModel):
    """
    Parameters of a simulated-annealing run.

    When both betas are None they are derived from the model
    (see ``default_betas``).

    :param num_reads: Independent restarts.
    :param sweeps_per_read: Full Metropolis sweeps per restart.
    :param beta_initial: Inverse temperature of the first sweep.
    :param beta_final: Inverse temperature of the last sweep.
    :param seed: 64-bit seed of the whole run.
    """

    model_config = IMMUTABLE_CONFIG

    num_reads: PositiveInt = 100
    sweeps_per_read: PositiveInt = 1000
    beta_initial: PositiveFloat | None = None
    beta_final: PositiveFloat | None = None
    seed: int = Field(default=0, ge=-(2**63), lt=2**64)

    @model_validator(mode="after")
    def _check_betas(self) -> AnnealSchedule:
        if (self.beta_initial is None) != (self.beta_final is None):
            raise InvalidScheduleError("Give both betas or neither.")
        if self.beta_initial is not None and self.beta_final is not None:
            if not self.beta_final > self.beta_initial:
                raise InvalidScheduleError(
                    f"beta_final={self.beta_final} must exceed "
                    f"beta_initial={self.beta_initial}."
                )
        return self


class Read(BaseModel):
    """One sampler outcome: an assignment over all model variables and its energy."""

    model_config = IMMUTABLE_CONFIG

    assignment: tuple[int, ...]
    energy: float
    read_index: NonNegativeInt


class EnergySummary(BaseModel):
    """Histogram-style summary of every state visited by an enumeration."""

    model_config = IMMUTABLE_CONFIG

    num_states: PositiveInt
    minimum: float
    maximum: float
    mean: float


class SampleSet(BaseModel):
    """
    The reads returned by a sampler.

    ``best`` is the position of the minimum-energy read
    (ties resolve to the lowest read_index).
    """

    model_config = IMMUTABLE_CONFIG

    reads: tuple[Read, ...] = Field(min_length=1)
    summary: EnergySummary | None = None

    @property
    def best(self) -> int:
        return min(
            range(len(self.reads)),
            key=lambda k: (self.reads[k].energy, self.reads[k].read_index),
        )

    @property
    def best_read(self) -> Read:
        return self.reads[self.best]

    @property
    def energies(self) -> tuple[float, ...]:
        return tuple(read.energy for read in self.reads)

    def to_serializable(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "reads": [
                {
                    "assignment": "".join(str(bit) for bit in read.assignment),
                    "energy": read.energy,
                    "read_index": read.read_index,
                }
                for read in self.reads
            ],
            "best": self.best,
        }
        if self.summary is not None:
            obj["summary"] = self.summary.model_dump()
        return obj

    @classmethod
    def from_serializable(cls, obj: dict[str, Any]) -> SampleSet:
        reads = tuple(
            Read(
                assignment=tuple(int(bit) for bit in item["assignment"]),
                energy=item["energy"],
                read_index=item["read_index"],
            )
            for item in obj["reads"]
        )
        summary = obj.get("summary")
        return cls(
            reads=reads,
            summary=EnergySummary(**summary) if summary is not None else None,
        )


# --- Reports ---


class Timings(BaseModel):
    """
    Wall-clock seconds. Compile time is the QUBO construction
    ("preprocessing"), solve time the minimization ("processing").
    """

    model_config = IMMUTABLE_CONFIG

    compile_seconds: float = 0.0
    solve_seconds: float = 0.0


class FitReport(BaseModel):
    """
    Outcome of one ℓ0-regularized fit, scored with an exact refit.

    :param z: Selection vector.
    :param w: Refit weights, zero off the support.
    :param cardinality: ‖z‖₀.
    :param objective: sse + lambda·cardinality.
    :param sse: Residual sum of squares on the training data.
    :param mse_train: sse / N.
    :param mse_test: MSE on a hold-out set, when one was given.
    :param lam: Sparsity penalty λ (serialized as ``lambda``).
    :param solver: How z was obtained.
    :param timings: Compile and solve wall-times.
    :param read_energies: Per-read QUBO energies (empty for exhaustive search).
    :param num_reads: Number of sampler reads.
    :param alpha: Neumann step size used to compile the QUBO.
    :param num_aux: Auxiliary variables of the QUBO.
    :param penalty_m: Quadratization penalty of the QUBO.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    z: tuple[int, ...]
    w: tuple[float, ...]
    cardinality: NonNegativeInt
    objective: float
    sse: float
    mse_train: float
    mse_test: float | None = None
    lam: float = Field(alias="lambda", ge=0.0)
    solver: SolverKind
    timings: Timings = Timings()
    read_energies: tuple[float, ...] = ()
    num_reads: NonNegativeInt = 0
    alpha: float | None = None
    num_aux: NonNegativeInt | None = None
    penalty_m: float | None = None

    @model_validator(mode="after")
    def _check(self) -> FitReport:
        if len(self.w) != len(self.z):
            raise DimensionMismatchError("weights", len(self.z), len(self.w))
        if self.cardinality != sum(self.z):
            raise ModelError("cardinality does not match the selection vector.")
        if any(wi != 0.0 for wi, zi in zip(self.w, self.z) if zi == 0):
            raise ModelError("weights must vanish off the selected support.")
        expected = self.sse + self.lam * self.cardinality
        if abs(self.objective - expected) > 1e-10 * max(1.0, abs(expected)):
            raise ModelError("objective must equal sse + lambda * cardinality.")
        return self
