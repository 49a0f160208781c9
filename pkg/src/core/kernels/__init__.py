"""
Numerical Kernels Package

Pure functions over the domain models: linear algebra, polynomial
compilation, quadratization, scoring and exhaustive subset search.
They hold no state and are safe to call concurrently.
"""

from .linalg import (
    default_alpha,
    gram_summary,
    least_squares,
    neumann_inverse_approx,
    neumann_error_bound,
    eigen_range_check,
)
from .pbf import (
    compile_intermediates,
    compile_objective,
    evaluate,
    approx_weights,
    neumann_objective,
)
from .qubo import (
    default_penalty,
    quadratize,
    qubo_value,
    qubo_energies,
    coupling_matrix,
    to_ising,
    ising_value,
    project,
)
from .regress import refit, score, mse
from .subset_search import exhaustive_subset_search

__all__ = [
    # linalg
    "default_alpha",
    "gram_summary",
    "least_squares",
    "neumann_inverse_approx",
    "neumann_error_bound",
    "eigen_range_check",
    # pbf
    "compile_intermediates",
    "compile_objective",
    "evaluate",
    "approx_weights",
    "neumann_objective",
    # qubo
    "default_penalty",
    "quadratize",
    "qubo_value",
    "qubo_energies",
    "coupling_matrix",
    "to_ising",
    "ising_value",
    "project",
    # regress
    "refit",
    "score",
    "mse",
    # subset search
    "exhaustive_subset_search",
]
