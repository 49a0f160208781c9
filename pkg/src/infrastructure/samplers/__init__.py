"""
QUBO Samplers Package

Adapters implementing the `ISampler` port.
"""

from .exact import ENUMERATE_MAX_VARS, ExactSampler, enumerate_qubo
from .simulated_annealing import (
    SA_BATCH_SIZE,
    SimulatedAnnealingSampler,
    default_betas,
    simulated_anneal,
)

__all__ = [
    "ENUMERATE_MAX_VARS",
    "ExactSampler",
    "enumerate_qubo",
    "SA_BATCH_SIZE",
    "SimulatedAnnealingSampler",
    "default_betas",
    "simulated_anneal",
]
