"""
Service Interfaces Package

Ports for computational collaborators of the application services
(samplers, bundled data sources). Infrastructure adapters implement them.
"""

from .i_sampler import ISampler
from .i_diabetes_source import IDiabetesSource

__all__ = [
    "ISampler",
    "IDiabetesSource",
]
