"""
Data Transfer Objects for single fits.
"""

from pydantic import BaseModel, ConfigDict

from src.core.domain import GramSummary, MultilinearPoly, QuboModel


class CompiledQuboDTO(BaseModel):
    """
    Output DTO: every artifact of compiling one (dataset, λ) instance.

    :param gram: The Gram summary the polynomial was built from.
    :param poly: The quartic objective polynomial.
    :param qubo: Its quadratization.
    :param compile_seconds: Wall-time of the whole compilation.
    """

    model_config = ConfigDict(frozen=True)

    gram: GramSummary
    poly: MultilinearPoly
    qubo: QuboModel
    compile_seconds: float
