from .diabetes import SklearnDiabetesSource

__all__ = ["SklearnDiabetesSource"]
