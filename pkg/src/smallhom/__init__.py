"""Exact certification of bounded complexes of projective modules with
small total homology over finite-dimensional split-local algebras."""

__version__ = "0.1.0"

from .linalg import FieldSpec, FpMatrix
from .algebra import (
    Algebra,
    Budget,
    BudgetExceeded,
    Module,
    ModuleMorphism,
    qci_algebra,
)

__all__ = [
    "__version__",
    "FieldSpec",
    "FpMatrix",
    "Algebra",
    "Budget",
    "BudgetExceeded",
    "Module",
    "ModuleMorphism",
    "qci_algebra",
]
