"""Exact relative Gel'fand-Fuks cochain complexes of ham_2 and ham_2^0."""
from .complex import AlgebraVariant, BudgetExceeded, build_slice
from .genfun import LaurentSeries, perchik_full_series, perchik_series
from .invariants import IrrepProfile, invariant_basis, invariant_dim

__all__ = [
    "AlgebraVariant", "BudgetExceeded", "build_slice", "IrrepProfile",
    "invariant_basis", "invariant_dim", "LaurentSeries", "perchik_series",
    "perchik_full_series",
]
__version__ = "0.1.0"
