"""Exact Hilbert functions of Cox rings of blow-ups, via apolarity, sagbi
degenerations and lattice-point counts."""

__version__ = "0.1.0"

from .apolarity import DegreeVector, LinearFormConfig, psi_direct  # noqa: E402
from .errors import CoxSagbiError  # noqa: E402

__all__ = ["CoxSagbiError", "DegreeVector", "LinearFormConfig", "psi_direct", "__version__"]
