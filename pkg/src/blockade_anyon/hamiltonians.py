"""Golden-chain Hamiltonians assembled from pair projectors."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .basis import Sector
from .errors import ArgumentError
from .operators import SparseOperator
from .projectors import pair_vacuum_projector

__all__ = ["golden_hamiltonian", "mirror_couplings"]


def golden_hamiltonian(sector: Sector, couplings) -> SparseOperator:
    """``H = -sum_i J_i P(i, i+1)`` with one coupling per neighbouring anyon pair."""
    J = np.asarray(couplings, dtype=np.float64).ravel()
    if J.size != sector.N - 1:
        raise ArgumentError(f"need {sector.N - 1} couplings for N={sector.N}, got {J.size}")
    m = sp.csr_matrix((sector.dim, sector.dim))
    for i, Ji in enumerate(J, start=1):
        if Ji != 0.0:
            m = m - Ji * pair_vacuum_projector(sector, i).matrix
    return SparseOperator.from_matrix(sector, m, True, "golden")


def mirror_couplings(couplings) -> np.ndarray:
    """Spatial reflection ``J_i -> J_{N-i}`` of a coupling list."""
    return np.asarray(couplings, dtype=np.float64)[::-1].copy()
