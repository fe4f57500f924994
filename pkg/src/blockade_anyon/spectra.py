"""Exact diagonalization and the sector spectral identities of symmetric chains."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla

from .basis import enumerate_sector
from .errors import ConvergenceError, DomainError
from .hamiltonians import golden_hamiltonian, mirror_couplings
from .operators import SparseOperator, frobenius_norm

__all__ = [
    "EIGH_DENSE_LIMIT",
    "Spectrum",
    "SectorCheck",
    "eigensystem",
    "compare_spectra",
    "verify_direct_sum",
    "verify_mirror",
]

EIGH_DENSE_LIMIT = 2000


@dataclass
class Spectrum:
    """Eigenvalues (ascending) of an operator on one sector."""

    eigenvalues: np.ndarray
    sector: dict
    label: str = ""
    vectors: np.ndarray | None = None
    complete: bool = True
    residuals: np.ndarray | None = None

    def __len__(self):
        return int(self.eigenvalues.size)

    def multiplicities(self, tol: float = 1e-9):
        """``[(value, count), ...]`` after merging eigenvalues closer than ``tol``."""
        out = []
        for w in self.eigenvalues:
            if out and abs(w - out[-1][0]) <= tol:
                out[-1][1] += 1
            else:
                out.append([float(w), 1])
        return [tuple(x) for x in out]


def eigensystem(op: SparseOperator, want_vectors: bool = False, k: int = 6, which: str = "SA",
                dense_limit: int = EIGH_DENSE_LIMIT, tol: float = 1e-8) -> Spectrum:
    """Full spectrum up to ``dense_limit``; ``k`` extremal eigenpairs (Lanczos) above it."""
    if frobenius_norm(op.matrix - op.matrix.T) > 1e-10:
        raise DomainError(f"eigensystem needs a Hermitian operator, got {op!r}")
    if op.dim <= dense_limit:
        if want_vectors:
            w, V = np.linalg.eigh(op.to_dense())
        else:
            w, V = np.linalg.eigvalsh(op.to_dense()), None
        return Spectrum(w, op.sector.to_json(), op.label, V)
    k = min(k, op.dim - 1)
    try:
        w, V = spla.eigsh(op.matrix, k=k, which=which, tol=0, maxiter=100 * op.dim)
    except spla.ArpackNoConvergence as exc:
        raise ConvergenceError(f"Lanczos did not converge for {op!r}", exc.eigenvalues) from exc
    order = np.argsort(w)
    w, V = w[order], V[:, order]
    res = np.linalg.norm(op.matrix @ V - V * w, axis=0)
    if np.any(res > tol):
        raise ConvergenceError(f"Lanczos residuals above {tol:g}", res)
    return Spectrum(w, op.sector.to_json(), op.label, V if want_vectors else None, False, res)


@dataclass
class SectorCheck:
    """Outcome of comparing spectra across boundary-condition sectors."""

    name: str
    passed: bool
    worst_residual: float
    tol: float
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "tol": self.tol,
            "details": self.details,
        }


def compare_spectra(a, b, tol: float):
    """Greedy sorted matching of two multisets; returns ``(passed, worst, worst_index)``."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size != b.size:
        return False, float("inf"), -1
    if a.size == 0:
        return True, 0.0, -1
    diff = np.abs(a - b)
    worst = int(np.argmax(diff))
    return bool(diff[worst] <= tol), float(diff[worst]), worst


def _default_builder(sector, couplings):
    return golden_hamiltonian(sector, couplings)


def _spectrum(builder, N, code, couplings):
    sector = enumerate_sector(N, code[0], code[1])
    return eigensystem(builder(sector, couplings)).eigenvalues


def verify_direct_sum(N: int, couplings, tol: float = 1e-9, builder=None) -> SectorCheck:
    """Check ``spec(tau,tau) = spec(1,1) + spec(1,tau)`` as multisets, same couplings everywhere.

    ``builder(sector, couplings)`` makes the Hamiltonian; it defaults to the
    golden chain.  A mismatch is reported, not raised.
    """
    builder = builder or _default_builder
    J = np.asarray(couplings, dtype=np.float64)
    tt = _spectrum(builder, N, "tt", J)
    ones = _spectrum(builder, N, "11", J)
    one_tau = _spectrum(builder, N, "1t", J)
    passed, worst, idx = compare_spectra(tt, np.concatenate([ones, one_tau]), tol)
    details = {
        "N": int(N),
        "couplings": J.tolist(),
        "dims": {"tt": int(tt.size), "11": int(ones.size), "1t": int(one_tau.size)},
        "worst_index": idx,
        "spectra": {"tt": tt.tolist(), "11": ones.tolist(), "1t": one_tau.tolist()},
    }
    return SectorCheck("direct_sum", passed, worst, float(tol), details)


def verify_mirror(N: int, couplings, tol: float = 1e-9, builder=None, mode: str = "mirrored") -> SectorCheck:
    """Compare ``spec(1,tau)`` with ``spec(tau,1)``.

    The ``(tau, 1)`` chain uses reversed couplings ``J_i -> J_{N-i}`` for
    ``mode="mirrored"`` and the same couplings for ``mode="identical"``; both
    comparisons are always computed and recorded, ``passed`` follows ``mode``.
    """
    if mode not in ("mirrored", "identical"):
        raise DomainError(f"mode must be 'mirrored' or 'identical', got {mode!r}")
    builder = builder or _default_builder
    J = np.asarray(couplings, dtype=np.float64)
    one_tau = _spectrum(builder, N, "1t", J)
    results = {}
    for name, Jt in (("mirrored", mirror_couplings(J)), ("identical", J)):
        tau_one = _spectrum(builder, N, "t1", Jt)
        ok, worst, idx = compare_spectra(one_tau, tau_one, tol)
        results[name] = {"passed": ok, "worst_residual": worst, "worst_index": idx,
                         "couplings_t1": Jt.tolist(), "spectrum_t1": tau_one.tolist()}
    details = {
        "N": int(N),
        "couplings": J.tolist(),
        "mirroring": "J_i -> J_{N-i} on the (tau,1) chain",
        "spectrum_1t": one_tau.tolist(),
        "modes": results,
    }
    chosen = results[mode]
    return SectorCheck(f"mirror[{mode}]", chosen["passed"], chosen["worst_residual"], float(tol), details)
