"""Sparse operators over a constrained sector and the Rydberg elementary operators.

Every operator is a real CSR matrix tagged with the :class:`~blockade_anyon.basis.Sector`
it acts on.  Entries below :data:`DROP_TOL` are removed and indices are kept
sorted, so two builds of the same operator have identical sparse structure.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .basis import Sector
from .errors import ArgumentError, CapacityError, DomainError

__all__ = [
    "DROP_TOL",
    "HERMITIAN_TOL",
    "DENSE_LIMIT",
    "SparseOperator",
    "op_number",
    "op_zhat",
    "op_flip",
    "identity",
    "zero",
    "diagonal",
    "add",
    "scale",
    "multiply",
    "adjoint",
    "commutator",
    "frobenius_norm",
    "trace",
    "rank",
    "dumps_coo",
    "loads_coo",
    "write_coo",
    "read_coo",
]

DROP_TOL = 1e-14
HERMITIAN_TOL = 1e-12
DENSE_LIMIT = 1000


def _canonical(matrix) -> sp.csr_matrix:
    m = sp.csr_matrix(matrix, dtype=np.float64, copy=True)
    m.sum_duplicates()
    if m.nnz:
        m.data[np.abs(m.data) < DROP_TOL] = 0.0
        m.eliminate_zeros()
    m.sort_indices()
    m.has_canonical_format = True
    return m


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """A real sparse matrix acting on the basis of ``sector``.

    Treat instances as immutable; arithmetic always returns new operators.
    """

    sector: Sector
    matrix: sp.csr_matrix
    hermitian: bool
    label: str = ""

    @classmethod
    def from_matrix(cls, sector: Sector, matrix, hermitian=None, label: str = "") -> "SparseOperator":
        m = _canonical(matrix)
        if m.shape != (sector.dim, sector.dim):
            raise DomainError(f"matrix shape {m.shape} does not match {sector!r}")
        asym = _asymmetry(m)
        if hermitian is None:
            hermitian = asym <= HERMITIAN_TOL
        elif hermitian and asym > HERMITIAN_TOL:
            raise DomainError(f"operator {label!r} flagged Hermitian but ||O - O^T||_F = {asym:.3e}")
        return cls(sector, m, bool(hermitian), label)

    @property
    def dim(self) -> int:
        return self.sector.dim

    @property
    def nnz(self) -> int:
        return int(self.matrix.nnz)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def dot(self, vec):
        return self.matrix @ vec

    def relabel(self, label: str) -> "SparseOperator":
        return SparseOperator(self.sector, self.matrix, self.hermitian, label)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, c):
        if isinstance(c, SparseOperator):
            return NotImplemented
        return scale(self, c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, SparseOperator):
            return multiply(self, other)
        return self.matrix @ other

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<SparseOperator{name} on {self.sector!r}, nnz={self.nnz}, hermitian={self.hermitian}>"


def _asymmetry(m: sp.csr_matrix) -> float:
    return frobenius_norm(m - m.T)


def _check_same(a: SparseOperator, b: SparseOperator) -> None:
    if a.sector != b.sector:
        raise DomainError(f"sector mismatch: {a.sector!r} vs {b.sector!r}")


# -- elementary operators -------------------------------------------------------


def diagonal(sector: Sector, values, label: str = "") -> SparseOperator:
    values = np.asarray(values, dtype=np.float64)
    return SparseOperator.from_matrix(sector, sp.diags(values, format="csr"), True, label)


def identity(sector: Sector) -> SparseOperator:
    return diagonal(sector, np.ones(sector.dim), "identity")


def zero(sector: Sector) -> SparseOperator:
    return SparseOperator.from_matrix(sector, sp.csr_matrix((sector.dim, sector.dim)), True, "zero")


def op_number(sector: Sector, i: int) -> SparseOperator:
    """Occupation ``n_i``; boundary sites ``0`` and ``N`` give the fixed boundary occupation."""
    return diagonal(sector, sector.site_values(i), f"n:{i}")


def op_zhat(sector: Sector, i: int) -> SparseOperator:
    """Fusion-label operator ``Z_i = 2 n_i - 1`` (+1 for label 1, -1 for tau)."""
    return diagonal(sector, 2 * sector.site_values(i) - 1, f"zhat:{i}")


def op_flip(sector: Sector, i: int) -> SparseOperator:
    """Blockade-projected flip of site ``i``: acts only when both neighbours are empty."""
    if int(i) != i or not 1 <= i <= sector.n_sites:
        raise ArgumentError(f"flip needs an interior site 1..{sector.n_sites}, got {i!r}")
    codes = sector.states
    free = (sector.site_values(i - 1) == 0) & (sector.site_values(i + 1) == 0)
    src = codes[free]
    dst = src ^ np.int64(sector.site_mask(i))
    cols = np.flatnonzero(free)
    rows = sector.index_array(dst, check=False)
    m = sp.coo_matrix((np.ones(cols.size), (rows, cols)), shape=(sector.dim, sector.dim))
    return SparseOperator.from_matrix(sector, m, True, f"flipx:{i}")


# -- algebra --------------------------------------------------------------------


def add(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _check_same(a, b)
    herm = True if (a.hermitian and b.hermitian) else None
    return SparseOperator.from_matrix(a.sector, a.matrix + b.matrix, herm)


def scale(a: SparseOperator, c: float) -> SparseOperator:
    c = float(c)
    return SparseOperator.from_matrix(a.sector, a.matrix * c, a.hermitian or None, a.label)


def multiply(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _check_same(a, b)
    return SparseOperator.from_matrix(a.sector, a.matrix @ b.matrix)


def adjoint(a: SparseOperator) -> SparseOperator:
    return SparseOperator.from_matrix(a.sector, a.matrix.T, a.hermitian or None, a.label)


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _check_same(a, b)
    return SparseOperator.from_matrix(a.sector, a.matrix @ b.matrix - b.matrix @ a.matrix)


def frobenius_norm(a) -> float:
    m = a.matrix if isinstance(a, SparseOperator) else a
    if sp.issparse(m):
        return float(np.sqrt(np.sum(m.data ** 2))) if m.nnz else 0.0
    return float(np.linalg.norm(m))


def trace(a: SparseOperator) -> float:
    return float(a.matrix.diagonal().sum())


def rank(a: SparseOperator, tol=None) -> int:
    """Numerical rank from singular values; default threshold ``1e-9 * dim``."""
    if a.dim > DENSE_LIMIT:
        raise CapacityError(f"dense rank needs dim <= {DENSE_LIMIT}, got {a.dim}")
    if a.dim == 0:
        return 0
    tol = 1e-9 * a.dim if tol is None else tol
    s = np.linalg.svd(a.to_dense(), compute_uv=False)
    return int(np.sum(s > tol))


# -- coordinate-list export -------------------------------------------------------


def dumps_coo(op: SparseOperator, extra=None) -> str:
    """Serialize as a JSON header line followed by ``row col value`` lines."""
    header = {"sector": op.sector.to_json(), "hermitian": op.hermitian, "nnz": op.nnz}
    if op.label:
        header["label"] = op.label
    if extra:
        header.update(extra)
    coo = op.matrix.tocoo()
    buf = io.StringIO()
    buf.write(json.dumps(header, sort_keys=True) + "\n")
    for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
        buf.write(f"{r} {c} {v!r}\n")
    return buf.getvalue()


def loads_coo(text: str):
    """Inverse of :func:`dumps_coo`; returns ``(operator, header)``."""
    lines = text.splitlines()
    if not lines:
        raise DomainError("empty operator file")
    header = json.loads(lines[0])
    sector = Sector.from_json(header["sector"])
    rows, cols, vals = [], [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        r, c, v = line.split()
        rows.append(int(r))
        cols.append(int(c))
        vals.append(float(v))
    if len(vals) != header["nnz"]:
        raise DomainError(f"header says nnz={header['nnz']}, file has {len(vals)} entries")
    m = sp.csr_matrix((vals, (rows, cols)), shape=(sector.dim, sector.dim))
    op = SparseOperator.from_matrix(sector, m, bool(header["hermitian"]), header.get("label", ""))
    return op, header


def write_coo(op: SparseOperator, path, extra=None) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps_coo(op, extra))


def read_coo(path):
    with open(path) as fh:
        return loads_coo(fh.read())


def is_close(a: SparseOperator, b: SparseOperator, tol: float) -> bool:
    _check_same(a, b)
    return frobenius_norm(a.matrix - b.matrix) <= tol


def _sqrt_dim(sector: Sector) -> float:
    return math.sqrt(max(1, sector.dim))
