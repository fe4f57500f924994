"""Topological-symmetry tests, symmetric-operator counting and locality analysis."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import constants as C
from .basis import Boundary, Sector, enumerate_sector, fib
from .errors import ArgumentError, CapacityError, DictionaryError
from .operators import (
    SparseOperator,
    commutator,
    frobenius_norm,
    identity,
    multiply,
    op_flip,
    op_number,
    op_zhat,
)
from .projectors import pair_vacuum_projector, total_charge_projector, window_charge_projector

__all__ = [
    "SymmetryReport",
    "SupportReport",
    "DictionaryReport",
    "OPERATOR_SPACE_LIMIT",
    "RANK_RTOL",
    "is_topologically_symmetric",
    "symmetrize",
    "symmetrization_superoperator",
    "symmetric_operator_count",
    "projector_span_dimension",
    "support_window",
    "dictionary_report",
    "sigma_x_coefficients",
    "QUOTED_SIGMA_X_COEFFICIENTS",
]

OPERATOR_SPACE_LIMIT = 4096
RANK_RTOL = 1e-8


def _is_tau_tau(sector: Sector) -> bool:
    return sector.z0 is Boundary.TAU and sector.zN is Boundary.TAU


@dataclass
class SymmetryReport:
    operator: str
    sector: dict
    commutator_norm: float
    tol: float
    is_symmetric: bool

    def to_json(self) -> dict:
        return asdict(self)


def is_topologically_symmetric(op: SparseOperator, tol: float = 1e-10) -> SymmetryReport:
    """Compare ``||[O, P_charge]||_F`` with ``tol``.

    Outside ``(tau, tau)`` the charge projector is a c-number and the report
    is trivially symmetric with norm 0.
    """
    if _is_tau_tau(op.sector):
        norm = frobenius_norm(commutator(op, total_charge_projector(op.sector)))
    else:
        norm = 0.0
    return SymmetryReport(op.label or "operator", op.sector.to_json(), norm, float(tol), norm <= tol)


def symmetrize(op: SparseOperator) -> SparseOperator:
    """Block-diagonal part ``P O P + (1-P) O (1-P)`` with respect to total charge."""
    P = total_charge_projector(op.sector)
    Q = identity(op.sector) - P
    out = multiply(multiply(P, op), P) + multiply(multiply(Q, op), Q)
    return out.relabel(f"sym({op.label})" if op.label else "sym")


def symmetrization_superoperator(sector: Sector) -> np.ndarray:
    """Dense matrix of ``X -> P X P + Q X Q`` acting on row-major ``vec(X)``."""
    d = sector.dim
    if d * d > OPERATOR_SPACE_LIMIT:
        raise CapacityError(f"operator space {d * d} exceeds limit {OPERATOR_SPACE_LIMIT}")
    P = total_charge_projector(sector).to_dense()
    Q = np.eye(d) - P
    return np.kron(P, P.T) + np.kron(Q, Q.T)


def symmetric_operator_count(N: int) -> dict:
    """Count topologically symmetric operators on ``N`` anyons in ``(tau, tau)``.

    ``n_op = F_{N-1}^2 + F_N^2`` is checked against the numerical rank of the
    symmetrization superoperator (singular values above ``1e-8 * s_max``).
    """
    if int(N) != N or N < 2:
        raise ArgumentError(f"need N >= 2, got {N!r}")
    sector = enumerate_sector(N, "t", "t")
    n_op = fib(N - 1) ** 2 + fib(N) ** 2
    total = sector.dim**2
    S = symmetrization_superoperator(sector)
    s = np.linalg.svd(S, compute_uv=False)
    rank = int(np.sum(s > RANK_RTOL * s[0]))
    idempotence = float(np.linalg.norm(S @ S - S))
    return {
        "N": int(N),
        "n_op": n_op,
        "total": total,
        "numerical_rank": rank,
        "superoperator_idempotence": idempotence,
        "rank_rtol": RANK_RTOL,
        "verified": rank == n_op and n_op < total,
    }


def projector_span_dimension(N: int, max_length: int = 32) -> dict:
    """Dimension of the span of products of contiguous vacuum-window projectors.

    Words are grown breadth first (left multiplication by a generator) until
    the span stops growing or ``max_length`` is reached, then compared with
    the symmetric-operator count.
    """
    sector = enumerate_sector(N, "t", "t")
    d = sector.dim
    if d * d > OPERATOR_SPACE_LIMIT:
        raise CapacityError(f"operator space {d * d} exceeds limit {OPERATOR_SPACE_LIMIT}")
    gens = [
        window_charge_projector(sector, a, b, "1").to_dense()
        for a in range(1, N + 1)
        for b in range(a + 1, N + 1)
    ]
    basis = np.zeros((0, d * d))
    frontier = [np.eye(d)]
    length = 0

    def absorb(mats):
        nonlocal basis
        fresh = []
        for m in mats:
            v = m.ravel()
            r = v - basis.T @ (basis @ v) if basis.size else v.copy()
            nrm = np.linalg.norm(r)
            if nrm > 1e-8 * max(1.0, np.linalg.norm(v)):
                basis = np.vstack([basis, r / nrm])
                fresh.append(m)
        return fresh

    frontier = absorb(frontier)
    while frontier and length < max_length:
        length += 1
        frontier = absorb([g @ w for w in frontier for g in gens])
    n_op = fib(N - 1) ** 2 + fib(N) ** 2
    return {"N": int(N), "span_dimension": int(basis.shape[0]), "n_op": n_op, "word_length": length,
            "spans_symmetric_space": int(basis.shape[0]) == n_op}


# -- locality -------------------------------------------------------------------------


@dataclass
class SupportReport:
    operator: str
    sector: dict
    window: tuple | None
    is_full: bool
    context_independent: bool
    tol: float

    @property
    def width(self) -> int:
        return 0 if self.window is None else self.window[1] - self.window[0] + 1

    def to_json(self) -> dict:
        out = asdict(self)
        out["window"] = None if self.window is None else list(self.window)
        out["full"] = self.is_full
        return out


def _site_mask(L: int, a: int, b: int) -> int:
    mask = 0
    for j in range(a, b + 1):
        mask |= 1 << (L - j)
    return mask


def _depends_only_on(O, codes, L, a, b, ctx_a, ctx_b, tol) -> bool:
    """Matrix elements vanish unless bra/ket agree off ``[a,b]`` and depend only on sites ``[ctx_a, ctx_b]``."""
    mask = _site_mask(L, a, b) if a <= b else 0
    outside = codes & ~mask
    same = outside[:, None] == outside[None, :]
    if np.any(np.abs(O[~same]) > tol):
        return False
    ctx = _site_mask(L, max(ctx_a, 1), min(ctx_b, L)) if ctx_a <= ctx_b else 0
    rows, cols = np.nonzero(same)
    keys = (codes[rows] & ctx) * (np.int64(1) << L) + (codes[cols] & ctx)
    _, inv = np.unique(keys, return_inverse=True)
    vals = O[rows, cols]
    hi = np.full(inv.max() + 1, -np.inf)
    lo = np.full(inv.max() + 1, np.inf)
    np.maximum.at(hi, inv, vals)
    np.minimum.at(lo, inv, vals)
    return bool(np.all(hi - lo <= tol))


def support_window(op: SparseOperator, tol: float = 1e-10) -> SupportReport:
    """Smallest contiguous window of Rydberg sites the operator acts on.

    A window ``[a, b]`` qualifies when every matrix element between states
    that differ outside it vanishes and every element depends only on the
    bra and ket restricted to ``[a, b]`` (boundary occupations are fixed by
    the sector).  Scalars have an empty window; ``is_full`` flags the whole
    interior ``[1, N-1]``.
    """
    sector = op.sector
    L = sector.n_sites
    O = op.to_dense()
    codes = sector.states.astype(np.int64)
    label = op.label or "operator"
    if _depends_only_on(O, codes, L, 1, 0, 1, 0, tol):
        return SupportReport(label, sector.to_json(), None, False, True, tol)
    found = None
    for width in range(1, L + 1):
        for a in range(1, L - width + 2):
            b = a + width - 1
            if _depends_only_on(O, codes, L, a, b, a, b, tol):
                found = (a, b)
                break
        if found:
            break
    a, b = found
    ctx_ok = _depends_only_on(O, codes, L, a, b, a - 1, b + 1, tol)
    return SupportReport(label, sector.to_json(), found, found == (1, L), ctx_ok, tol)


# -- Rydberg <-> anyon dictionary -----------------------------------------------------

# Coefficients of the local expression for the pair vacuum projector:
# P = alpha flip_i + beta0 + betaL n_{i-1} + betaR n_{i+1} + betaLR n_{i-1} n_{i+1} + betaM n_i
_PAIR_COEFFS = {
    "flip": C.PHI_INV_3_2,
    "one": C.PHI_INV,
    "n_left": -C.PHI_INV,
    "n_right": -C.PHI_INV,
    "n_left_n_right": C.PHI,
    "n_mid": (1.0 - C.PHI) * C.PHI_INV_2,
}

QUOTED_SIGMA_X_COEFFICIENTS = {
    "pair_projector": C.PHI_3_2,
    "z_left": C.PHI_SQRT * (1.0 - C.PHI) / 4.0,
    "z_right": C.PHI_SQRT * (1.0 - C.PHI) / 4.0,
    "z_left_z_right": -C.PHI_5_2 / 4.0,
    "z_mid": -(1.0 - C.PHI) / (2.0 * C.PHI_SQRT),
}


def sigma_x_coefficients() -> dict:
    """Solve the pair-projector expression for ``flip_i`` in terms of ``Z`` operators.

    Substituting ``n = (1 + Z)/2`` gives ``flip_i = c_P P + c_L Z_{i-1} +
    c_R Z_{i+1} + c_LR Z_{i-1} Z_{i+1} + c_M Z_i + c_0``; the additive
    constant ``c_0`` is returned alongside the others.
    """
    k = _PAIR_COEFFS
    inv = 1.0 / k["flip"]
    return {
        "pair_projector": inv,
        "z_left": -(k["n_left"] / 2.0 + k["n_left_n_right"] / 4.0) * inv,
        "z_right": -(k["n_right"] / 2.0 + k["n_left_n_right"] / 4.0) * inv,
        "z_left_z_right": -(k["n_left_n_right"] / 4.0) * inv,
        "z_mid": -(k["n_mid"] / 2.0) * inv,
        "constant": -(
            k["one"] + k["n_left"] / 2.0 + k["n_right"] / 2.0 + k["n_left_n_right"] / 4.0 + k["n_mid"] / 2.0
        )
        * inv,
    }


@dataclass
class DictionaryReport:
    sector: dict
    site: int
    kind: str
    coefficients: dict
    residual: float
    tol: float
    quoted: dict = field(default_factory=dict)
    relative_errors: dict = field(default_factory=dict)
    fitted: dict | None = None
    symmetry: SymmetryReport | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["symmetry"] = None if self.symmetry is None else self.symmetry.to_json()
        return out


def dictionary_report(sector: Sector, i: int, kind: str = "SigmaX", tol: float = 1e-9) -> DictionaryReport:
    """Express ``n_i`` (``SigmaZ``) or ``flip_i`` (``SigmaX``) in anyonic operators.

    The operator identity is rebuilt from the coefficients and compared with
    the Rydberg operator; a residual above ``tol`` raises
    :class:`~blockade_anyon.errors.DictionaryError`.
    """
    if int(i) != i or not 1 <= i <= sector.n_sites:
        raise ArgumentError(f"dictionary needs an interior site 1..{sector.n_sites}, got {i!r}")
    key = kind.lower().replace("_", "")
    if key == "sigmaz":
        target = op_number(sector, i)
        coeffs = {"identity": 0.5, "z_mid": 0.5}
        rebuilt = identity(sector) * 0.5 + op_zhat(sector, i) * 0.5
        residual = frobenius_norm(target.matrix - rebuilt.matrix)
        report = DictionaryReport(sector.to_json(), int(i), "SigmaZ", coeffs, residual, tol)
    elif key == "sigmax":
        target = op_flip(sector, i)
        coeffs = sigma_x_coefficients()
        zl, zm, zr = op_zhat(sector, i - 1), op_zhat(sector, i), op_zhat(sector, i + 1)
        terms = {
            "pair_projector": pair_vacuum_projector(sector, i),
            "z_left": zl,
            "z_right": zr,
            "z_left_z_right": multiply(zl, zr),
            "z_mid": zm,
            "constant": identity(sector),
        }
        rebuilt = sum((terms[name].matrix * coeffs[name] for name in terms), start=0 * target.matrix)
        residual = frobenius_norm(target.matrix - rebuilt)
        rel = {
            name: abs(coeffs[name] - q) / abs(q) for name, q in QUOTED_SIGMA_X_COEFFICIENTS.items()
        }
        report = DictionaryReport(
            sector.to_json(), int(i), "SigmaX", coeffs, residual, tol,
            quoted=dict(QUOTED_SIGMA_X_COEFFICIENTS), relative_errors=rel,
            fitted=_fit_terms(target, terms),
        )
    else:
        raise ArgumentError(f"kind must be SigmaZ or SigmaX, got {kind!r}")
    if report.residual > tol:
        raise DictionaryError(f"{report.kind} identity fails at site {i} in {sector!r}", report.residual)
    report.symmetry = is_topologically_symmetric(target.relabel(target.label))
    return report


def _fit_terms(target: SparseOperator, terms: dict):
    """Least-squares coefficients of ``target`` over ``terms`` when they are independent."""
    names = list(terms)
    A = np.stack([terms[n].to_dense().ravel() for n in names], axis=1)
    if np.linalg.matrix_rank(A, tol=1e-9) < len(names):
        return None
    x, *_ = np.linalg.lstsq(A, target.to_dense().ravel(), rcond=None)
    return {n: float(v) for n, v in zip(names, x)}
