"""Numerical commutants, algebra centres and their minimal projectors.

The commutant ``{X : [X, G_k] = 0 for all k}`` is the null space of the stacked
commutator maps ``X -> [X, G_k]``.  Solving that system over all ``d**2``
matrix entries is wasteful: every commutant element also commutes with a
random Hermitian combination ``H`` of the generators, so it is block diagonal
in the eigenbasis of ``H`` (blocks = degenerate clusters of ``H``).  The
unknowns are therefore restricted to those blocks before the null space is
taken.  The random combination uses a fixed seed, so results are
reproducible run to run.
"""

from __future__ import annotations

import numpy as np

from .errors import CapacityError, StructureError
from .operators import DENSE_LIMIT, SparseOperator

__all__ = [
    "MAX_UNKNOWNS",
    "commutant_basis",
    "algebra_center_projectors",
    "minimal_projectors",
    "cluster_eigenvalues",
]

MAX_UNKNOWNS = 4096
NULL_RTOL = 1e-12  # on Gram eigenvalues, i.e. 1e-6 on singular values
_REDUCTION_SEED = 20190613


def _dense(g) -> np.ndarray:
    if isinstance(g, SparseOperator):
        return g.to_dense()
    if hasattr(g, "toarray"):
        return g.toarray()
    return np.asarray(g, dtype=np.float64)


def _is_symmetric(a: np.ndarray) -> bool:
    return np.linalg.norm(a - a.T) <= 1e-12 * max(1.0, np.linalg.norm(a))


def cluster_eigenvalues(w: np.ndarray, rtol: float = 1e-8) -> list:
    """Split sorted eigenvalues into runs separated by gaps above ``rtol * scale``."""
    if w.size == 0:
        return []
    scale = max(1.0, float(np.max(np.abs(w))))
    cuts = np.flatnonzero(np.diff(w) > rtol * scale) + 1
    return [np.arange(lo, hi) for lo, hi in zip(np.r_[0, cuts], np.r_[cuts, w.size])]


def _reduction_frame(mats, rng):
    """Eigenframe of a random Hermitian combination of the symmetric generators."""
    d = mats[0].shape[0]
    herm = [g for g in mats if _is_symmetric(g)]
    if not herm:
        return np.eye(d), [np.arange(d)]
    coeffs = rng.uniform(0.5, 1.5, size=len(herm)) * rng.choice([-1.0, 1.0], size=len(herm))
    H = sum(c * g for c, g in zip(coeffs, herm))
    w, V = np.linalg.eigh(H)
    return V, cluster_eigenvalues(w)


def commutant_basis(generators, dense_limit: int = DENSE_LIMIT, max_unknowns: int = MAX_UNKNOWNS):
    """Frobenius-orthonormal basis of the commutant of ``generators``.

    Parameters
    ----------
    generators : sequence of SparseOperator or array
        Operators on a common space of dimension ``d``.
    dense_limit : int
        Largest ``d`` accepted.
    max_unknowns : int
        Largest number of block-diagonal unknowns after reduction.

    Returns
    -------
    list of ndarray
        ``d x d`` matrices, orthonormal under ``tr(A^T B)``.
    """
    mats = [_dense(g) for g in generators]
    if not mats:
        raise StructureError("commutant of an empty generator list is undefined here")
    d = mats[0].shape[0]
    if any(m.shape != (d, d) for m in mats):
        raise StructureError("generators act on different spaces")
    if d > dense_limit:
        raise CapacityError(f"commutant needs d <= {dense_limit}, got {d}")

    rng = np.random.default_rng(_REDUCTION_SEED)
    V, clusters = _reduction_frame(mats, rng)
    P = np.concatenate([np.repeat(c, c.size) for c in clusters])
    Q = np.concatenate([np.tile(c, c.size) for c in clusters])
    u = P.size
    if u > max_unknowns:
        raise CapacityError(f"commutant reduction left {u} unknowns (limit {max_unknowns})")

    # Gram matrix of the stacked maps x -> vec([X(x), G]) over unknowns E_pq.
    gram = np.zeros((u, u))
    same_p = P[:, None] == P[None, :]
    same_q = Q[:, None] == Q[None, :]
    for g in mats:
        gt = V.T @ g @ V
        ggt = gt @ gt.T
        gtg = gt.T @ gt
        gqq = gt[np.ix_(Q, Q)]
        gpp = gt[np.ix_(P, P)]
        cross = gqq * gpp
        gram += np.where(same_p, ggt[np.ix_(Q, Q)], 0.0)
        gram += np.where(same_q, gtg[np.ix_(P, P)], 0.0)
        gram -= cross + cross.T

    lam, vecs = np.linalg.eigh(gram)
    top = max(float(lam[-1]), 0.0)
    null = vecs[:, lam <= NULL_RTOL * max(top, 1.0)]

    basis = []
    for k in range(null.shape[1]):
        block = np.zeros((d, d))
        block[P, Q] = null[:, k]
        X = V @ block @ V.T
        X[np.abs(X) < 1e-15] = 0.0
        basis.append(X)
    return basis


def minimal_projectors(elements, rtol: float = 1e-8):
    """Minimal projectors of a commutative *-algebra spanned by ``elements``.

    A random symmetric combination has one eigenvalue per minimal projector;
    the returned projectors are its spectral projectors, ordered by rank and
    then by the index of their first nonzero diagonal entry.
    """
    mats = [_dense(e) for e in elements]
    rng = np.random.default_rng(_REDUCTION_SEED + 1)
    coeffs = rng.uniform(0.5, 1.5, size=len(mats))
    Y = sum(c * (m + m.T) / 2.0 for c, m in zip(coeffs, mats))
    w, V = np.linalg.eigh(Y)
    projs = []
    for c in cluster_eigenvalues(w, rtol):
        Vc = V[:, c]
        projs.append(Vc @ Vc.T)
    return _ordered(projs)


def _ordered(projs):
    def key(p):
        diag = np.diag(p)
        first = int(np.flatnonzero(diag > 1e-8)[0]) if np.any(diag > 1e-8) else p.shape[0]
        return (int(round(np.trace(p))), first)

    return sorted(projs, key=key)


def algebra_center_projectors(generators, dense_limit: int = DENSE_LIMIT):
    """Minimal central projectors of the unital algebra generated by ``generators``.

    The centre consists of commutant elements that are polynomials in the
    generators.  Take a random element ``X`` of the algebra and its eigen-
    clusters ``Pi_j``; a central element is ``sum_j x_j Pi_j`` with
    ``[sum_j x_j Pi_j, G] = 0`` for every generator, i.e. ``x_i = x_j``
    whenever some generator couples clusters ``i`` and ``j``.  The null space
    of the resulting cluster Laplacian is the centre.
    """
    mats = [_dense(g) for g in generators]
    if not mats:
        raise StructureError("need at least one generator")
    d = mats[0].shape[0]
    if d > dense_limit:
        raise CapacityError(f"centre computation needs d <= {dense_limit}, got {d}")
    rng = np.random.default_rng(_REDUCTION_SEED + 2)
    X = sum(rng.uniform(0.5, 1.5) * m for m in mats)
    for a, b in zip(mats, mats[1:]):
        X = X + rng.uniform(0.5, 1.5) * (a @ b + b @ a)
    X = (X + X.T) / 2.0
    w, V = np.linalg.eigh(X)
    clusters = cluster_eigenvalues(w)
    n = len(clusters)
    weight = np.zeros((n, n))
    for g in mats:
        gt = V.T @ g @ V
        sq = gt * gt
        for i, ci in enumerate(clusters):
            weight[i] += [sq[np.ix_(ci, cj)].sum() for cj in clusters]
    np.fill_diagonal(weight, 0.0)
    weight = weight + weight.T
    lap = np.diag(weight.sum(axis=1)) - weight
    lam, vecs = np.linalg.eigh(lap)
    top = max(float(lam[-1]), 1.0) if lam.size else 1.0
    null = vecs[:, lam <= 1e-10 * top]
    # null vectors are constant on connected components; group clusters by their rows
    labels = {}
    comp = []
    for row in np.round(null / max(1e-300, np.abs(null).max()), 6):
        comp.append(labels.setdefault(tuple(row), len(labels)))
    projs = []
    for label in range(len(labels)):
        cols = np.concatenate([clusters[i] for i in range(n) if comp[i] == label])
        Vc = V[:, cols]
        projs.append(Vc @ Vc.T)
    if len(projs) != null.shape[1]:
        raise StructureError(
            f"centre dimension {null.shape[1]} disagrees with {len(projs)} cluster components"
        )
    return _ordered(projs)
