"""Fusion-channel projectors of the Fibonacci chain in the Rydberg basis.

* :func:`pair_vacuum_projector` evaluates the local Rydberg expression for the
  vacuum channel of anyons ``(i, i+1)``.
* :func:`total_charge_projector` is the minimal central projector of the
  commutant of all pair projectors (the algebra they generate has exactly two
  blocks in the ``(tau, tau)`` sector: total charge 1 and total charge tau).
* :func:`window_charge_projector` does the same for a contiguous window of
  anyons, using the centre of the algebra generated by the window's pair
  projectors.  Channels are identified by their expected ranks.
"""

from __future__ import annotations

import enum
import functools
import math

import numpy as np

from . import constants as C
from .basis import Boundary, Sector, fib
from .commutant import algebra_center_projectors, commutant_basis, minimal_projectors
from .errors import ArgumentError, ConstructionError, StructureError
from .operators import (
    SparseOperator,
    diagonal,
    frobenius_norm,
    identity,
    op_flip,
    op_number,
    zero,
)

__all__ = [
    "ChargeChannel",
    "fuse",
    "pair_vacuum_projector",
    "charge_resolved_path_count",
    "complement_multiplicity",
    "window_ranks",
    "total_charge_projector",
    "otest_operator",
    "window_charge_projector",
    "prefix_vacuum_projector",
    "suffix_vacuum_projector",
]


class ChargeChannel(enum.Enum):
    VACUUM = "1"
    TAU = "t"

    @classmethod
    def parse(cls, value) -> "ChargeChannel":
        if isinstance(value, ChargeChannel):
            return value
        key = str(value).strip().lower()
        if key in ("1", "one", "vacuum", "vac"):
            return cls.VACUUM
        if key in ("t", "tau"):
            return cls.TAU
        raise ArgumentError(f"unknown charge channel {value!r}")


# Labels are "1" or "t" throughout the counting helpers.
def fuse(a: str, b: str) -> tuple:
    """Fusion outcomes of two Fibonacci labels."""
    if a == "1":
        return (b,)
    if b == "1":
        return (a,)
    return ("1", "t")


def _build_tol(sector: Sector) -> float:
    return 1e-10 * math.sqrt(max(1, sector.dim))


@functools.lru_cache(maxsize=1024)
def pair_vacuum_projector(sector: Sector, i: int) -> SparseOperator:
    """Projector onto the vacuum channel of anyons ``i`` and ``i+1``.

    Built from the local Rydberg expression on sites ``i-1, i, i+1``::

        flip_i / phi^(3/2) - (n_{i-1} + n_{i+1} - 1) / phi
            + phi n_{i-1} n_{i+1} + (1 - phi) / phi^2 n_i

    and checked to be an orthogonal projector before it is returned.
    """
    if int(i) != i or not 1 <= i <= sector.N - 1:
        raise ArgumentError(f"pair index must be in 1..{sector.N - 1}, got {i!r}")
    left = sector.site_values(i - 1)
    mid = sector.site_values(i)
    right = sector.site_values(i + 1)
    diag = -C.PHI_INV * (left + right - 1) + C.PHI * left * right + (1.0 - C.PHI) * C.PHI_INV_2 * mid
    flip = op_flip(sector, i)
    m = flip.matrix * C.PHI_INV_3_2 + diagonal(sector, diag).matrix
    P = SparseOperator.from_matrix(sector, m, None, f"pairproj:{i}")
    tol = _build_tol(sector)
    herm = frobenius_norm(P.matrix - P.matrix.T)
    if herm > tol:
        raise ConstructionError(f"pair projector {i} is not symmetric", herm)
    idem = frobenius_norm(P.matrix @ P.matrix - P.matrix)
    if idem > tol:
        raise ConstructionError(f"pair projector {i} is not idempotent", idem)
    return P


def charge_resolved_path_count(m: int) -> tuple:
    """Fusion paths of ``m`` tau anyons ending in charge 1 and in charge tau."""
    if int(m) != m or m < 1:
        raise ArgumentError(f"need m >= 1 anyons, got {m!r}")
    return (0 if m == 1 else fib(m - 1), fib(m))


def _paths_between(start: str, n_anyons: int) -> dict:
    """Counts of label sequences after fusing ``n_anyons`` taus onto ``start``."""
    counts = {start: 1}
    for _ in range(n_anyons):
        nxt = {}
        for label, cnt in counts.items():
            for out in fuse(label, "t"):
                nxt[out] = nxt.get(out, 0) + cnt
        counts = nxt
    return counts


def complement_multiplicity(N: int, z0, zN, a: int, b: int, channel) -> int:
    """Dimension of the chain with anyons ``a..b`` contracted to one leg of ``channel``."""
    z0, zN = Boundary.parse(z0).value, Boundary.parse(zN).value
    c = ChargeChannel.parse(channel).value
    total = 0
    for left, n_left in _paths_between(z0, a - 1).items():
        for mid in fuse(left, c):
            total += n_left * _paths_between(mid, N - b).get(zN, 0)
    return total


def window_ranks(sector: Sector, a: int, b: int) -> dict:
    """Expected ranks ``d_c(m) * M_c`` of the two window charge projectors."""
    m = b - a + 1
    d_vac, d_tau = charge_resolved_path_count(m)
    return {
        ChargeChannel.VACUUM: d_vac
        * complement_multiplicity(sector.N, sector.z0, sector.zN, a, b, ChargeChannel.VACUUM),
        ChargeChannel.TAU: d_tau
        * complement_multiplicity(sector.N, sector.z0, sector.zN, a, b, ChargeChannel.TAU),
    }


def _net_charge(sector: Sector):
    """Net topological charge ``Z_0 x Z_N`` when unique, else ``None``."""
    if sector.z0 is Boundary.TAU and sector.zN is Boundary.TAU:
        return None
    if sector.z0 is sector.zN:
        return ChargeChannel.VACUUM
    return ChargeChannel.TAU


def _from_dense_projector(sector: Sector, proj: np.ndarray, label: str) -> SparseOperator:
    proj = (proj + proj.T) / 2.0
    proj[np.abs(proj) < 1e-13] = 0.0
    return SparseOperator.from_matrix(sector, proj, True, label)


def _check_projector(P: SparseOperator, tol: float, what: str) -> None:
    idem = frobenius_norm(P.matrix @ P.matrix - P.matrix)
    if idem > tol:
        raise ConstructionError(f"{what} is not idempotent", idem)


@functools.lru_cache(maxsize=64)
def total_charge_projector(sector: Sector) -> SparseOperator:
    """Projector onto total charge 1 of anyons ``1..N``.

    In the three fixed-charge sectors it is the identity (net charge 1) or
    zero (net charge tau).  In ``(tau, tau)`` the commutant of all pair
    projectors must be two dimensional; the minimal projector of rank
    ``F_{N-1}`` is returned.
    """
    fixed = _net_charge(sector)
    if fixed is ChargeChannel.VACUUM:
        return identity(sector).relabel("charge")
    if fixed is ChargeChannel.TAU:
        return zero(sector).relabel("charge")

    N = sector.N
    gens = [pair_vacuum_projector(sector, i) for i in range(1, N)]
    basis = commutant_basis(gens)
    if len(basis) != 2:
        raise StructureError(f"commutant of the pair projectors has dimension {len(basis)}, expected 2")
    projs = minimal_projectors(basis)
    if len(projs) != 2:
        raise StructureError(f"commutant splits into {len(projs)} minimal projectors, expected 2")
    target = fib(N - 1)
    ranks = [int(round(np.trace(p))) for p in projs]
    matches = [p for p, r in zip(projs, ranks) if r == target]
    if len(matches) == 2:
        # equal ranks only at N = 2, where the single pair projector is the vacuum block
        pair = gens[0].to_dense()
        matches = [p for p in projs if np.linalg.norm(p @ pair - pair) < 1e-8]
    if len(matches) != 1:
        raise StructureError(f"no unique central projector of rank {target}; ranks {ranks}")
    P = _from_dense_projector(sector, matches[0], "charge")
    _check_projector(P, _build_tol(sector), "total charge projector")
    return P


def otest_operator(sector: Sector) -> SparseOperator:
    """Braid-test operator ``(1 + phi^-2) P - phi^-2``."""
    P = total_charge_projector(sector)
    op = P * (1.0 + C.PHI_INV_2) - identity(sector) * C.PHI_INV_2
    return op.relabel("otest")


@functools.lru_cache(maxsize=1024)
def _window_projector(sector: Sector, a: int, b: int, channel: ChargeChannel) -> SparseOperator:
    label = f"window:{a}:{b}:{channel.value}"
    m = b - a + 1
    if m == 1:
        return (identity(sector) if channel is ChargeChannel.TAU else zero(sector)).relabel(label)

    ranks = window_ranks(sector, a, b)
    live = [c for c in ChargeChannel if ranks[c] > 0]
    if len(live) == 1:
        whole = identity(sector) if channel is live[0] else zero(sector)
        return whole.relabel(label)

    gens = [pair_vacuum_projector(sector, i) for i in range(a, b)]
    projs = algebra_center_projectors(gens)
    if len(projs) != 2:
        raise StructureError(f"centre of window [{a},{b}] has dimension {len(projs)}, expected 2")
    got = [int(round(np.trace(p))) for p in projs]
    want = ranks[channel]
    if ranks[ChargeChannel.VACUUM] != ranks[ChargeChannel.TAU]:
        chosen = [p for p, r in zip(projs, got) if r == want]
    elif m == 2:
        # ranks tie: the vacuum block contains the image of the window's pair projector
        pair = gens[0].to_dense()
        contains = [np.linalg.norm(p @ pair - pair) < 1e-8 for p in projs]
        chosen = [p for p, c in zip(projs, contains) if c == (channel is ChargeChannel.VACUUM)]
    else:
        raise StructureError(f"window [{a},{b}] channel ranks tie at {want}; no fallback for m={m}")
    if len(chosen) != 1:
        raise StructureError(f"window [{a},{b}]: central ranks {got} do not match expected {ranks[channel]}")
    P = _from_dense_projector(sector, chosen[0], label)
    _check_projector(P, _build_tol(sector), label)
    return P


def window_charge_projector(sector: Sector, a: int, b: int, channel="1") -> SparseOperator:
    """Projector onto fusion channel ``channel`` of the contiguous anyons ``a..b``."""
    if int(a) != a or int(b) != b or not 1 <= a <= b <= sector.N:
        raise ArgumentError(f"window needs 1 <= a <= b <= {sector.N}, got [{a}, {b}]")
    return _window_projector(sector, int(a), int(b), ChargeChannel.parse(channel))


def prefix_vacuum_projector(sector: Sector, i: int) -> SparseOperator:
    """Vacuum projector of anyons ``1..i``.

    With ``z0 = 1`` this is ``n_i`` exactly; otherwise it is the window
    projector of ``[1, i]`` (the total charge projector when ``i = N``).
    """
    if int(i) != i or not 1 <= i <= sector.N:
        raise ArgumentError(f"prefix length must be in 1..{sector.N}, got {i!r}")
    if sector.z0 is Boundary.ONE:
        return op_number(sector, i).relabel(f"prefix:{i}")
    if i == sector.N:
        return total_charge_projector(sector)
    return window_charge_projector(sector, 1, i, ChargeChannel.VACUUM)


def suffix_vacuum_projector(sector: Sector, i: int) -> SparseOperator:
    """Vacuum projector of anyons ``i+1..N``; equals ``n_i`` when ``zN = 1``."""
    if int(i) != i or not 0 <= i <= sector.N - 1:
        raise ArgumentError(f"suffix start must be in 0..{sector.N - 1}, got {i!r}")
    if sector.zN is Boundary.ONE:
        return op_number(sector, i).relabel(f"suffix:{i}")
    if i == 0:
        return total_charge_projector(sector)
    return window_charge_projector(sector, i + 1, sector.N, ChargeChannel.VACUUM)
