"""Constrained Hilbert spaces of the blockaded / Fibonacci chain.

A chain of ``N`` anyons has interior bonds ``1 .. N-1``; bond ``i`` carries the
Rydberg occupation ``n_i`` (``n_i = 1`` <-> fusion label ``Z_i = 1``).  The
two boundary legs ``0`` and ``N`` are fixed per sector and are not state bits.

Basis states are stored as integers with ``n_1`` as the most significant bit,
and every sector lists its states in ascending integer order.  Ranking and
unranking use Fibonacci (Zeckendorf-style) counting and are vectorized over
numpy arrays, so sectors with millions of states remain cheap.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, DomainError

__all__ = [
    "Boundary",
    "Sector",
    "fib",
    "sector_dimension",
    "enumerate_sector",
    "index_of",
    "state_at",
    "parse_sector",
    "SECTOR_CODES",
]


class Boundary(enum.Enum):
    """Boundary fusion label of a chain end."""

    ONE = "1"
    TAU = "t"

    @property
    def offset(self) -> int:
        """Offset ``R`` entering the dimension formula."""
        return 0 if self is Boundary.ONE else 1

    @property
    def occupation(self) -> int:
        """Rydberg occupation of the boundary site (``One`` is occupied)."""
        return 1 if self is Boundary.ONE else 0

    @classmethod
    def parse(cls, value) -> "Boundary":
        if isinstance(value, Boundary):
            return value
        key = str(value).strip().lower()
        if key in ("1", "one", "vacuum"):
            return cls.ONE
        if key in ("t", "tau"):
            return cls.TAU
        raise ArgumentError(f"unknown boundary label {value!r}")


def fib(k: int) -> int:
    """Fibonacci number with ``F_1 = F_2 = 1``."""
    if int(k) != k or k < 1:
        raise ArgumentError(f"fib needs a positive integer, got {k!r}")
    a, b = 0, 1
    for _ in range(int(k)):
        a, b = b, a + b
    return a


def _fib0(k: int) -> int:
    # F_0 = 0 allowed; used by internal counters.
    return 0 if k == 0 else fib(k)


def sector_dimension(N: int, z0, zN) -> int:
    """Dimension ``F_{N-1+R(z0)+R(zN)}`` of a boundary-condition sector."""
    if int(N) != N or N < 2:
        raise ArgumentError(f"a chain needs N >= 2 anyons, got {N!r}")
    z0, zN = Boundary.parse(z0), Boundary.parse(zN)
    return fib(int(N) - 1 + z0.offset + zN.offset)


def _count_tail(r: int, last_forced_zero: bool) -> int:
    """Number of blockade-legal strings of length ``r`` preceded by a 0."""
    if r == 0:
        return 1
    return fib(r + 1) if last_forced_zero else fib(r + 2)


def _legal_strings(L: int) -> np.ndarray:
    """All blockade-legal integers of ``L`` bits, ascending."""
    prev2 = np.zeros(1, dtype=np.int64)  # length 0
    if L == 0:
        return prev2
    prev1 = np.array([0, 1], dtype=np.int64)  # length 1
    for length in range(2, L + 1):
        nxt = np.concatenate([prev1, prev2 + (np.int64(1) << (length - 1))])
        prev2, prev1 = prev1, nxt
    return prev1


@dataclass(frozen=True, eq=False)
class Sector:
    """Enumerated basis of one boundary-condition sector ``(N, z0, zN)``.

    Instances are immutable; build them with :func:`enumerate_sector`, which
    caches one instance per parameter set.
    """

    N: int
    z0: Boundary
    zN: Boundary
    states: np.ndarray = field(repr=False)
    _thresholds: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(self.states.shape[0])

    @property
    def n_sites(self) -> int:
        """Number of interior Rydberg sites, ``N - 1``."""
        return self.N - 1

    @property
    def code(self) -> str:
        return self.z0.value + self.zN.value

    @property
    def key(self) -> tuple:
        return (self.N, self.z0, self.zN)

    def __eq__(self, other):
        return isinstance(other, Sector) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Sector(N={self.N}, z0={self.z0.name}, zN={self.zN.name}, dim={self.dim})"

    # -- site access -------------------------------------------------------

    def site_values(self, i: int, states=None) -> np.ndarray:
        """Occupations ``n_i`` for each state (boundary sites give constants)."""
        if int(i) != i or not 0 <= i <= self.N:
            raise ArgumentError(f"site {i!r} outside 0..{self.N}")
        codes = self.states if states is None else np.asarray(states, dtype=np.int64)
        if i == 0:
            return np.full(codes.shape, self.z0.occupation, dtype=np.int64)
        if i == self.N:
            return np.full(codes.shape, self.zN.occupation, dtype=np.int64)
        return (codes >> (self.n_sites - i)) & 1

    def site_mask(self, i: int) -> int:
        """Integer mask of interior site ``i``."""
        if not 1 <= i <= self.n_sites:
            raise ArgumentError(f"interior site {i!r} outside 1..{self.n_sites}")
        return 1 << (self.n_sites - i)

    # -- legality ----------------------------------------------------------

    def legal_mask(self, codes) -> np.ndarray:
        """Boolean array: which integer codes are members of this sector."""
        codes = np.asarray(codes, dtype=np.int64)
        L = self.n_sites
        ok = (codes >= 0) & (codes < (np.int64(1) << L))
        ok &= (codes & (codes >> 1)) == 0
        if self.z0 is Boundary.ONE:
            ok &= ((codes >> (L - 1)) & 1) == 0
        if self.zN is Boundary.ONE:
            ok &= (codes & 1) == 0
        return ok

    # -- ranking -----------------------------------------------------------

    def index_array(self, codes, check: bool = True) -> np.ndarray:
        """Canonical indices of many states at once, in ``O(N)`` vector passes."""
        codes = np.asarray(codes, dtype=np.int64)
        if check and not np.all(self.legal_mask(codes)):
            bad = codes[~self.legal_mask(codes)]
            raise DomainError(f"state(s) not in {self!r}: {bad[:5].tolist()}")
        L = self.n_sites
        idx = np.zeros(codes.shape, dtype=np.int64)
        for j in range(L):
            bit = (codes >> (L - 1 - j)) & 1
            idx += bit * self._thresholds[j]
        return idx

    def state_array(self, ks) -> np.ndarray:
        """Integer codes of the states at canonical indices ``ks``."""
        ks = np.asarray(ks, dtype=np.int64)
        if np.any((ks < 0) | (ks >= self.dim)):
            raise ArgumentError(f"index out of range 0..{self.dim - 1}")
        L = self.n_sites
        rem = ks.copy()
        codes = np.zeros(ks.shape, dtype=np.int64)
        prev = np.zeros(ks.shape, dtype=np.int64)
        for j in range(L):
            allowed = prev == 0
            if j == 0 and self.z0 is Boundary.ONE:
                allowed = np.zeros_like(allowed)
            if j == L - 1 and self.zN is Boundary.ONE:
                allowed = np.zeros_like(allowed)
            take = allowed & (rem >= self._thresholds[j])
            rem = rem - np.where(take, self._thresholds[j], 0)
            codes |= take.astype(np.int64) << (L - 1 - j)
            prev = take.astype(np.int64)
        return codes

    def bitstring(self, code: int) -> str:
        """``n_1 ... n_{N-1}`` as a string of ``0``/``1``."""
        return format(int(code), f"0{self.n_sites}b")

    def to_json(self) -> dict:
        return {"N": self.N, "z0": self.z0.value, "zN": self.zN.value, "dim": self.dim}

    @classmethod
    def from_json(cls, data: dict) -> "Sector":
        sector = enumerate_sector(data["N"], data["z0"], data["zN"])
        if "dim" in data and int(data["dim"]) != sector.dim:
            raise DomainError(f"stored dim {data['dim']} disagrees with {sector!r}")
        return sector


@functools.lru_cache(maxsize=128)
def _build_sector(N: int, z0: Boundary, zN: Boundary) -> Sector:
    L = N - 1
    codes = _legal_strings(L)
    if z0 is Boundary.ONE:
        codes = codes[(codes >> (L - 1)) & 1 == 0]
    if zN is Boundary.ONE:
        codes = codes[codes & 1 == 0]
    codes = np.ascontiguousarray(codes)
    codes.setflags(write=False)
    last_zero = zN is Boundary.ONE
    thresholds = np.array([_count_tail(L - j - 1, last_zero) for j in range(L)], dtype=np.int64)
    thresholds.setflags(write=False)
    sector = Sector(N=N, z0=z0, zN=zN, states=codes, _thresholds=thresholds)
    expected = sector_dimension(N, z0, zN)
    if sector.dim != expected:  # pragma: no cover - guarded by tests
        raise AssertionError(f"enumerated {sector.dim} states, formula gives {expected}")
    return sector


def enumerate_sector(N: int, z0, zN) -> Sector:
    """Enumerate the blockade-legal basis of sector ``(N, z0, zN)``."""
    if int(N) != N or N < 2:
        raise ArgumentError(f"a chain needs N >= 2 anyons, got {N!r}")
    return _build_sector(int(N), Boundary.parse(z0), Boundary.parse(zN))


SECTOR_CODES = ("11", "1t", "t1", "tt")


def parse_sector(N: int, code: str) -> Sector:
    """Build a sector from a two-letter code such as ``"tt"`` or ``"1t"``."""
    code = str(code).strip().lower()
    if code not in SECTOR_CODES:
        raise ArgumentError(f"sector code must be one of {SECTOR_CODES}, got {code!r}")
    return enumerate_sector(N, code[0], code[1])


def _as_code(sector: Sector, state) -> int:
    if isinstance(state, (int, np.integer)):
        return int(state)
    if isinstance(state, str):
        bits = state.strip()
    else:
        bits = "".join(str(int(b)) for b in state)
    if len(bits) != sector.n_sites or set(bits) - {"0", "1"}:
        raise DomainError(f"{state!r} is not a bitstring of length {sector.n_sites}")
    return int(bits, 2)


def index_of(sector: Sector, state) -> int:
    """Rank of ``state`` (int code, bitstring or bit sequence) in ``sector``."""
    code = _as_code(sector, state)
    return int(sector.index_array(np.array([code]))[0])


def state_at(sector: Sector, k: int) -> str:
    """Bitstring ``n_1 ... n_{N-1}`` of the ``k``-th basis state."""
    if int(k) != k or not 0 <= k < sector.dim:
        raise ArgumentError(f"index {k!r} outside 0..{sector.dim - 1}")
    return sector.bitstring(sector.state_array(np.array([int(k)]))[0])
