"""Charge-leakage experiment for a topological-charge q-bit.

The q-bit lives in a ``(tau, tau)`` segment: total charge 1 and tau are its
two states.  A golden-chain Hamiltonian conserves that charge; adding static
random fields on the Rydberg operators ``flip_i`` and ``n_i`` does not.
This module evolves a charge eigenstate under such a noisy Hamiltonian and
records ``<P_charge>(t)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.sparse.linalg as spla

from .basis import Boundary, Sector, enumerate_sector
from .errors import ArgumentError, DomainError
from .hamiltonians import golden_hamiltonian
from .operators import DENSE_LIMIT, SparseOperator, frobenius_norm, op_flip, op_number
from .projectors import ChargeChannel, total_charge_projector

__all__ = [
    "NoiseConfig",
    "LeakageTrace",
    "DEFAULT_TIMES",
    "noise_fields",
    "noisy_hamiltonian",
    "initial_qubit_state",
    "evolve_state",
    "leakage_experiment",
    "leakage_scaling",
]

DEFAULT_TIMES = np.linspace(0.0, 100.0, 201)

_CHANNEL_X = 0
_CHANNEL_Z = 1


@dataclass(frozen=True)
class NoiseConfig:
    """Static on-site disorder: ``a_i ~ U[-eps_x, eps_x]``, ``b_i ~ U[-eps_z, eps_z]``."""

    eps_x: float = 0.0
    eps_z: float = 0.0
    master_seed: int = 0
    distribution: str = "uniform"

    def __post_init__(self):
        if self.eps_x < 0 or self.eps_z < 0:
            raise ArgumentError("noise amplitudes must be non-negative")
        if self.distribution != "uniform":
            raise ArgumentError(f"unsupported noise distribution {self.distribution!r}")


def _unit_draw(master_seed: int, site: int, channel: int) -> float:
    # one generator per (seed, site, channel): draws do not depend on evaluation order
    seq = np.random.SeedSequence([int(master_seed) & 0xFFFFFFFFFFFFFFFF, site, channel])
    return float(np.random.default_rng(seq).uniform(-1.0, 1.0))


def noise_fields(noise: NoiseConfig, n_sites: int):
    """Per-site field strengths ``(a, b)`` for sites ``1..n_sites``."""
    sites = range(1, n_sites + 1)
    a = np.array([noise.eps_x * _unit_draw(noise.master_seed, i, _CHANNEL_X) for i in sites])
    b = np.array([noise.eps_z * _unit_draw(noise.master_seed, i, _CHANNEL_Z) for i in sites])
    return a, b


def noisy_hamiltonian(sector: Sector, couplings, noise: NoiseConfig) -> SparseOperator:
    """Golden chain plus ``sum_i a_i flip_i + sum_i b_i n_i``."""
    H = golden_hamiltonian(sector, couplings)
    a, b = noise_fields(noise, sector.n_sites)
    m = H.matrix
    for i in range(1, sector.n_sites + 1):
        if a[i - 1] != 0.0:
            m = m + a[i - 1] * op_flip(sector, i).matrix
        if b[i - 1] != 0.0:
            m = m + b[i - 1] * op_number(sector, i).matrix
    return SparseOperator.from_matrix(sector, m, True, "noisy-golden")


def initial_qubit_state(sector: Sector, which="1", style="eigenbasis") -> np.ndarray:
    """Normalized state of definite total charge.

    ``style="eigenbasis"`` takes the first image vector of the charge
    projector from a symmetric eigendecomposition (sign fixed so the
    largest component is positive).  An integer ``style=k`` projects the
    ``k``-th basis state instead.
    """
    if not (sector.z0 is Boundary.TAU and sector.zN is Boundary.TAU):
        raise DomainError("the q-bit needs a (tau, tau) segment")
    channel = ChargeChannel.parse(which)
    P = total_charge_projector(sector).to_dense()
    if channel is ChargeChannel.TAU:
        P = np.eye(sector.dim) - P
    if style == "eigenbasis":
        w, V = np.linalg.eigh(P)
        psi = V[:, np.flatnonzero(w > 0.5)[0]]
    else:
        k = int(style)
        if not 0 <= k < sector.dim:
            raise ArgumentError(f"basis index {k} outside 0..{sector.dim - 1}")
        psi = P[:, k].copy()
        norm = np.linalg.norm(psi)
        if norm < 1e-12:
            raise DomainError(f"basis state {k} has no weight in the {channel.name} channel")
        psi = psi / norm
    big = int(np.argmax(np.abs(psi)))
    return psi if psi[big] > 0 else -psi


def evolve_state(H: SparseOperator, psi0, times, dense_limit: int = DENSE_LIMIT) -> np.ndarray:
    """``exp(-i H t) psi0`` for each ``t``; rows of the returned array are states.

    Up to ``dense_limit`` the propagator is exact (one eigendecomposition);
    above it, :func:`scipy.sparse.linalg.expm_multiply` steps across the grid.
    """
    if frobenius_norm(H.matrix - H.matrix.T) > 1e-10:
        raise DomainError("evolve_state needs a Hermitian Hamiltonian")
    psi0 = np.asarray(psi0, dtype=np.complex128)
    times = np.asarray(times, dtype=np.float64)
    if H.dim <= dense_limit:
        w, U = np.linalg.eigh(H.to_dense())
        coeff = U.T @ psi0
        phases = np.exp(-1j * np.outer(times, w))
        return (phases * coeff) @ U.T
    if times.size and np.any(np.diff(times) < 0):
        raise ArgumentError("iterative propagation needs a non-decreasing time grid")
    if times.size == 0:
        return np.zeros((0, H.dim), dtype=np.complex128)
    out = np.empty((times.size, H.dim), dtype=np.complex128)
    A = -1j * H.matrix.astype(np.complex128)
    state, t_prev = psi0, 0.0
    for k, t in enumerate(times):
        if t != t_prev:
            state = spla.expm_multiply(A * (t - t_prev), state)
            t_prev = t
        out[k] = state
    return out


@dataclass
class LeakageTrace:
    """Time series of the total-charge expectation with provenance."""

    times: np.ndarray
    charge_expectation: np.ndarray
    norm_drift: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def deviation(self) -> np.ndarray:
        """``|<P>(t) - <P>(0)|``; equals ``1 - <P>(t)`` for a vacuum start."""
        return np.abs(self.charge_expectation - self.charge_expectation[0])

    @property
    def max_leakage(self) -> float:
        return float(self.deviation.max()) if self.times.size else 0.0

    @property
    def mean_leakage(self) -> float:
        return float(self.deviation.mean()) if self.times.size else 0.0

    def to_json(self) -> dict:
        return {
            "times": self.times.tolist(),
            "charge_expectation": self.charge_expectation.tolist(),
            "norm_drift": self.norm_drift.tolist(),
            "max_leakage": self.max_leakage,
            "mean_leakage": self.mean_leakage,
            "provenance": self.provenance,
        }

    def rows(self):
        return zip(self.times.tolist(), self.charge_expectation.tolist(), self.norm_drift.tolist())


def leakage_experiment(N: int, couplings, noise: NoiseConfig, times=None, which="1", style="eigenbasis"):
    """Evolve a charge eigenstate under the noisy chain and record ``<P_charge>(t)``."""
    sector = enumerate_sector(N, "t", "t")
    times = DEFAULT_TIMES if times is None else np.asarray(times, dtype=np.float64)
    J = np.asarray(couplings, dtype=np.float64)
    H = noisy_hamiltonian(sector, J, noise)
    psi0 = initial_qubit_state(sector, which, style)
    states = evolve_state(H, psi0, times)
    P = total_charge_projector(sector).matrix
    charge = np.einsum("ti,ti->t", states.conj(), (P @ states.T).T).real
    norms = np.einsum("ti,ti->t", states.conj(), states).real
    a, b = noise_fields(noise, sector.n_sites)
    provenance = {
        "N": int(N),
        "sector": sector.to_json(),
        "couplings": J.tolist(),
        "noise": asdict(noise),
        "noise_draw": {"flip": a.tolist(), "number": b.tolist()},
        "initial_state": {"channel": ChargeChannel.parse(which).value, "style": str(style)},
        "propagator": "dense-eigh" if sector.dim <= DENSE_LIMIT else "expm_multiply",
    }
    return LeakageTrace(times.copy(), charge, np.abs(1.0 - norms), provenance)


def leakage_scaling(N: int, couplings, eps_values, master_seed: int = 42, channel: str = "z", times=None):
    """Fit ``log(mean leakage)`` against ``log(eps)`` for static noise of growing strength.

    Returns ``(exponent, means)``; ``channel`` picks which field carries the noise
    (``"z"`` for ``n_i``, ``"x"`` for ``flip_i``, ``"xz"`` for both).
    """
    if channel not in ("x", "z", "xz"):
        raise ArgumentError(f"channel must be 'x', 'z' or 'xz', got {channel!r}")
    eps_values = np.asarray(eps_values, dtype=np.float64)
    if eps_values.size < 2 or np.any(eps_values <= 0):
        raise ArgumentError("need at least two positive noise amplitudes")
    means = []
    for eps in eps_values:
        noise = NoiseConfig(
            eps_x=eps if "x" in channel else 0.0,
            eps_z=eps if "z" in channel else 0.0,
            master_seed=master_seed,
        )
        means.append(leakage_experiment(N, couplings, noise, times).mean_leakage)
    means = np.array(means)
    if np.any(means <= 1e-15):
        raise DomainError("leakage vanished for some eps; the exponent is undefined")
    slope = np.polyfit(np.log(eps_values), np.log(means), 1)[0]
    return float(slope), means
