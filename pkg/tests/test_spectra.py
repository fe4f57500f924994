import math

import numpy as np
import pytest

from blockade_anyon import (
    DomainError,
    SparseOperator,
    eigensystem,
    enumerate_sector,
    golden_hamiltonian,
    identity,
    op_zhat,
    pair_vacuum_projector,
    verify_direct_sum,
    verify_mirror,
    zero,
)
from blockade_anyon.spectra import compare_spectra

PHI = (1 + math.sqrt(5)) / 2


def test_trivial_spectra():
    s = enumerate_sector(4, "t", "t")
    assert np.array_equal(eigensystem(zero(s)).eigenvalues, np.zeros(5))
    assert np.allclose(eigensystem(identity(s)).eigenvalues, 1.0)
    w = eigensystem(pair_vacuum_projector(enumerate_sector(2, "t", "t"), 1) * -1.0).eigenvalues
    assert np.allclose(w, [-1.0, 0.0], atol=1e-12)


def test_non_hermitian_rejected():
    s = enumerate_sector(3, "t", "t")
    m = np.zeros((s.dim, s.dim))
    m[0, 1] = 1.0
    with pytest.raises(DomainError):
        eigensystem(SparseOperator.from_matrix(s, m))


def test_vectors_and_lanczos_mode():
    s = enumerate_sector(12, "t", "t")
    H = golden_hamiltonian(s, np.ones(11))
    full = eigensystem(H, want_vectors=True)
    assert len(full) == s.dim
    assert np.linalg.norm(H.to_dense() @ full.vectors - full.vectors * full.eigenvalues) < 1e-9
    part = eigensystem(H, k=4, dense_limit=50)
    assert not part.complete
    assert np.allclose(part.eigenvalues, full.eigenvalues[:4], atol=1e-9)
    assert np.all(part.residuals < 1e-8)


def test_multiplicities():
    s = enumerate_sector(5, "t", "t")
    w = eigensystem(identity(s) * 2.0).multiplicities()
    assert w == [(2.0, s.dim)]


def test_compare_spectra():
    assert compare_spectra([1, 2, 3], [3, 1, 2], 1e-12)[0]
    assert compare_spectra([1, 2], [1, 2, 3], 1.0)[1] == float("inf")
    ok, worst, idx = compare_spectra([0, 1], [0, 1.5], 0.1)
    assert not ok and worst == 0.5 and idx == 1


def test_direct_sum_examples():
    rep = verify_direct_sum(4, [1, 1, 1])
    assert rep.passed and rep.details["dims"] == {"tt": 5, "11": 2, "1t": 3}
    rep2 = verify_direct_sum(2, [1.0])
    assert rep2.passed and np.allclose(rep2.details["spectra"]["tt"], [-1, 0])
    assert verify_direct_sum(5, np.zeros(4)).passed


def test_mirror_examples():
    assert verify_mirror(4, [1, 1, 1]).passed
    rep = verify_mirror(3, [1.0, 2.0])
    assert rep.passed and rep.details["modes"]["mirrored"]["couplings_t1"] == [2.0, 1.0]
    assert verify_mirror(3, [0.0, 0.0], mode="identical").passed
    with pytest.raises(DomainError):
        verify_mirror(3, [1, 1], mode="sideways")


@pytest.mark.parametrize("N", range(2, 10))
def test_identities_random_couplings(N):
    J = np.random.default_rng(N).uniform(0.2, 2.0, N - 1)
    assert verify_direct_sum(N, J).passed
    rep = verify_mirror(N, J)
    assert rep.passed and rep.details["modes"]["identical"]["passed"]


def test_broken_hamiltonian_fails_direct_sum():
    def broken(sector, J):
        return golden_hamiltonian(sector, J) + op_zhat(sector, 2) * 0.3

    rep = verify_direct_sum(5, np.ones(4), builder=broken)
    assert not rep.passed and rep.worst_residual > 1e-3
