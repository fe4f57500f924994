import numpy as np
import pytest

from blockade_anyon import enumerate_sector, pair_vacuum_projector
from blockade_anyon.commutant import algebra_center_projectors, commutant_basis, minimal_projectors
from oracles import brute_commutant_dim


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
def test_commutant_dimension_matches_kron_system(N):
    s = enumerate_sector(N, "t", "t")
    gens = [pair_vacuum_projector(s, i) for i in range(1, N)]
    basis = commutant_basis(gens)
    assert len(basis) == brute_commutant_dim([g.to_dense() for g in gens]) == 2
    for X in basis:
        for g in gens:
            G = g.to_dense()
            assert np.linalg.norm(X @ G - G @ X) < 1e-10


def test_basis_is_orthonormal():
    s = enumerate_sector(7, "t", "t")
    basis = commutant_basis([pair_vacuum_projector(s, i) for i in range(1, 7)])
    gram = np.array([[np.sum(a * b) for b in basis] for a in basis])
    assert np.allclose(gram, np.eye(len(basis)), atol=1e-10)


def test_minimal_projectors_resolve_identity():
    s = enumerate_sector(6, "t", "t")
    projs = minimal_projectors(commutant_basis([pair_vacuum_projector(s, i) for i in range(1, 6)]))
    assert len(projs) == 2
    assert np.allclose(sum(projs), np.eye(s.dim), atol=1e-10)
    for p in projs:
        assert np.allclose(p @ p, p, atol=1e-10)


def test_single_generator_commutant():
    # commutant of one rank-r projector on d dims has dimension r^2 + (d-r)^2
    s = enumerate_sector(5, "t", "t")
    P = pair_vacuum_projector(s, 2)
    r = int(round(np.trace(P.to_dense())))
    assert len(commutant_basis([P])) == r * r + (s.dim - r) ** 2


def test_center_of_window_algebra():
    s = enumerate_sector(6, "t", "t")
    projs = algebra_center_projectors([pair_vacuum_projector(s, i) for i in (2, 3)])
    assert len(projs) == 2
    assert np.allclose(sum(projs), np.eye(s.dim), atol=1e-10)
