import numpy as np
import pytest

from blockade_anyon import (
    ArgumentError,
    dictionary_report,
    enumerate_sector,
    fib,
    golden_hamiltonian,
    is_topologically_symmetric,
    op_flip,
    op_number,
    op_zhat,
    pair_vacuum_projector,
    support_window,
    symmetric_operator_count,
    symmetrize,
    total_charge_projector,
    window_charge_projector,
)
from blockade_anyon.errors import CapacityError
from blockade_anyon.topo import (
    QUOTED_SIGMA_X_COEFFICIENTS,
    projector_span_dimension,
    symmetrization_superoperator,
)


def test_golden_chain_symmetric_and_rydberg_terms_not():
    s = enumerate_sector(6, "t", "t")
    H = golden_hamiltonian(s, np.random.default_rng(1).uniform(0, 2, 5))
    assert is_topologically_symmetric(H).is_symmetric
    for i in range(1, 6):
        assert not is_topologically_symmetric(op_zhat(s, i)).is_symmetric
        assert is_topologically_symmetric(op_flip(s, i)).commutator_norm > 1e-2


def test_fixed_charge_sector_trivially_symmetric():
    rep = is_topologically_symmetric(op_zhat(enumerate_sector(5, "1", "t"), 2))
    assert rep.is_symmetric and rep.commutator_norm == 0.0


def test_window_products_symmetric():
    s = enumerate_sector(6, "t", "t")
    W = [window_charge_projector(s, a, b, "1") for a in range(1, 7) for b in range(a + 1, 7)]
    for A in W:
        assert is_topologically_symmetric(A).is_symmetric
    for A, B in zip(W, W[1:]):
        assert is_topologically_symmetric(A @ B).is_symmetric


def test_symmetrize_is_idempotent():
    s = enumerate_sector(5, "t", "t")
    X = op_zhat(s, 2) + op_flip(s, 3)
    once = symmetrize(X)
    assert np.allclose(symmetrize(once).to_dense(), once.to_dense(), atol=1e-12)
    assert is_topologically_symmetric(once).is_symmetric
    S = symmetrization_superoperator(s)
    assert np.linalg.norm(S @ S - S) < 1e-10


@pytest.mark.parametrize("N", range(2, 7))
def test_symmetric_operator_count(N):
    rep = symmetric_operator_count(N)
    assert rep["numerical_rank"] == rep["n_op"] == fib(N - 1) ** 2 + fib(N) ** 2
    assert rep["verified"]


def test_count_capacity_limit():
    with pytest.raises(CapacityError):
        symmetric_operator_count(11)
    with pytest.raises(ArgumentError):
        symmetric_operator_count(1)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_projector_products_span_symmetric_space(N):
    rep = projector_span_dimension(N)
    assert rep["spans_symmetric_space"], rep


def test_support_examples():
    s = enumerate_sector(6, "t", "t")
    assert support_window(op_number(s, 3)).window == (3, 3)
    rep = support_window(pair_vacuum_projector(s, 2))
    assert rep.window == (1, 3) and not rep.is_full
    assert support_window(total_charge_projector(s)).is_full
    assert support_window(pair_vacuum_projector(s, 5)).window == (4, 5)


def test_support_of_scalar():
    s = enumerate_sector(5, "t", "t")
    rep = support_window(op_number(s, 1) * 0.0 + op_number(s, 1) - op_number(s, 1))
    assert rep.window is None and rep.width == 0


def test_dictionary_sigma_z():
    rep = dictionary_report(enumerate_sector(5, "1", "1"), 2, "SigmaZ")
    assert rep.residual == 0.0
    assert rep.coefficients == {"identity": 0.5, "z_mid": 0.5}


def test_dictionary_sigma_x():
    rep = dictionary_report(enumerate_sector(4, "t", "t"), 2, "SigmaX")
    assert rep.residual < 1e-9
    for name, q in QUOTED_SIGMA_X_COEFFICIENTS.items():
        assert rep.relative_errors[name] < 1e-10, name
    assert rep.coefficients["constant"] == pytest.approx(-0.5896135333180675, abs=1e-12)
    assert rep.symmetry is not None and not rep.symmetry.is_symmetric
    assert rep.fitted is not None
    for name, v in rep.fitted.items():
        assert v == pytest.approx(rep.coefficients[name], abs=1e-9)


def test_dictionary_rejects_boundary_site():
    with pytest.raises(ArgumentError):
        dictionary_report(enumerate_sector(4, "t", "t"), 4)
    with pytest.raises(ArgumentError):
        dictionary_report(enumerate_sector(4, "t", "t"), 2, "SigmaY")
