import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockade_anyon import (
    ArgumentError,
    Boundary,
    DomainError,
    Sector,
    enumerate_sector,
    fib,
    index_of,
    parse_sector,
    sector_dimension,
    state_at,
)
from oracles import brute_states, fib_recurrence

SECTORS = [("1", "1"), ("1", "t"), ("t", "1"), ("t", "t")]


def test_fib_matches_recurrence():
    assert [fib(k) for k in range(1, 11)] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    for k in range(1, 60):
        assert fib(k) == fib_recurrence(k)
    with pytest.raises(ArgumentError):
        fib(0)


@pytest.mark.parametrize("z0,zN", SECTORS)
@pytest.mark.parametrize("N", range(2, 13))
def test_states_match_brute_force(N, z0, zN):
    s = enumerate_sector(N, z0, zN)
    brute = brute_states(N, z0, zN)
    assert s.dim == len(brute) == sector_dimension(N, z0, zN)
    got = [tuple(int(c) for c in s.bitstring(code)) for code in s.states] if N > 1 else []
    assert got == brute


def test_small_examples():
    assert enumerate_sector(4, "t", "t").dim == 5
    assert enumerate_sector(2, "t", "t").dim == 2
    assert enumerate_sector(2, "1", "1").dim == 1
    s = enumerate_sector(3, "1", "1")
    # both interior sites sit next to an occupied boundary
    assert [s.bitstring(c) for c in s.states] == ["00"]


def test_boundary_site_values():
    s = enumerate_sector(5, "1", "t")
    assert np.all(s.site_values(0) == 1)
    assert np.all(s.site_values(5) == 0)
    assert Boundary.parse("tau") is Boundary.TAU
    with pytest.raises(ArgumentError):
        Boundary.parse("x")


def test_rank_unrank_roundtrip_small():
    s = enumerate_sector(9, "t", "t")
    ks = np.arange(s.dim)
    assert np.array_equal(s.index_array(s.state_array(ks)), ks)
    assert index_of(s, state_at(s, 17)) == 17
    assert index_of(s, int(s.states[3])) == 3


def test_illegal_state_rejected():
    s = enumerate_sector(5, "t", "t")
    with pytest.raises(DomainError):
        index_of(s, "1100")
    with pytest.raises((DomainError, ArgumentError)):
        state_at(s, s.dim)


def test_parse_sector_and_json():
    s = parse_sector(6, "1t")
    assert (s.z0, s.zN) == (Boundary.ONE, Boundary.TAU)
    assert Sector.from_json(s.to_json()) == s
    with pytest.raises(ArgumentError):
        parse_sector(6, "xy")


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 22), st.sampled_from(SECTORS), st.data())
def test_roundtrip_property(N, sec, data):
    s = enumerate_sector(N, *sec)
    k = data.draw(st.integers(0, s.dim - 1))
    bits = state_at(s, k)
    assert "11" not in bits
    assert index_of(s, bits) == k
