"""Acceptance criteria, one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py`` for the plain summary.
"""

import math
import os
import sys
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from blockade_anyon import (  # noqa: E402
    enumerate_sector,
    fib,
    golden_hamiltonian,
    is_topologically_symmetric,
    op_flip,
    op_zhat,
    otest_operator,
    pair_vacuum_projector,
    support_window,
    symmetric_operator_count,
    total_charge_projector,
    verify_direct_sum,
    verify_mirror,
    window_charge_projector,
)
from blockade_anyon import basis as _basis  # noqa: E402
from blockade_anyon.cli import main as cli_main  # noqa: E402
from blockade_anyon.commutant import commutant_basis  # noqa: E402
from blockade_anyon.leakage import NoiseConfig, leakage_experiment, leakage_scaling  # noqa: E402
from blockade_anyon.operators import frobenius_norm  # noqa: E402
from blockade_anyon.topo import QUOTED_SIGMA_X_COEFFICIENTS, dictionary_report  # noqa: E402
from oracles import brute_codes  # noqa: E402

PHI = (1 + math.sqrt(5)) / 2
SECTORS = [("1", "1"), ("1", "t"), ("t", "1"), ("t", "t")]


def _clear_caches():
    _basis._build_sector.cache_clear()
    pair_vacuum_projector.cache_clear()
    total_charge_projector.cache_clear()


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for N in range(2, 26):
        for z0, zN in SECTORS:
            s = _basis._build_sector.__wrapped__(N, _basis.Boundary.parse(z0), _basis.Boundary.parse(zN))
            k = N - 1 + (z0 == "t") + (zN == "t")
            if s.dim != fib(k):
                bad.append((N, z0, zN))
    elapsed = time.perf_counter() - t0
    for N in range(2, 17):
        for z0, zN in SECTORS:
            if not np.array_equal(enumerate_sector(N, z0, zN).states, brute_codes(N, z0, zN)):
                bad.append(("brute", N, z0, zN))
    ok = not bad and elapsed < 1.0
    return ok, f"N=2..25 x 4 sectors match F_(N-1+R0+RN), brute N<=16, enumeration {elapsed:.3f}s; bad={bad}"


def criterion_2():
    worst_idem = worst_herm = 0.0
    for N in range(2, 13):
        for z0, zN in SECTORS:
            s = enumerate_sector(N, z0, zN)
            for i in range(1, N):
                P = pair_vacuum_projector(s, i).matrix
                worst_idem = max(worst_idem, frobenius_norm(P @ P - P))
                worst_herm = max(worst_herm, frobenius_norm(P - P.T))
    P2 = pair_vacuum_projector(enumerate_sector(2, "t", "t"), 1).to_dense()
    want = np.array([[1 / PHI, PHI ** -1.5], [PHI ** -1.5, PHI ** -2]])
    entry = float(np.max(np.abs(P2 - want)))
    ok = worst_idem < 1e-10 and worst_herm < 1e-12 and entry < 1e-12
    return ok, f"max ||P^2-P||={worst_idem:.2e}, max ||P-P^T||={worst_herm:.2e}, N=2 entry error {entry:.2e}"


def criterion_3():
    rep = dictionary_report(enumerate_sector(4, "t", "t"), 2, "SigmaX")
    rel = max(rep.relative_errors.values())
    ok = rel < 1e-10 and rep.residual < 1e-9 and set(rep.relative_errors) == set(QUOTED_SIGMA_X_COEFFICIENTS)
    return ok, (f"max relative coefficient error {rel:.2e}, residual {rep.residual:.2e}, "
                f"recovered constant {rep.coefficients['constant']:.16f}")


def criterion_4():
    _clear_caches()
    bad, t12 = [], None
    for N in range(2, 13):
        t0 = time.perf_counter()
        s = enumerate_sector(N, "t", "t")
        gens = [pair_vacuum_projector(s, i) for i in range(1, N)]
        dim_c = len(commutant_basis(gens))
        P = total_charge_projector(s).to_dense()
        w = np.linalg.eigvalsh(otest_operator(s).to_dense())
        if N == 12:
            t12 = time.perf_counter() - t0
        want = np.sort([1.0] * fib(N - 1) + [-PHI ** -2] * fib(N))
        r = int(np.sum(np.linalg.eigvalsh(P) > 0.5))
        if dim_c != 2 or r != fib(N - 1) or np.max(np.abs(w - want)) > 1e-9:
            bad.append(N)
    ok = not bad and t12 < 60
    return ok, f"commutant dim 2, rank F_(N-1), O_test spectrum for N=2..12; N=12 took {t12:.2f}s; bad={bad}"


def criterion_5():
    rng = np.random.default_rng(5)
    worst_h, weakest = 0.0, np.inf
    for N in range(2, 11):
        s = enumerate_sector(N, "t", "t")
        for _ in range(20):
            H = golden_hamiltonian(s, rng.uniform(-2, 2, N - 1))
            worst_h = max(worst_h, is_topologically_symmetric(H).commutator_norm)
        if N >= 3:
            for i in range(1, N):
                for op in (op_zhat(s, i), op_flip(s, i)):
                    weakest = min(weakest, is_topologically_symmetric(op).commutator_norm)
    ok = worst_h < 1e-10 and weakest > 1e-2
    return ok, f"max ||[H,P]||={worst_h:.2e} (20 coupling sets, N<=10); min ||[Z or X, P]||={weakest:.3f} (N=3..10)"


def criterion_6():
    ranks, t7 = {}, None
    for N in range(2, 8):
        t0 = time.perf_counter()
        rep = symmetric_operator_count(N)
        if N == 7:
            t7 = time.perf_counter() - t0
        ranks[N] = (rep["numerical_rank"], rep["n_op"], rep["total"])
    ok = all(r == n for r, n, _ in ranks.values()) and ranks[4] == (13, 13, 25) and t7 < 120
    return ok, f"(rank, F_(N-1)^2+F_N^2, d^2) = {ranks}; N=7 took {t7:.2f}s"


def criterion_7():
    rng = np.random.default_rng(7)
    worst, bad = 0.0, []
    for N in range(2, 13):
        J = rng.uniform(0.2, 2.0, N - 1)
        ds, mi = verify_direct_sum(N, J, 1e-9), verify_mirror(N, J, 1e-9)
        worst = max(worst, ds.worst_residual, mi.worst_residual)
        if not (ds.passed and mi.passed):
            bad.append(N)

    def broken(sector, J):
        return golden_hamiltonian(sector, J) + op_zhat(sector, 2) * 0.3

    br = verify_direct_sum(6, np.ones(5), 1e-9, broken)
    code = cli_main(["verify-sectors", "--n", "6", "--broken"], open(os.devnull, "w"), open(os.devnull, "w"))
    ok = not bad and not br.passed and code == 2
    return ok, (f"N=2..12 worst residual {worst:.2e}; broken direct-sum residual {br.worst_residual:.3f} "
                f"(fails); CLI exit {code}")


def _live_sites(s):
    return [i for i in range(1, s.N) if np.ptp(s.site_values(i)) > 0]


def criterion_8():
    bad = []
    for N in range(2, 11):
        for z0, zN in SECTORS:
            s = enumerate_sector(N, z0, zN)
            live = _live_sites(s)
            for i in range(1, N):
                span = [j for j in range(i - 1, i + 2) if j in live]
                want = (span[0], span[-1]) if span else None
                if (z0, zN) == ("t", "t"):
                    want = (max(1, i - 1), min(N - 1, i + 1))
                got = support_window(pair_vacuum_projector(s, i)).window
                if got != want:
                    bad.append(("pair", N, z0 + zN, i, got, want))
    for N in range(3, 9):
        if not support_window(total_charge_projector(enumerate_sector(N, "t", "t"))).is_full:
            bad.append(("charge", N))
    n_windows = 0
    for N in range(2, 9):
        for z0, zN in SECTORS:
            s = enumerate_sector(N, z0, zN)
            for a in range(1, N + 1):
                for b in range(a, N + 1):
                    for c in ("1", "t"):
                        w = support_window(window_charge_projector(s, a, b, c)).window
                        n_windows += 1
                        if w is not None and not (a - 1 <= w[0] and w[1] <= b + 1):
                            bad.append(("window", N, z0 + zN, a, b, c, w))
    ok = not bad
    return ok, (f"pair windows [i-1,i+1] (N<=10, all sectors), charge projector full (N=3..8), "
                f"{n_windows} window projectors inside [a-1,b+1]; bad={bad[:5]}")


def criterion_9():
    t0 = time.perf_counter()
    rng = np.random.default_rng(9)
    worst0 = 0.0
    for N in range(2, 11):
        tr = leakage_experiment(N, rng.uniform(0.5, 1.5, N - 1), NoiseConfig(0.0, 0.0, 42))
        worst0 = max(worst0, tr.max_leakage)
    noisy = leakage_experiment(6, np.ones(5), NoiseConfig(0.0, 0.1, 42)).max_leakage
    slope, _ = leakage_scaling(6, np.ones(5), [0.01, 0.02, 0.04, 0.08], 42)
    elapsed = time.perf_counter() - t0
    ok = worst0 < 1e-9 and noisy > 1e-3 and 1.8 <= slope <= 2.2 and elapsed < 300
    return ok, (f"zero-noise max leakage {worst0:.2e} (N<=10); eps_z=0.1 seed 42 max leakage {noisy:.4f}; "
                f"exponent {slope:.3f}; {elapsed:.1f}s")


def criterion_10():
    _basis._build_sector.cache_clear()
    t0 = time.perf_counter()
    s = enumerate_sector(30, "t", "t")
    ks = np.arange(s.dim)
    codes = s.state_array(ks)
    back = s.index_array(codes)
    t_round = time.perf_counter() - t0
    s24 = enumerate_sector(24, "t", "t")
    H = golden_hamiltonian(s24, np.ones(23))
    v = np.random.default_rng(10).standard_normal(s24.dim)
    t1 = time.perf_counter()
    H.dot(v)
    t_mv = time.perf_counter() - t1
    ok = s.dim == fib(31) and np.array_equal(back, ks) and t_round < 10 and t_mv < 1
    return ok, f"N=30 dim {s.dim} round trip {t_round:.2f}s; N=24 (dim {s24.dim}) matvec {t_mv * 1e3:.1f}ms"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print("\n" + _line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [CRITERIA[k - 1]() for k in range(1, 11)]
    for k, (ok, detail) in enumerate(results, start=1):
        print(_line(k, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)
