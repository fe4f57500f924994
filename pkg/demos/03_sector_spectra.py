"""Spectral consequences of topological symmetry.

A symmetric chain on a (tau, tau) segment has the spectrum of the (1, 1) and
(1, tau) chains put together, and the (1, tau) and (tau, 1) spectra agree
once the couplings are mirrored.  A single Z field spoils the first identity.
"""

import numpy as np

from blockade_anyon import golden_hamiltonian, op_zhat, verify_direct_sum, verify_mirror

rng = np.random.default_rng(2019)
N = 8
J = rng.uniform(0.5, 1.5, N - 1)

ds = verify_direct_sum(N, J)
print("direct sum:", ds.passed, f"worst {ds.worst_residual:.1e}", ds.details["dims"])

mi = verify_mirror(N, J)
for mode, r in mi.details["modes"].items():
    print(f"mirror ({mode}):", r["passed"], f"worst {r['worst_residual']:.1e}")


def broken(sector, couplings):
    return golden_hamiltonian(sector, couplings) + op_zhat(sector, 2) * 0.3


bad = verify_direct_sum(N, J, builder=broken)
print("with 0.3 Z_2:", bad.passed, f"worst {bad.worst_residual:.3f}")
