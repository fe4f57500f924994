"""Rydberg-blockade basis for a chain of Fibonacci anyons.

Each interior site holds one atom; an excited atom (n=1) marks a vacuum bond
between neighbouring anyons, and the blockade forbids two adjacent excitations
(two vacuum bonds in a row cannot occur in the fusion tree).
"""

import numpy as np

from blockade_anyon import enumerate_sector, fib, pair_vacuum_projector

# Dimensions grow as Fibonacci numbers; the boundary labels shift the index.
for N in range(2, 9):
    dims = {code: enumerate_sector(N, code[0], code[1]).dim for code in ("11", "1t", "t1", "tt")}
    print(N, dims, "F_(N+1) =", fib(N + 1))

# The five states of four anyons with tau boundaries.
s = enumerate_sector(4, "t", "t")
for k, code in enumerate(s.states):
    print(k, s.bitstring(code))

# The vacuum projector of anyons 2 and 3 is a local three-site operator.
P = pair_vacuum_projector(s, 2).to_dense()
np.set_printoptions(precision=4, suppress=True)
print(P)
print("idempotent:", np.allclose(P @ P, P), " rank:", round(np.trace(P)))
