"""Total topological charge and which operators respect it.

In a segment with tau labels at both ends, the total charge of the anyons
can be 1 or tau.  Its projector is found numerically as the minimal central
projector of the algebra generated by the pair projectors.
"""

import numpy as np

from blockade_anyon import (
    enumerate_sector,
    fib,
    golden_hamiltonian,
    is_topologically_symmetric,
    op_flip,
    op_zhat,
    otest_operator,
    support_window,
    total_charge_projector,
)
from blockade_anyon.topo import dictionary_report, symmetric_operator_count

N = 6
s = enumerate_sector(N, "t", "t")
P = total_charge_projector(s)
print("rank", round(P.to_dense().trace()), "expected", fib(N - 1))

w = np.linalg.eigvalsh(otest_operator(s).to_dense())
print("O_test eigenvalues:", np.unique(w.round(10)))

H = golden_hamiltonian(s, np.random.default_rng(0).uniform(0.5, 1.5, N - 1))
for op in (H, op_zhat(s, 3), op_flip(s, 3)):
    rep = is_topologically_symmetric(op)
    print(f"{rep.operator:10s} ||[O,P]|| = {rep.commutator_norm:.2e}  symmetric={rep.is_symmetric}")

# local in anyon language does not mean local in the atoms: P is spread over the whole chain
print("support of P:", "full" if support_window(P).is_full else support_window(P).window)

# sigma^x on one atom in anyonic terms
rep = dictionary_report(enumerate_sector(4, "t", "t"), 2)
for name, c in rep.coefficients.items():
    print(f"  {name:16s} {c:+.12f}")
print("residual", rep.residual)

for n in range(2, 7):
    c = symmetric_operator_count(n)
    print(n, c["numerical_rank"], "of", c["total"])
