"""A q-bit stored in the total charge of a segment, and what noise does to it.

Writes plot-ready CSV files (t, charge_expectation, norm_drift) to
``leakage_out/`` next to the working directory.
"""

from pathlib import Path

import numpy as np

from blockade_anyon.leakage import NoiseConfig, leakage_experiment, leakage_scaling
from blockade_anyon.reporting import RunManifest, leakage_table, write_report

N = 6
J = np.ones(N - 1)
out = Path("leakage_out")

for eps in (0.0, 0.02, 0.1):
    trace = leakage_experiment(N, J, NoiseConfig(eps_z=eps, master_seed=42))
    print(f"eps_z={eps:<5} max leakage {trace.max_leakage:.3e}  mean {trace.mean_leakage:.3e}")
    manifest = RunManifest("leakage", {"N": N, "eps_z": eps}, 42)
    write_report(manifest, {"table": leakage_table(trace), "provenance": trace.provenance}, "csv",
                 out / f"eps_{eps}")

# second order in the field strength at small eps
slope, means = leakage_scaling(N, J, [0.01, 0.02, 0.04, 0.08], master_seed=42)
print("exponent", round(slope, 3), means)
