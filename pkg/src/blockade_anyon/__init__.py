"""Fibonacci-anyon chains realized in Rydberg-blockade arrays.

Constrained Hilbert spaces, fusion-channel projectors, topological symmetry
checks, sector spectra and the charge-leakage q-bit experiment.
"""

from .basis import (
    SECTOR_CODES,
    Boundary,
    Sector,
    enumerate_sector,
    fib,
    index_of,
    parse_sector,
    sector_dimension,
    state_at,
)
from .errors import (
    ArgumentError,
    BlockadeAnyonError,
    CapacityError,
    ConstructionError,
    ConvergenceError,
    DictionaryError,
    DomainError,
    StructureError,
)
from .hamiltonians import golden_hamiltonian, mirror_couplings
from .leakage import (
    LeakageTrace,
    NoiseConfig,
    evolve_state,
    initial_qubit_state,
    leakage_experiment,
    leakage_scaling,
    noisy_hamiltonian,
)
from .operators import (
    SparseOperator,
    commutator,
    frobenius_norm,
    identity,
    op_flip,
    op_number,
    op_zhat,
    read_coo,
    write_coo,
    zero,
)
from .projectors import (
    ChargeChannel,
    otest_operator,
    pair_vacuum_projector,
    prefix_vacuum_projector,
    suffix_vacuum_projector,
    total_charge_projector,
    window_charge_projector,
)
from .reporting import RunManifest, write_report
from .spectra import Spectrum, eigensystem, verify_direct_sum, verify_mirror
from .topo import (
    dictionary_report,
    is_topologically_symmetric,
    support_window,
    symmetric_operator_count,
    symmetrize,
)

__version__ = "0.1.0"
