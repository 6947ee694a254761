"""Discriminating strength and state-discrimination toolkit for bipartite states."""

from .discrimination import (
    ChernoffResult,
    chernoff_decay_check,
    chernoff_overlap,
    fidelity,
    helstrom_error,
    trace_norm,
)
from .linalg import (
    CapacityError,
    ContractViolationError,
    bloch_to_ket,
    bloch_to_state,
    eig_hermitian,
    haar_random_unitary,
    kron,
    mat_pow,
    partial_trace_b,
    random_density_matrix,
    random_pure_state,
    schmidt_decompose,
    sqrtm,
)
from .measures import (
    DsResult,
    OptimizerOptions,
    ds_general,
    ds_pure,
    ds_pure_harmonic,
    ds_qubit_qudit,
    lemma1_check,
    lqu,
    lqu_ds_small_lambda_check,
    rotate_local,
    skew_information,
    w_matrix,
)
from .states import (
    QcQubitParams,
    SeparableEnsemble,
    b92_state,
    bloch_second_moment,
    cq_state,
    ds_pqc_closed,
    ds_qc_closed,
    fibonacci_sphere,
    gb92_state,
    pqc_state,
    probability_simplex_from_angles,
    qc_qubit_qubit,
    separable_ensemble,
    uniform_bloch_axes,
    uniform_pqc,
)
from .types import BipartiteState, LocalHamiltonian, Spectrum

__version__ = "0.1.0"
