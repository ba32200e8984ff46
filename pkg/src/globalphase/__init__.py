"""Entanglement generated by global phase functions on qubit registers."""

from .analytic import (
    TwoParamPoint,
    concurrence_one_param,
    lambda_ab,
    lambda_bc_prime,
    lambda_bc_two_param,
    lambda_one_param,
    rho_bc_one_param,
    rho_mixed_one_param,
)
from .dj import (
    OracleSpec,
    QueryLog,
    Verdict,
    classical_decide_general,
    classical_recover_linear,
    dj_run,
    hadamard_all,
)
from .entanglement import (
    EntanglementReport,
    binary_entropy,
    concurrence,
    entanglement_of_formation,
    spin_flip,
    wootters_lambdas,
)
from .linalg import hermitian_eigensystem, psd_sqrt
from .separability import (
    Constraint,
    LinearPhaseForm,
    check_constraints,
    constraint_list,
    fit_linear,
    is_entangling,
)
from .states import (
    DensityMatrix,
    PhaseTable,
    PureState,
    apply_phase,
    build_mixed_plus_minus,
    build_phase_state,
    density_of,
    partial_trace,
    purity,
)

__version__ = "0.1.0"
