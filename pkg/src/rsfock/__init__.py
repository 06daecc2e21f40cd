"""Finite-dimensional Clifford/Fock model of the Rankin-Selberg period and
verification of its higher-derivative identities."""
from .errors import *  # noqa: F401,F403
from .scalars import ExactBackend, FloatBackend, RatFuncU, get_backend, log_derivative_power, rf_eval
from .lfun import (
    FrobSpace,
    LocalSystemH1,
    central_derivative,
    lfunction,
    normalized_pair_lfunction,
    residue_scalar,
    root_number,
)
from .superclifford import (
    FockModule,
    OmegaForm,
    Operator,
    frobenius_op,
    highest_weight_eigenvalue,
    lower_op,
    lowest_weight_eigenvalue,
    raise_op,
    supertrace,
    sym_algebra_trace,
)
from .cycles import (
    CycleTensor,
    EpsilonPattern,
    dual_system_cycle_class,
    epsilon_patterns,
    fake_cycle_class,
    graded_cycle_class,
    omega_dual_pairing,
    total_cycle_class,
)
from .identity import (
    PeriodSpec,
    VerificationReport,
    beta_sigma,
    dual_relation_check,
    graded_dimension_check,
    intersection_dual_pairing,
    kolyvagin_norm_check,
    main_identity_check,
    nondegeneracy_check,
)
from .runner import RunConfig, generate_spec, load_spec, dump_spec, run_suite

__version__ = "0.1.0"
