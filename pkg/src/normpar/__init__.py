"""Norm-parallelism and Birkhoff-James orthogonality for complex matrices.

Decision procedures for when two matrices attain the triangle inequality
(norm-parallelism) under the operator and Schatten p-norms, witness
extraction, BJ-orthogonality minimisation, and a harness that cross-validates
every characterisation against a brute-force phase-sweep oracle.
"""

from ._kernels import BACKEND as kernel_backend
from .config import DEFAULT_CONFIG, ToleranceConfig
from .errors import (
    InputError,
    InvalidWitnessError,
    NotApplicableError,
    WitnessFailureError,
)
from .harness import Ensemble, SuiteReport, registered_theorems, run_suite, sample
from .linalg import (
    DensityState,
    PhaseAngle,
    PolarParts,
    max_modulus_numerical_range,
    numerical_range_support,
    operator_norm,
    polar_decompose,
    schatten_norm,
    spectral_radius,
)
from .module_ops import (
    BlockParallelResult,
    ElementaryOperator,
    RankOneEquivalences,
    block_parallel,
    lift_theta,
    rank_one,
    rank_one_equivalences,
    theta_spectral_radius_check,
    theta_transfer_check,
)
from .orthogonality import (
    BJVerdict,
    BridgeCheck,
    bj_bridge_check,
    bj_minimize,
    bj_state_witness,
    parallel_consequence_check,
)
from .parallel import (
    CriterionReport,
    ParallelVerdict,
    commutative_criterion,
    defect_oracle,
    eigen_criterion,
    gram_criterion,
    is_parallel,
    normal_criterion,
    positive_criterion,
    singularity_criterion,
    spectral_criterion,
    witness_state,
    witness_vector,
)
from .schatten import (
    DerivativeCheck,
    frechet_derivative_check,
    schatten_defect_oracle,
    schatten_trace_criterion,
)

__version__ = "0.1.0"

__all__ = [
    "BJVerdict",
    "BlockParallelResult",
    "BridgeCheck",
    "CriterionReport",
    "DEFAULT_CONFIG",
    "DensityState",
    "DerivativeCheck",
    "ElementaryOperator",
    "Ensemble",
    "InputError",
    "InvalidWitnessError",
    "NotApplicableError",
    "ParallelVerdict",
    "PhaseAngle",
    "PolarParts",
    "RankOneEquivalences",
    "SuiteReport",
    "ToleranceConfig",
    "WitnessFailureError",
    "bj_bridge_check",
    "bj_minimize",
    "bj_state_witness",
    "block_parallel",
    "commutative_criterion",
    "defect_oracle",
    "eigen_criterion",
    "frechet_derivative_check",
    "gram_criterion",
    "is_parallel",
    "kernel_backend",
    "lift_theta",
    "max_modulus_numerical_range",
    "normal_criterion",
    "numerical_range_support",
    "operator_norm",
    "parallel_consequence_check",
    "polar_decompose",
    "positive_criterion",
    "rank_one",
    "rank_one_equivalences",
    "registered_theorems",
    "run_suite",
    "sample",
    "schatten_defect_oracle",
    "schatten_norm",
    "schatten_trace_criterion",
    "singularity_criterion",
    "spectral_criterion",
    "spectral_radius",
    "theta_spectral_radius_check",
    "theta_transfer_check",
    "witness_state",
    "witness_vector",
]
