"""Thermodynamic and geometric entanglement quantifiers for pure Gaussian states."""

from .ergotropy import (
    GapResult,
    ScoreResult,
    global_ergotropy,
    k_ergotropic_score,
    k_local_gap,
    minimum_gap,
    two_local_gap,
)
from .errors import (
    BudgetExceededError,
    CovarianceParseError,
    ErgoscopeError,
    InvalidArgumentError,
    InvalidStateError,
    NumericalError,
    ShapeError,
    UnsupportedStateError,
)
from .geometric import (
    GtmeConfig,
    GtmeResult,
    SqueezedProductParams,
    functional_independence_witness,
    ggm,
    ggm_from_score,
    gtme,
    pure_state_overlap,
    score_from_ggm,
    squeezed_vacuum_cm,
)
from . import cmio
from .partitions import ModePartition, enumerate_k_partitions, joint_partitions, stirling2
from .random_states import RandomStateConfig, random_pure_cm
from .symplectic import (
    Bipartition,
    CovarianceMatrix,
    SymplecticSpectrum,
    ValidityReport,
    direct_sum,
    energy,
    entropy_function,
    is_pure,
    mutual_information,
    permute_modes,
    purity,
    reduce,
    renyi2_entropy,
    symplectic_eigenvalues,
    symplectic_form,
    thermal,
    two_mode_squeezed_vacuum,
    vacuum,
    validate,
    von_neumann_entropy,
)

__version__ = "0.1.0"
