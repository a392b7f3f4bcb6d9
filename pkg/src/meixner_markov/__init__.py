"""Sharp constants of the discrete Markov-Bernstein inequality in the Meixner norm."""

from .constants import (
    BoundsReport,
    GammaResult,
    Method,
    available_methods,
    bounds_beta1,
    epsilon_bounds,
    gamma_n,
    sequence_bound,
)
from .eigen import (
    ChebRoot,
    EigenEstimate,
    charpoly_smallest_zero,
    cheb_phi,
    cheb_smallest_root,
    smallest_eigenvalue,
    sturm_count,
)
from .errors import BracketError, ConvergenceError, ParameterError, VerificationError
from .matrices import SymTridiag, alpha_ratio, build_A_dense, build_B, build_C, build_D, verify_factorization
from .meixner import (
    MeixnerParams,
    TruncatedSum,
    forward_difference,
    inner_product,
    meixner_poly,
    orthonormal_meixner,
    pochhammer,
    weight,
)
from .verify import (
    MonotoneReport,
    OracleReport,
    chain_condition_check,
    extremal_sequence_ratio,
    jacobi_eigenvalues,
    monotonicity_scan,
    oracle_gamma,
)

__version__ = "0.1.0"
