"""Constants of the multilinear Bohnenblust-Hille inequality."""
from .classical import (
    ConstantTableRow,
    HistoricalBound,
    Method,
    c_real_large_closed,
    c_real_recursive,
    c_real_small_closed,
    conjecture_gap,
    historical_bound,
    r_n,
    s_n_oracle,
)
from .errors import BHConstError, BracketError, ConvergenceError, DomainError, SizeError
from .khinchin import best_A, p0, rademacher_p_mean, verify_khinchin_lower
from .special import LogValue, compensated_sum, find_root_bracketed, log_gamma
from .subexp import (
    Decomposition,
    Field,
    SubexpParams,
    c_subexp_closed,
    c_subexp_recursive,
    decompose,
    growth_profile,
    verify_equivalence,
)
from .verifier import (
    MultilinearForm,
    VerificationReport,
    check_inequality,
    littlewood_witness,
    lhs_mixed_norm,
    random_form,
    sup_norm_real_exact,
)

__version__ = "0.1.0"
