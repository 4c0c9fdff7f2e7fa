"""Certified eigenvalue enclosures for two-diagonal Jacobi operators.

The operator acts on ``l2`` as ``J e_n = a_{n-1} e_{n-1} + a_n e_{n+1}``
with a positive off-diagonal sequence ``a_n``.  When ``a_{n+1}/a_n -> 0``
its positive eigenvalues satisfy ``lambda_k / a_{2k-1} -> 1``; this package
computes them with rigorous enclosures and checks the surrounding
inequalities numerically.
"""

from .signlog import SignLogNumber, from_real, from_log, to_real
from .sequence import (
    StretchedGeometric,
    FactorialDecay,
    Geometric,
    ExplicitTable,
    check_condition,
    log_a,
    log_a_value,
    truncation_bound,
    spec_from_json,
)
from .sections import (
    TruncatedJacobi,
    BidiagonalHalf,
    build_truncated,
    split_bidiagonal,
    log_det_product,
    difference_norm_check,
)
from .spectral import (
    EigenEnclosure,
    SpectrumSlice,
    sturm_count,
    kth_positive_eigenvalue,
    all_positive_eigenvalues,
    dense_oracle,
    certify_eigenvalue,
)
from .analysis import (
    Verdict,
    asymptotic_table,
    bracket_check,
    smallest_eigenvalue_scan,
    epsilon_bounds_check,
    product_identity_report,
)

__version__ = "0.1.0"
