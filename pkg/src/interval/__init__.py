# Polynomials on [-1, 1]: Delsarte-Genin transform and the P/Q split
from .transform import (
    SymmetricIntervalPolynomial,
    IntervalRecurrence,
    chebyshev_T_table,
    chebyshev_to_monomial,
    dgt,
    dgt_family,
    v_coeffs,
    kappa,
    kappa_from_norms,
    split_PQ_recurrences,
    split_polys,
    recurrence_polys,
    symmetric_recurrence_residual,
    chebyshev_expansion,
    p_cn_chebyshev,
    explicit_cn_split_coeffs,
    explicit_dn_split_coeffs,
)
from .orthogonality import (
    IntervalGramReport,
    AskeyWilsonReport,
    interval_moments,
    interval_gram,
    hyperbolic_split_coeffs,
    askey_wilson_weight,
    askey_wilson_limit_check,
    recurrence_table,
    write_recurrence_table,
)
