# Elliptic functions and elliptic binomial coefficients
# (the elliptic derivative lives in .derivative; it depends on src.circle)
from .kernel import (
    EllipticContext,
    agm,
    make_context,
    make_context_from_parts,
    dual_context,
    jacobi_sncndn,
    jacobi_sn,
    jacobi_cn,
    jacobi_dn,
    solve_k_from_w,
    context_from_nome,
    landen_2N,
)
from .qseries import q_pochhammer, basic_hypergeometric_2phi1, hypergeometric_terms
from .oracle import SeriesValue, fourier_oracle_cn, fourier_oracle_dn, fourier_oracle_sn
from .binomial import (
    EbcParams,
    RecurrenceReport,
    make_params,
    lattice_fraction,
    ebc_row,
    ebc,
    elliptic_number,
    verify_ebc_recurrences,
    gauss_binomial,
    ebc_k0_limit,
    ebc_k0_gauss_form,
    ebc_k1_limit,
)
