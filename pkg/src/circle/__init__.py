# Polynomials orthogonal on the unit circle: cn/dn families
from .types import MonicCirclePolynomial, ReflectionSequence, MomentSequence, coefficients_of
from .families import (
    FAMILIES,
    check_family,
    reflection_cn,
    reflection_dn,
    reflections,
    moments_cn,
    moments_dn,
    moments,
    explicit_cn_poly,
    explicit_dn_poly,
    explicit_poly,
    explicit_family,
    h_n_cn,
    h_n_dn,
    h_n_family,
    family_values_at_pm1,
    reflect_sign,
    reflected_reflections,
    reflected_moments,
)
from .szego import ThreeTermReport, szego_build, szego_family, szego_step_residual, value_at_pm1, three_term_check
from .toeplitz import (
    LevinsonResult,
    ToeplitzDeterminants,
    toeplitz_matrix,
    toeplitz_dets,
    determinant_poly,
    levinson_reflections,
    functional_orthogonality,
)
from .measures import (
    DiscretePointMeasure,
    GramResult,
    DensityReport,
    truncation_for_tail,
    cn_measure,
    dn_measure,
    reflected_cn_measure,
    reflected_dn_measure,
    family_measure,
    moment_from_measure,
    gram_check,
    density_report,
    write_measure,
)
