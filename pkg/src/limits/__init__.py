# Degenerate limits: hyperbolic (k -> 1), trigonometric (k -> 0) and the finite polygon case
from .hyperbolic import (
    QPochhammerCache,
    hyp_reflections,
    hyp_moments,
    hyp_poly,
    hyp_coefficient,
    hyp_weight,
    hyp_reflected_weight,
    quadrature_moments,
    k0_degenerate_measure,
)
from .polygon import (
    PolygonCase,
    F_ROUTES,
    S_ROUTES,
    ramanujan_F,
    S_weights,
    build_polygon_case,
    residue_weights,
    finite_moment_check,
    finite_gram_check,
    write_polygon,
)
