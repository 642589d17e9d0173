# Moments from periodic profiles, continued fractions and the Magnus example
from .profiles import (
    BUILTIN_PROFILES,
    PeriodicProfile,
    cn_profile,
    dn_profile,
    magnus_profile,
    magnus_evaluator,
    load_profile,
    is_resonant,
    scheme_moments,
    scheme_measure,
    scheme_reflections,
)
from .continued_fraction import (
    ContinuedFractionData,
    parse_real,
    continued_fraction,
    best_approximations,
    brute_force_best_approximations,
)
from .magnus import SparsityReport, magnus_sparsity_check
