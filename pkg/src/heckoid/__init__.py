"""Heckoid groups of 2-bridge links: Farey orbits, slope words, parabolic certificates."""

from .farey import (
    FareyMatrix,
    Membership,
    OrbitBudget,
    OrbitWitness,
    PatternParams,
    admits_epimorphism,
    is_in_orbit,
    orbit_bfs,
    orbit_descent,
    orbit_enumerate_pattern,
    parabolic_unit,
    reflection_at_infinity,
    riley_family,
    riley_pattern,
)
from .orbifold import OrbifoldDescriptor, even_orbifold_desc, odd_orbifold_desc, quotient_orbifold_desc
from .reps import (
    Certificate,
    certify_epimorphism,
    divisibility_check,
    elliptic_order_check,
    heckoid_roots,
    heckoid_trace_target,
    lifted_trace_target,
    trace_invariance_check,
    trace_poly,
    word_matrix_symbolic,
)
from .slopes import ContFrac, DomainError, HeckoidIndex, Slope, cf_eval, cf_expand, seq_transform
from .words import GroupWord, NotOneRelator, Presentation, heckoid_presentation, link_group_presentation, slope_word

__version__ = "0.1.0"
