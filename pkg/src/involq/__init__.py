"""Finite involutory quandles: enumeration, Montesinos families, analysis."""

from .analysis import (
    AutReport,
    Geodesic,
    aut_upper_bound,
    automorphism_count,
    distinguishes,
    geodesic,
    maximal_geodesics,
    totient,
)
from .montesinos import (
    LatticeTransform,
    MontesinosParams,
    build_model,
    canonical_rep,
    component_symmetries,
    displacement,
    lattice_step,
    mirror_params,
    predicted_component_count,
    predicted_component_sizes,
    predicted_order,
    presentation,
    rewritten_presentation,
    sigma,
    words_AB,
)
from .winker import (
    AxiomReport,
    BudgetExceeded,
    DiagramGraph,
    FiniteQuandle,
    Presentation,
    Relation,
    axioms_check,
    components,
    core_cyclic,
    enumerate_quandle,
    isomorphic,
    normalize_relation,
    secondary_of,
)
from .words import Generator, NestedTerm, Word, apply_word, expand_power, flatten, reverse, word

__version__ = "0.1.0"
