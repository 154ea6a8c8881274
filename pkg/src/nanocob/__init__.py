"""Nanoword cobordism toolkit.

Words in which every letter occurs twice, over an alphabet with
involution; the moves that generate cobordism (homotopy moves,
surgeries, bridges, shifts); and the invariant stack that obstructs it
(the free-product value, pairings with filling enumeration, the
per-orbit polynomial, genera, surface cross-checks).
"""

from .algebra import (
    InvolutiveAlphabet,
    Orbit,
    PhiSpec,
    PiElement,
    PiWord,
    abelianize,
    orbit_decomposition,
    phi_apply,
    pi_add,
    pi_negate,
    pi_of_letter,
    pi_word_is_conjugate,
    pi_word_multiply,
)
from .moves import (
    Bridge,
    Caps,
    Factor,
    Metamorphosis,
    Move,
    apply_bridge,
    apply_h1,
    apply_h2,
    apply_h3,
    apply_surgery,
    bounded_bfs,
    enumerate_bridges,
    enumerate_even_symmetric_factors,
    find_h1_sites,
    find_h2_sites,
    find_h3_sites,
    length_norm_bounds,
    validate_bridge,
)
from .pairings import (
    AlphaPairing,
    Genus,
    UPoly,
    are_cobordant,
    are_isomorphic,
    covering,
    enumerate_fillings,
    enumerate_weak_fillings,
    full_subgroups,
    genus,
    genus_of_filling,
    is_hyperbolic,
    is_hyperbolic_tuple,
    m_shift,
    opposite_pairing,
    pairing_of_nanoword,
    pairing_of_nanoword_alt,
    phi_sign_battery,
    r_of,
    sum_pairings,
    tuple_genus,
    u_degree,
    u_polynomial,
    u_polynomial_of_nanoword,
    verify_surgery_filling,
    weakly_cobordant,
)
from .surfaces import genus_rank_check, ribbon_graph_of, surface_stats
from .words import (
    Nanophrase,
    Nanoword,
    SymmetryWitness,
    canonical_form,
    circular_shift,
    concatenate,
    epsilon,
    is_even,
    opposite,
    pull_back,
    push_forward,
    symmetry_witness,
)
from .explorer import (
    classify,
    classify_words,
    enumerate_nanowords,
    invariant_record,
    slice_status,
)

__version__ = "0.1.0"
