"""Characteristic polynomials of graphs recovered from polynomial decks.

Exact integer and modular tools for working with the multiset of
characteristic polynomials of vertex-deleted subgraphs (and of their
complements), the walk series they encode, and reconstruction procedures
built on them.
"""

from .deck_mod import (
    base_mod_data,
    constant_mod2,
    corollary2_check,
    deck_mod_report,
    gram_rows_mod4,
    theorem4,
    theorem5,
)
from .errors import (
    Graph6Error,
    InconsistentDeckError,
    InsufficientDataError,
    NonSquareError,
    NotApplicableError,
    NotInvertibleError,
    PolyReconError,
    PrecisionError,
    RankDeficientError,
)
from .graph import (
    Graph,
    closed_walk_counts,
    complement,
    complete_graph,
    cycle_graph,
    delete_vertex,
    emit_graph6,
    empty_graph,
    parse_graph6,
    path_graph,
    star_graph,
    walk_counts,
)
from .oracle import deck_collision_search, enumerate_graphs, random_graph, verify_sweep
from .poly import QQ, ZZ, Deck, Poly, Ring, Zmod, charpoly, deck, derivative, substitute_neg_shift
from .reconstruct import (
    ReconstructionOutcome,
    count_c4_from_deck,
    reconstruct_c4free_lowrank,
    reconstruct_controllable,
    reconstruct_full,
    reconstruct_general,
)
from .series import SeriesPrefix, hankel_tail_solve, ratio_prefix, sqrt_prefix
from .symmetric import (
    coeffs_from_traces,
    complement_charpoly_mod4,
    gram_walk_mod4,
    partitions,
    trace_from_coeffs,
    traces_mod,
)
from .walks import WalkMatrix, rank_F2, rank_Q, walk_matrix, walk_matrix_from_generalized_deck

__version__ = "0.1.0"
