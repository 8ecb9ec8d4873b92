import pytest
from hypothesis import given, settings

from conftest import C4, C5, K3, K4, P4, S4, S6, TWO_K2, graph_strategy
from polyrecon.errors import InconsistentDeckError, NotApplicableError
from polyrecon.graph import (
    complement,
    complete_bipartite_graph,
    complete_graph,
    count_four_cycles,
    cycle_graph,
    disjoint_union,
    empty_graph,
    star_graph,
)
from polyrecon.poly import Deck, Poly, charpoly, deck
from polyrecon.reconstruct import (
    ReconstructionOutcome,
    controllable_truncation,
    count_c4_from_deck,
    full_truncation,
    reconstruct_c4free_lowrank,
    reconstruct_controllable,
    reconstruct_full,
    reconstruct_general,
)
from polyrecon.walks import rank_Q, walk_matrix


def pair(g):
    return charpoly(g), charpoly(complement(g))


def test_general_on_complete_generalized_decks():
    out = reconstruct_general(deck(P4, generalized=True))
    assert out.ok and out.pair == (Poly((1, 0, -3, 0, 1)),) * 2
    out = reconstruct_general(deck(K3, generalized=True))
    assert out.pair == (Poly((1, 0, -3, -2)), Poly.monomial(3))


def test_general_reports_low_rank():
    # regular graphs have rank 1; the controllable truncation gives threshold 2 from n = 7 on
    k2 = complete_graph(2)
    four_k2 = disjoint_union(disjoint_union(k2, k2), disjoint_union(k2, k2))
    for g in (cycle_graph(7), empty_graph(7), four_k2):
        k = controllable_truncation(g.n)
        d = deck(g, generalized=True, truncate=k, truncate_co=k)
        assert rank_Q(walk_matrix(g)) == 1
        out = reconstruct_general(d)
        assert out.status == "rank_too_low" and out.threshold == 2


def test_general_preconditions():
    d = deck(P4, generalized=True)
    with pytest.raises(ValueError):
        reconstruct_general(d, s=3, t=4)  # 3 + 2 < 6
    with pytest.raises(ValueError):
        reconstruct_general(deck(P4))
    with pytest.raises(ValueError):
        reconstruct_general(d, s=4, t=3)


def test_full_examples():
    assert full_truncation(4) == 4
    assert reconstruct_full(deck(P4, generalized=True, truncate_co=4)) == pair(P4)
    assert reconstruct_full(deck(S4, generalized=True, truncate_co=4)) == (
        Poly((1, 0, -3, 0, 0)), Poly((1, 0, -3, -2, 0)))
    assert reconstruct_full(deck(empty_graph(3), generalized=True)) == (
        Poly.monomial(3), Poly((1, 0, -3, -2)))


def test_full_uses_only_the_truncated_co_cards():
    g = cycle_graph(8)
    d = deck(g, generalized=True, truncate_co=full_truncation(8))
    assert d.s == 6
    assert reconstruct_full(d) == pair(g)


def test_full_detects_corrupted_co_cards():
    d = deck(P4, generalized=True)
    co = list(d.co_cards)
    co[1] = (1, 0, -2, 1)
    with pytest.raises(InconsistentDeckError):
        reconstruct_full(Deck(4, d.cards, tuple(co)))


def test_controllable_examples():
    for g in (P4, K4, cycle_graph(6), TWO_K2, star_graph(7)):
        k = controllable_truncation(g.n)
        out = reconstruct_controllable(deck(g, generalized=True, truncate=k, truncate_co=k))
        assert out.ok and out.pair == pair(g)
    k7 = complete_graph(7)
    out = reconstruct_controllable(deck(k7, generalized=True, truncate=6, truncate_co=6))
    assert out.status == "rank_too_low" and out.threshold == 2


@settings(max_examples=40, deadline=None)
@given(graph_strategy(3, 9))
def test_full_roundtrip_random(g):
    assert reconstruct_full(deck(g, generalized=True, truncate_co=full_truncation(g.n))) == pair(g)


@settings(max_examples=40, deadline=None)
@given(graph_strategy(3, 9))
def test_controllable_matches_rank(g):
    k = controllable_truncation(g.n)
    out = reconstruct_controllable(deck(g, generalized=True, truncate=k, truncate_co=k))
    if rank_Q(walk_matrix(g)) >= (g.n - 1) // 3:
        assert out.ok and out.pair == pair(g)
    else:
        assert out.status == "rank_too_low"


def test_count_c4_examples():
    assert count_c4_from_deck(deck(C5)) == 0
    assert count_c4_from_deck(deck(complete_graph(5))) == 15
    with pytest.raises(NotApplicableError):
        count_c4_from_deck(deck(C4))


@settings(max_examples=60, deadline=None)
@given(graph_strategy(5, 9))
def test_count_c4_matches_direct_count(g):
    assert count_c4_from_deck(deck(g)) == count_four_cycles(g)


def test_c4free_examples():
    out = reconstruct_c4free_lowrank(deck(S6))
    assert out.ok and out.phi == Poly((1, 0, -5, 0, 0, 0, 0)) and out.phi_complement == charpoly(complement(S6))
    assert reconstruct_c4free_lowrank(deck(C5)).pair == pair(C5)
    out = reconstruct_c4free_lowrank(deck(complete_bipartite_graph(3, 3)))
    assert out.status == "not_applicable" and out.reason == "has C4"
    assert reconstruct_c4free_lowrank(deck(C4)).status == "not_applicable"


def test_c4free_rejects_high_rank():
    g = disjoint_union(star_graph(3), star_graph(4))  # C4-free, three main eigenvalues
    assert count_four_cycles(g) == 0 and rank_Q(walk_matrix(g)) > 2
    out = reconstruct_c4free_lowrank(deck(g))
    assert out.status == "not_applicable" and out.reason == "rank > 2"


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_c4free_stars_and_cycles(n):
    for g in (star_graph(n), cycle_graph(n)):
        if count_four_cycles(g):
            continue
        assert reconstruct_c4free_lowrank(deck(g)).pair == pair(g)


@settings(max_examples=60, deadline=None)
@given(graph_strategy(5, 9))
def test_c4free_verdicts(g):
    out = reconstruct_c4free_lowrank(deck(g))
    if count_four_cycles(g) == 0 and rank_Q(walk_matrix(g)) <= 2:
        assert out.ok and out.pair == pair(g)
    else:
        assert out.status == "not_applicable"


def test_outcome_json():
    out = ReconstructionOutcome.success(Poly((1, 0)), Poly((1, 0)))
    assert out.to_json() == {"status": "success", "phi": ["1", "0"], "phi_complement": ["1", "0"]}
    low = ReconstructionOutcome.rank_too_low(2)
    assert low.to_json()["threshold"] == 2 and not low.ok
    with pytest.raises(ValueError):
        low.pair
