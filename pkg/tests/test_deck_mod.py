import pytest
from hypothesis import given, settings

from conftest import C4, C5, K3, K4, P3, P4, S6, graph_strategy
from polyrecon.deck_mod import (
    base_mod_data,
    constant_mod2,
    corollary2_check,
    deck_mod_report,
    gram_rows_mod4,
    theorem4,
    theorem5,
    theorem5_applicable,
)
from polyrecon.errors import InconsistentDeckError, NotApplicableError
from polyrecon.graph import complement, cycle_graph, disjoint_union, empty_graph, parse_graph6, path_graph, star_graph
from polyrecon.poly import Deck, Poly, Zmod, charpoly, deck
from polyrecon.walks import rank_F2, walk_matrix

Z4 = Zmod(4)


def test_base_mod_data_examples():
    data = base_mod_data(deck(P4))
    assert data.w_mod4.coeffs == (0, 2)
    assert [r.coeffs for r in data.rows_mod2] == [(1, 1), (1, 0), (1, 0), (1, 1)]
    assert data.phi_top == (1, 0, -3, 0)
    assert data.traces[:4] == [4, 0, 6, 0]
    data = base_mod_data(deck(K3))
    assert data.w_mod4.coeffs == (3, 2)
    assert [r.coeffs for r in data.rows_mod2] == [(1, 0)] * 3
    data = base_mod_data(deck(empty_graph(4)))
    assert data.w_mod4.coeffs == (0, 0)
    assert [r.coeffs for r in data.rows_mod2] == [(1, 0)] * 4


def test_base_mod_data_needs_full_integer_cards():
    with pytest.raises(ValueError):
        base_mod_data(deck(P4, truncate=3))
    with pytest.raises(ValueError):
        base_mod_data(deck(P4, modulus=4))
    with pytest.raises(ValueError):
        base_mod_data(deck(path_graph(2)))


def test_gram_rows_mod4():
    assert gram_rows_mod4([0, 0, 0]) == 0
    assert gram_rows_mod4([1, 0, 0, 1]) == 2
    assert gram_rows_mod4([1] * 7) == 3
    assert gram_rows_mod4([3, 5, 2]) == 2  # only residues mod 2 matter


def test_constant_mod2_examples():
    assert constant_mod2(deck(K4)).value == 1
    assert constant_mod2(deck(C4)).value == 0
    assert constant_mod2(deck(S6)).value == 0
    odd = constant_mod2(deck(C5))
    assert odd.value == 0 and odd.forced


def test_constant_mod2_undetermined_case():
    # n = 6, every b_k with k = 2 (mod 4) even, first three walk columns independent mod 2
    g = parse_graph6("E?Cw")
    assert charpoly(g).b(2) % 2 == 0
    with pytest.raises(NotApplicableError):
        constant_mod2(deck(g))
    report = deck_mod_report(deck(g))
    assert report.theorem4 is None and "not determined" in report.reason
    assert report.to_json()["status"] == "not_applicable"


def test_theorem4_examples():
    out = theorem4(deck(P4))
    assert out.bn_mod2 == 1
    assert out.walk_matrix_mod2 == ((1, 1, 1, 1), (1, 0, 0, 1), (0, 1, 1, 0), (1, 1, 1, 1))
    assert out.phibar_top_mod4 == (1, 0, 1, 0)
    assert out.phibar_const_mod2 == 1
    out = theorem4(deck(K3))
    assert out.bn_mod2 == 0
    assert out.walk_matrix_mod2 == ((1, 1, 1), (0, 0, 0), (0, 0, 0))
    assert out.phibar_top_mod4 == (1, 0, 0)
    assert out.phibar_const_mod2 == 0
    out = theorem4(deck(empty_graph(4)))
    assert out.walk_matrix_mod2 == ((1, 1, 1, 1),) + ((0, 0, 0, 0),) * 3
    assert out.phibar_top_mod4 == (1, 0, 2, 0)  # K4: x^4 - 6x^2 - 8x - 3
    assert out.phibar_const_mod2 == 1


def test_theorem5_examples():
    out = theorem5(deck(C4))
    assert out.const_mod4 == 0 and out.phibar_mod4.coeffs == (1, 0, 2, 0, 1)
    out = theorem5(deck(K4))
    assert out.const_mod4 == 1 and out.phibar_mod4 == Poly.monomial(4, Z4)
    out = theorem5(deck(C5))
    assert out.const_mod4 == 2 and out.phibar_mod4 == charpoly(C5).reduce(4)


def test_theorem5_not_applicable_for_odd_full_f2_rank():
    p5 = path_graph(5)
    assert rank_F2(walk_matrix(p5)) == 3
    assert not theorem5_applicable(5, 3)
    with pytest.raises(NotApplicableError):
        theorem5(deck(p5))
    report = deck_mod_report(deck(p5))
    assert report.theorem4 is not None and report.theorem5 is None
    assert report.to_json()["theorem5"] == "not_applicable"


def test_star_and_empty_graph_share_mod4_deck():
    for n in (6, 10):
        star, empty = star_graph(n), empty_graph(n)
        assert deck(star, modulus=4).fingerprint() == deck(empty, modulus=4).fingerprint()
        assert deck(star).fingerprint() != deck(empty).fingerprint()
        if n == 6:
            a, b = theorem5(deck(star)), theorem5(deck(empty))
            assert (a.const_mod4, a.phibar_mod4) != (b.const_mod4, b.phibar_mod4)
            assert a.phibar_mod4 == charpoly(complement(star)).reduce(4)
            assert b.phibar_mod4 == charpoly(complement(empty)).reduce(4)


def test_corrupted_deck_is_rejected():
    d = deck(C4)
    cards = list(d.cards)
    cards[0] = (1, 0, -3, 2)
    with pytest.raises(InconsistentDeckError):
        theorem4(Deck(4, tuple(cards)))


def _check_against_direct(g):
    n = g.n
    phi, phibar = charpoly(g), charpoly(complement(g))
    try:
        report = deck_mod_report(deck(g))
    except NotApplicableError:
        return
    if report.theorem4 is None:
        return
    w = walk_matrix(g)
    t4 = report.theorem4
    assert t4.bn_mod2 == phi.b(n) % 2
    assert t4.walk_matrix_mod2 == tuple(tuple(x % 2 for x in c) for c in w.columns)
    assert t4.phibar_top_mod4 == tuple(c % 4 for c in phibar.coeffs[:n])
    assert t4.phibar_const_mod2 == phibar.coeffs[-1] % 2
    assert (report.theorem5 is not None) == theorem5_applicable(n, rank_F2(w))
    if report.theorem5 is not None:
        assert report.theorem5.const_mod4 == phi.coeffs[-1] % 4
        assert report.theorem5.phibar_mod4 == phibar.reduce(4)


@settings(max_examples=50, deadline=None)
@given(graph_strategy(3, 10))
def test_mod_outputs_match_direct_computation(g):
    _check_against_direct(g)


def test_corollary_checker():
    assert corollary2_check(P4, P4).kind == "cospectral"
    assert corollary2_check(P3, K3).kind == "decks differ"
    # cospectral (x^5 - 4x^3) but with different decks
    saltire = star_graph(5), disjoint_union(cycle_graph(4), empty_graph(1))
    assert charpoly(saltire[0]) == charpoly(saltire[1])
    assert corollary2_check(*saltire).kind == "decks differ"
    with pytest.raises(ValueError):
        corollary2_check(P3, P4)
