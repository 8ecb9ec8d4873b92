import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import K3, K4, P3, P4, S4, graph_strategy
from polyrecon.errors import InconsistentDeckError, NotInvertibleError
from polyrecon.graph import complement, delete_vertex, empty_graph, star_graph
from polyrecon.poly import (
    QQ,
    ZZ,
    Deck,
    Poly,
    Zmod,
    charpoly,
    deck,
    derivative,
    integrate_deck,
    substitute_neg_shift,
)


def sympy_charpoly(g):
    x = sympy.Symbol("x")
    return tuple(int(c) for c in sympy.Matrix(g.adjacency_matrix()).charpoly(x).all_coeffs())


def test_ring_arithmetic():
    z4 = Zmod(4)
    assert z4(-3) == 1
    assert z4.inverse(3) == 3
    with pytest.raises(NotInvertibleError):
        z4.inverse(2)
    assert ZZ.div(6, 3) == 2
    with pytest.raises(NotInvertibleError):
        ZZ.div(7, 2)
    assert QQ.div(7, 2) * 2 == 7
    with pytest.raises(ValueError):
        Zmod(1)


def test_poly_basics():
    p = Poly((1, 0, -3, -2))
    assert p.degree == 3
    assert p.bs == (0, -3, 2)
    assert p.coeff(1) == -3
    assert str(p) == "x^3 - 3x - 2"
    assert (p - p).is_zero
    assert Poly((1, 1)) * Poly((1, -1)) == Poly((1, 0, -1))
    assert p.reduce(4).coeffs == (1, 0, 1, 2)
    assert p.to_json() == ["1", "0", "-3", "-2"]


def test_charpoly_examples():
    assert charpoly(K3).coeffs == (1, 0, -3, -2)
    for n in range(2, 8):
        assert charpoly(star_graph(n)).coeffs == (1, 0, -(n - 1)) + (0,) * (n - 2)
        assert charpoly(empty_graph(n)) == Poly.monomial(n)


@settings(max_examples=80)
@given(graph_strategy(1, 6))
def test_charpoly_matches_symbolic_determinant(g):
    assert charpoly(g).coeffs == sympy_charpoly(g)


@given(graph_strategy(1, 8))
def test_odd_coefficients_even(g):
    phi = charpoly(g)
    assert phi.b(1) == 0
    assert all(phi.b(k) % 2 == 0 for k in range(1, g.n + 1, 2))


def test_substitute_neg_shift_examples():
    assert substitute_neg_shift(Poly.monomial(3), 3).coeffs == (1, 3, 3, 1)
    assert substitute_neg_shift(Poly.monomial(4), 4).coeffs == (1, 4, 6, 4, 1)
    assert substitute_neg_shift(Poly((1, 0, -1, 0)), 3).coeffs == (1, 3, 2, 0)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=8), st.integers(0, 9))
def test_substitute_neg_shift_is_involution(tail, n):
    p = Poly((1,) + tuple(tail))
    assert substitute_neg_shift(substitute_neg_shift(p, n), n) == p


def test_derivative_examples():
    assert derivative(Poly((1, 0, -3, 0, 1))).coeffs == (4, 0, -6, 0)
    assert derivative(Poly((5,))).is_zero
    assert derivative(Poly((1, 0, -2, 0))).coeffs == (3, 0, -2)


def test_deck_examples():
    assert sorted(deck(P3).cards) == sorted([(1, 0, 0), (1, 0, -1), (1, 0, -1)])
    assert sorted(deck(S4).cards) == sorted([(1, 0, 0, 0)] + [(1, 0, -2, 0)] * 3)
    d = deck(K3, generalized=True)
    assert d.cards == ((1, 0, -1),) * 3
    assert d.co_cards == ((1, 0, 0),) * 3


def test_deck_truncation_and_json():
    d = deck(P4, generalized=True, truncate_co=2, truncate=3)
    assert d.s == 2 and d.t == 3
    assert all(len(c) == 2 for c in d.co_cards)
    assert Deck.from_json(d.to_json()) == d
    full = deck(P4, generalized=True)
    assert full.truncated(s=2, t=3) == d
    assert deck(P4, truncate=10) == deck(P4)
    assert deck(K3, modulus=4).cards == ((1, 0, 3),) * 3
    with pytest.raises(ValueError):
        deck(empty_graph(1))


def test_deck_rejects_bad_shapes():
    with pytest.raises(ValueError):
        Deck(3, ((1, 0, 0),) * 2)
    with pytest.raises(InconsistentDeckError):
        Deck(2, ((2, 0), (1, 0)))


def test_integrate_deck_examples():
    assert integrate_deck(deck(P3)) == (1, 0, -2)
    assert integrate_deck(deck(S4)) == (1, 0, -3, 0)
    assert integrate_deck(deck(K4)) == (1, 0, -6, -8)


def test_integrate_deck_detects_non_derivative():
    bad = Deck(3, ((1, 0, 0), (1, 0, 0), (1, 1, 0)))
    with pytest.raises(InconsistentDeckError):
        integrate_deck(bad)


@given(graph_strategy(2, 8))
def test_deck_derivative_identity(g):
    d = deck(g, generalized=True)
    total = tuple(sum(col) for col in zip(*d.cards))
    assert total == derivative(charpoly(g)).coeffs
    assert integrate_deck(d) == charpoly(g).coeffs[:-1]
    gbar = complement(g)
    assert d.co_cards == tuple(charpoly(delete_vertex(gbar, i)).coeffs for i in range(g.n))
