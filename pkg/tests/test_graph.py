import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import K3, K4, P3, P4, S4, graph_strategy
from polyrecon.errors import Graph6Error
from polyrecon.graph import (
    Graph,
    closed_walk_counts,
    complement,
    complete_graph,
    count_four_cycles,
    delete_vertex,
    emit_graph6,
    empty_graph,
    parse_graph6,
    read_graph,
    walk_counts,
    walk_totals,
)
from polyrecon.oracle import isomorphic


def test_graph6_examples():
    assert parse_graph6("Bw") == K3
    assert parse_graph6("@") == empty_graph(1)
    assert parse_graph6("Bg") == P3
    assert emit_graph6(K3) == "Bw"
    assert emit_graph6(empty_graph(1)) == "@"
    assert emit_graph6(P3) == "Bg"


def test_graph6_header_prefix_and_bytes():
    assert parse_graph6(">>graph6<<Bw") == K3
    assert parse_graph6(b"Bw\n") == K3


@pytest.mark.parametrize("text, offset", [
    ("", 0),
    ("B", 1),           # truncated bit field
    ("Bww", 2),         # trailing byte
    ("B\x01", 1),       # non-printable
    ("Bx", 1),          # padding bit set
])
def test_graph6_errors_name_offset(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


@given(graph_strategy(1, 12))
def test_graph6_roundtrip_matches_networkx(g):
    text = emit_graph6(g)
    assert parse_graph6(text) == g
    h = nx.from_graph6_bytes(text.encode())
    assert sorted(tuple(sorted(e)) for e in h.edges()) == g.edges()


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(0, ())
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])


def test_complement_examples():
    assert complement(K3) == empty_graph(3)
    assert complement(empty_graph(5)) == complete_graph(5)
    pbar = complement(P4)
    assert pbar.edges() == [(0, 2), (0, 3), (1, 3)]
    assert isomorphic(pbar, P4)


def test_delete_vertex_examples():
    assert delete_vertex(P3, 1) == empty_graph(2)
    assert all(delete_vertex(K4, i) == K3 for i in range(4))
    assert delete_vertex(S4, 0) == empty_graph(3)
    with pytest.raises(IndexError):
        delete_vertex(K3, 3)
    with pytest.raises(ValueError):
        delete_vertex(empty_graph(1), 0)


@given(graph_strategy(2, 8))
def test_delete_then_complement_commutes(g):
    for i in range(g.n):
        assert complement(delete_vertex(g, i)) == delete_vertex(complement(g), i)


def test_walk_count_examples():
    assert walk_counts(K3, 3) == [[2 ** k] * 3 for k in range(4)]
    assert walk_counts(P3, 2) == [[1, 1, 1], [1, 2, 1], [2, 2, 2]]
    assert walk_counts(P4, 0) == [[1, 1, 1, 1]]


def test_closed_walk_examples():
    _, tr = closed_walk_counts(K3, 4)
    assert tr[2:] == [6, 6, 18]
    _, tr = closed_walk_counts(P3, 4)
    assert (tr[2], tr[4]) == (4, 8)
    _, tr = closed_walk_counts(empty_graph(4), 5)
    assert tr[1:] == [0] * 5


@settings(max_examples=60)
@given(graph_strategy(1, 6))
def test_gram_identity_and_even_walks(g):
    cols = walk_counts(g, 8)
    totals = walk_totals(g, 16)
    for k in range(9):
        assert sum(cols[k]) == totals[k]
        for l in range(9):
            assert sum(a * b for a, b in zip(cols[k], cols[l])) == totals[k + l]
    assert all(w % 2 == 0 for w in totals[1:])


@given(graph_strategy(1, 8))
def test_four_cycles_match_networkx(g):
    h = nx.Graph(g.edges())
    h.add_nodes_from(range(g.n))
    expected = sum(1 for c in nx.simple_cycles(h, length_bound=4) if len(c) == 4)
    assert count_four_cycles(g) == expected


def test_read_graph_from_edge_list(tmp_path):
    path = tmp_path / "p3.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    assert read_graph(str(path)) == P3
    path.write_text("Bw\n")
    assert read_graph(str(path)) == K3
    assert read_graph("Bg") == P3
