import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from viewgraphs.graph import (
    GraphParseError,
    GraphValidationError,
    ViewingGraph,
    articulation_points,
    complete_graph,
    cycle_graph,
    degree,
    detect_format,
    is_biconnected,
    is_connected,
    parse_graph,
    path_graph,
    serialize_graph,
    to_graph6,
)

from conftest import random_graph


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return ViewingGraph(n, edges)


def test_parse_triangle():
    g = parse_graph("n=3; 0-1,1-2,0-2")
    assert g == complete_graph(3)
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_edge_list_whitespace_and_newlines():
    g = parse_graph("n = 4\n 0 - 1 ,\n1-2\n\n2-3;")
    assert g == path_graph(4)


def test_graph6_reference_decoder_agrees():
    g = parse_graph("D?{", "graph6")
    ref = nx.from_graph6_bytes(b"D?{")
    assert g.n == ref.number_of_nodes() == 5
    assert set(g.edges) == {tuple(sorted(e)) for e in ref.edges()}
    assert to_graph6(g) == "D?{"


def test_graph6_header_accepted():
    assert parse_graph(">>graph6<<D?{", "graph6") == parse_graph("D?{", "graph6")


@pytest.mark.parametrize("text,exc", [
    ("n=2; 0-0", GraphValidationError),
    ("n=2; 0-2", GraphValidationError),
    ("n=3; 0-1, 1-0", GraphValidationError),
    ("n=3; 0-1, a", GraphParseError),
    ("0-1", GraphParseError),
    ("n=0;", GraphValidationError),
])
def test_bad_edge_lists(text, exc):
    with pytest.raises(exc):
        parse_graph(text, "edge-list")


def test_parse_error_position():
    with pytest.raises(GraphParseError) as info:
        parse_graph("n=3; 0-1,\n 1-x", "edge-list")
    assert (info.value.line, info.value.column) == (2, 2)


@pytest.mark.parametrize("text", ["", "D?", "D?{{", "D? ", "~?"])
def test_bad_graph6(text):
    with pytest.raises((GraphParseError, GraphValidationError)):
        parse_graph(text, "graph6")


def test_one_based_labels():
    g = parse_graph("n=3; 1-2,2-3", base=1)
    assert g == path_graph(3)
    assert serialize_graph(g, "edge-list", base=1) == "n=3; 1-2,2-3"
    with pytest.raises(GraphValidationError):
        parse_graph("n=3; 0-1", base=1)


def test_single_vertex_graph6():
    assert parse_graph("@", "graph6") == ViewingGraph(1)


def test_detect_format():
    assert detect_format("n=3; 0-1") == "edge-list"
    assert detect_format("Bw") == "graph6"


@given(graphs())
def test_roundtrip(g):
    assert parse_graph(serialize_graph(g, "edge-list")) == g
    s = to_graph6(g)
    assert to_graph6(parse_graph(s, "graph6")) == s
    assert parse_graph(s, "graph6") == g


@given(graphs(max_n=9))
def test_graph6_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    assert nx.to_graph6_bytes(h, header=False).strip() == to_graph6(g).encode()


def test_large_n_graph6_prefix():
    g = path_graph(70)
    assert to_graph6(g)[0] == "~"
    assert parse_graph(to_graph6(g), "graph6") == g


def test_connectivity_examples():
    bowtie = ViewingGraph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert is_connected(bowtie) and not is_biconnected(bowtie)
    assert articulation_points(bowtie) == [2]
    assert is_biconnected(cycle_graph(4))
    assert [degree(complete_graph(3), v) for v in range(3)] == [2, 2, 2]
    assert is_biconnected(ViewingGraph(2, [(0, 1)]))
    assert not is_biconnected(ViewingGraph(2))


@given(graphs(max_n=10))
def test_biconnected_implies_connected(g):
    if is_biconnected(g):
        assert is_connected(g)


def test_articulation_points_match_networkx():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        assert is_connected(g) == nx.is_connected(h)
        assert sorted(articulation_points(g)) == sorted(nx.articulation_points(h))


def test_relabel_and_induced():
    g = path_graph(3)
    h = g.relabel([2, 0, 1])  # vertex v becomes perm[v]
    assert h.edges == ((0, 1), (0, 2))
    assert g.induced([0, 1]).edges == ((0, 1),)
