import pytest

from viewgraphs.canonical import canonical_form
from viewgraphs.counting import BASE_CATALOG_G6, base_graph, deficiency, e_min, glue, minimal_solvable
from viewgraphs.enumerate import enumerate_connected
from viewgraphs.graph import ViewingGraph, complete_graph, cycle_graph
from viewgraphs.moves import solvable_with_moves
from viewgraphs.necessary import check_all_necessary

TABLE_E = [1, 3, 5, 6, 8, 9, 11, 12, 14, 16, 17, 19, 20, 22, 23]
TABLE_D = [0, 3, 6, 2, 5, 1, 4, 0, 3, 6, 2, 5, 1, 4, 0]


def e_min_oracle(n):
    e = 0
    while deficiency(n, e) < 0:
        e += 1
    return e


def test_table_rows():
    assert [e_min(n) for n in range(2, 17)] == TABLE_E
    assert [deficiency(n, e_min(n)) for n in range(2, 17)] == TABLE_D


@pytest.mark.parametrize("n", range(2, 101))
def test_e_min_is_smallest_nonnegative_deficiency(n):
    assert e_min(n) == e_min_oracle(n)
    assert 0 <= deficiency(n, e_min(n)) <= 6
    if n >= 5:
        assert e_min(n) < 2 * n - 3


def test_domain():
    with pytest.raises(ValueError):
        e_min(1)
    assert deficiency(9, 12) == 0
    assert deficiency(3, 3) == 3
    assert deficiency(2, 1) == 0
    assert deficiency(9, 1) < 0


def test_glue_counts():
    k3 = complete_graph(3)
    g = glue(k3, k3, (0, 1), (0, 1))
    assert (g.n, g.e) == (4, 5)
    path = ViewingGraph(3, [(0, 1), (1, 2)])
    g = glue(path, path, (0, 2), (0, 2))
    assert (g.n, g.e) == (4, 4)
    assert g == cycle_graph(4)


def test_glue_base_adds_seven_and_eleven():
    g0 = base_graph(9)
    for n in (2, 3, 5, 8):
        g = base_graph(n)
        h = glue(g, g0, g.edges[0], g0.edges[0])
        assert (h.n, h.e) == (g.n + 7, g.e + 11)


def test_glue_rejects_degenerate_pairs():
    k3 = complete_graph(3)
    with pytest.raises(ValueError):
        glue(k3, k3, (0, 0), (0, 1))
    with pytest.raises(ValueError):
        glue(k3, k3, (0, 1), (2, 2))
    with pytest.raises(ValueError):
        glue(k3, k3, (0, 3), (0, 1))


def test_catalog_rederived_from_enumeration():
    for n in range(4, 10):
        e = e_min(n)
        best = min(
            canonical_form(g).bytes for g in enumerate_connected(n, e) if solvable_with_moves(g)
        )
        assert best.decode() == BASE_CATALOG_G6[n]


def test_small_constructions():
    assert minimal_solvable(3) == complete_graph(3)
    assert minimal_solvable(2) == complete_graph(2)
    g = minimal_solvable(10)
    assert (g.n, g.e) == (10, 14)
    g = minimal_solvable(16)
    assert (g.n, g.e) == (16, 23)
    with pytest.raises(ValueError):
        minimal_solvable(1)


@pytest.mark.parametrize("n", range(2, 31))
def test_minimal_solvable_up_to_30(n):
    g = minimal_solvable(n)
    assert (g.n, g.e) == (n, e_min(n))
    assert solvable_with_moves(g)
    if n <= 16:
        assert check_all_necessary(g).passed
