"""Edge budgets for minimal solvable graphs and the gluing construction."""

from __future__ import annotations

from .graph import ViewingGraph, parse_graph


def e_min(n: int) -> int:
    """Fewest edges a solvable viewing graph on ``n`` views can have."""
    if n < 2:
        raise ValueError(f"e_min needs n >= 2, got {n}")
    return -((15 - 11 * n) // 7)


def deficiency(n: int, e: int) -> int:
    """Number of constraints ``7e - 11n + 15`` on the fundamental matrices."""
    return 7 * e - 11 * n + 15


def glue(
    g1: ViewingGraph,
    g2: ViewingGraph,
    pair1: tuple[int, int],
    pair2: tuple[int, int],
) -> ViewingGraph:
    """Disjoint union with ``pair2[k]`` of ``g2`` identified onto ``pair1[k]`` of ``g1``.

    The vertices of ``g1`` keep their labels; the remaining vertices of ``g2``
    follow in increasing order. Coinciding edges are merged.
    """
    if pair1[0] == pair1[1] or pair2[0] == pair2[1]:
        raise ValueError("glue pairs must consist of two distinct vertices")
    for v in pair1:
        if not 0 <= v < g1.n:
            raise ValueError(f"vertex {v} not in first graph")
    for v in pair2:
        if not 0 <= v < g2.n:
            raise ValueError(f"vertex {v} not in second graph")
    mapping = {pair2[0]: pair1[0], pair2[1]: pair1[1]}
    nxt = g1.n
    for v in range(g2.n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    edges = set(g1.edges)
    for a, b in g2.edges:
        a, b = mapping[a], mapping[b]
        edges.add((min(a, b), max(a, b)))
    return ViewingGraph(nxt, edges)


# Smallest (by canonical form) moves-solvable graph with e_min(n) edges, for
# n = 4..9, as produced by the census (see tests/test_counting.py, which
# re-derives the entries).
BASE_CATALOG_G6 = {
    2: "A_",
    3: "Bw",
    4: "C^",
    5: "DFw",
    6: "E?~o",
    7: "F?NN_",
    8: "G??^No",
    9: "H??@}Zo",
}


def base_graph(n: int) -> ViewingGraph:
    try:
        return parse_graph(BASE_CATALOG_G6[n], "graph6")
    except KeyError:
        raise ValueError(f"no base graph for n={n}") from None


def minimal_solvable(n: int) -> ViewingGraph:
    """A moves-solvable graph with ``n`` vertices and ``e_min(n)`` edges.

    For n <= 9 this is a catalog entry; larger n is written ``7q + r`` with
    ``2 <= r <= 8`` and the 9-vertex base is glued ``q`` times onto the
    ``r``-vertex base along the lexicographically smallest edges.
    """
    if n < 2:
        raise ValueError(f"minimal_solvable needs n >= 2, got {n}")
    if n <= 9:
        return base_graph(n)
    q, r = divmod(n - 2, 7)
    r += 2
    g = base_graph(r)
    g0 = base_graph(9)
    for _ in range(q):
        g = glue(g, g0, g.edges[0], g0.edges[0])
    return g
