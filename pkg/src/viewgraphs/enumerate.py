"""Isomorph-free generation of connected graphs with a given vertex and edge count.

Canonical augmentation by edge addition: a child ``C = P + uv`` is kept only
when ``uv`` lies in the automorphism orbit of the canonical deletion edge of
``C``, and isomorphic siblings from the same parent are merged. Partial graphs
that can no longer become connected within the edge budget are pruned.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from .canonical import CanonicalForm, canonical_form, canonical_labeling
from .graph import ViewingGraph, _bits, is_connected, parse_graph, to_graph6

MAX_N = 10


def _components(adj: list[int]) -> int:
    n = len(adj)
    remaining = (1 << n) - 1
    count = 0
    while remaining:
        seen = frontier = remaining & -remaining
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        remaining &= ~seen
        count += 1
    return count


def _edge_key(adj: list[int], a: int, b: int) -> tuple[int, int, int]:
    da, db = adj[a].bit_count(), adj[b].bit_count()
    return (min(da, db), max(da, db), (adj[a] & adj[b]).bit_count())


def _marked(g: ViewingGraph, a: int, b: int) -> CanonicalForm:
    colors = [0] * g.n
    colors[a] = colors[b] = 1
    return canonical_form(g, colors)


def _is_canonical_child(adj: list[int], a: int, b: int) -> bool:
    """Is ``ab`` equivalent to the canonical deletion edge of the graph ``adj``?"""
    n = len(adj)
    mine = _edge_key(adj, a, b)
    best = []
    top = None
    for u in range(n):
        for v in _bits(adj[u] >> (u + 1) << (u + 1)):
            key = _edge_key(adj, u, v)
            if top is None or key > top:
                top, best = key, [(u, v)]
            elif key == top:
                best.append((u, v))
    if mine != top:
        return False
    if len(best) == 1:
        return True
    g = ViewingGraph.from_masks(adj)
    order = canonical_labeling(g)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    star = max(best, key=lambda e: sorted((pos[e[0]], pos[e[1]]), reverse=True))
    if star == (a, b) or star == (b, a):
        return True
    return _marked(g, a, b) == _marked(g, *star)


def enumerate_connected(n: int, e: int) -> Iterator[ViewingGraph]:
    """One canonically labelled representative per isomorphism class of connected (n, e) graphs."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"enumeration supports 1 <= n <= {MAX_N}, got n={n}")
    if not 0 <= e <= n * (n - 1) // 2:
        raise ValueError(f"edge count {e} out of range for n={n}")
    seen: set[bytes] = set()

    def grow(adj: list[int], k: int) -> Iterator[ViewingGraph]:
        if k == e:
            if _components(adj) == 1:
                g = ViewingGraph.from_masks(adj)
                form = canonical_form(g)
                assert form.bytes not in seen, "duplicate isomorphism class generated"
                seen.add(form.bytes)
                yield parse_graph(form.bytes.decode("ascii"), "graph6")
            return
        siblings: set[bytes] = set()
        for a in range(n):
            for b in range(a + 1, n):
                if adj[a] >> b & 1:
                    continue
                child = list(adj)
                child[a] |= 1 << b
                child[b] |= 1 << a
                if _components(child) - 1 > e - k - 1:
                    continue
                if not _is_canonical_child(child, a, b):
                    continue
                key = canonical_form(ViewingGraph.from_masks(child)).bytes
                if key in siblings:
                    continue
                siblings.add(key)
                yield from grow(child, k + 1)

    yield from grow([0] * n, 0)


def brute_force_connected(n: int, e: int) -> set[bytes]:
    """Canonical forms of all connected (n, e) graphs by exhausting edge subsets."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = set()
    for es in combinations(pairs, e):
        g = ViewingGraph(n, es)
        if is_connected(g):
            out.add(canonical_form(g).bytes)
    return out


def graph6_key(g: ViewingGraph) -> str:
    return to_graph6(g)
