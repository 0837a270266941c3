"""Canonical labelling by colour refinement and individualisation search.

A small McKay-style scheme: equitable refinement of an ordered partition,
branching on the first smallest non-singleton cell, and pruning with the
automorphisms discovered at the leaves. The canonical code is the
lexicographically largest adjacency code over all explored leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import ViewingGraph, _bits, to_graph6


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-invariant label: the graph6 bytes of the canonical relabelling."""

    bytes: bytes

    def __str__(self) -> str:
        return self.bytes.decode("ascii")


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Equitable refinement of an ordered partition given as cell bitmasks."""
    cells = list(cells)
    i = 0
    # each pass uses every cell as a splitter; restart whenever anything splits
    while i < len(cells):
        splitter = cells[i]
        changed = False
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[int, int] = {}
            for v in _bits(cell):
                k = (adj[v] & splitter).bit_count()
                groups[k] = groups.get(k, 0) | (1 << v)
            if len(groups) == 1:
                out.append(cell)
            else:
                changed = True
                out.extend(groups[k] for k in sorted(groups))
        if changed:
            cells = out
            i = 0
        else:
            i += 1
    return cells


def _code(adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        m = 0
        for w in _bits(adj[v]):
            m |= 1 << (len(order) - 1 - pos[w])
        out.append(m)
    return tuple(out)


class _Search:
    def __init__(self, adj: Sequence[int]):
        self.adj = adj
        self.n = len(adj)
        self.first: tuple | None = None
        self.first_order: list[int] = []
        self.first_prefix: list[int] = []
        self.best: tuple | None = None
        self.best_order: list[int] = []
        self.autos: list[list[int]] = []

    def _orbits(self, fixed: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.autos:
            if all(gamma[v] == v for v in fixed):
                for v in range(self.n):
                    a, b = find(v), find(gamma[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def run(self, cells: list[int], prefix: list[int]) -> int:
        """Explore the subtree; return the depth to unwind to (or len(prefix))."""
        depth = len(prefix)
        cells = _refine(self.adj, cells)
        if all(c & (c - 1) == 0 for c in cells):
            return self._leaf([c.bit_length() - 1 for c in cells], prefix)
        target_idx = min(
            (i for i, c in enumerate(cells) if c & (c - 1)),
            key=lambda i: (cells[i].bit_count(), i),
        )
        target = cells[target_idx]
        explored: list[int] = []
        for v in _bits(target):
            if explored:
                orbit = self._orbits(prefix)
                if any(orbit[v] == orbit[u] for u in explored):
                    continue
            explored.append(v)
            bit = 1 << v
            child = cells[:target_idx] + [bit, target & ~bit] + cells[target_idx + 1:]
            back = self.run(child, prefix + [v])
            if back < depth:
                return back
        return depth

    def _leaf(self, order: list[int], prefix: list[int]) -> int:
        depth = len(prefix)
        code = _code(self.adj, order)
        if self.first is None:
            self.first = self.best = code
            self.first_order = self.best_order = order
            self.first_prefix = prefix
            return depth
        if code == self.first:
            gamma = [0] * self.n
            for a, b in zip(order, self.first_order):
                gamma[a] = b
            self.autos.append(gamma)
            # the branch equals the first path's branch at the point they diverge
            div = 0
            while prefix[div] == self.first_prefix[div]:
                div += 1
            return div
        if code == self.best:
            gamma = [0] * self.n
            for a, b in zip(order, self.best_order):
                gamma[a] = b
            self.autos.append(gamma)
        elif code > self.best:
            self.best = code
            self.best_order = order
        return depth


def canonical_labeling(g: ViewingGraph, colors: Sequence[int] | None = None) -> list[int]:
    """Canonical order of the vertices (position -> vertex).

    ``colors`` optionally restricts the search to colour-preserving labellings;
    cells are ordered by colour value.
    """
    n = g.n
    if colors is None:
        cells = [(1 << n) - 1]
    else:
        by_color: dict[int, int] = {}
        for v, c in enumerate(colors):
            by_color[c] = by_color.get(c, 0) | (1 << v)
        cells = [by_color[c] for c in sorted(by_color)]
    search = _Search(g.adj)
    search.run(cells, [])
    return search.best_order


def canonical_graph(g: ViewingGraph, colors: Sequence[int] | None = None) -> ViewingGraph:
    order = canonical_labeling(g, colors)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def canonical_form(g: ViewingGraph, colors: Sequence[int] | None = None) -> CanonicalForm:
    """Isomorphism-invariant label of ``g`` (of the coloured graph when ``colors`` is given)."""
    order = canonical_labeling(g, colors)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    key = to_graph6(g.relabel(perm))
    if colors is not None:
        key += ":" + ",".join(str(colors[v]) for v in order)
    return CanonicalForm(key.encode("ascii"))


def are_isomorphic(g: ViewingGraph, h: ViewingGraph) -> bool:
    return g.n == h.n and g.e == h.e and canonical_form(g) == canonical_form(h)
