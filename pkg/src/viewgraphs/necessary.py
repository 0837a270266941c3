"""Necessary conditions for solvability.

Degree rules, 2-connectivity, the edge budget, and the two deficiency tests:
every vertex subset must satisfy ``d(S) <= d(G)``, and so must the summed
deficiency of any family of edge-disjoint subgraphs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .counting import deficiency, e_min
from .graph import ViewingGraph, _bits, articulation_points, components

MAX_VERTICES = 16


class Rule(str, enum.Enum):
    MIN_DEGREE = "MinDegree"
    ADJACENT_DEGREE2 = "AdjacentDegree2"
    NOT_BICONNECTED = "NotBiconnected"
    TOO_FEW_EDGES = "TooFewEdges"
    SUBGRAPH_DEFICIENCY = "SubgraphDeficiency"
    DISJOINT_FAMILY_DEFICIENCY = "DisjointFamilyDeficiency"


@dataclass(frozen=True)
class NecessaryVerdict:
    passed: bool
    violated_rule: Rule | None = None
    witness: Any = None

    @classmethod
    def ok(cls) -> NecessaryVerdict:
        return cls(True)

    def to_json(self, base: int = 0) -> dict:
        return {
            "passed": self.passed,
            "violated_rule": self.violated_rule.value if self.violated_rule else None,
            "witness": _shift(self.witness, base),
        }


def _shift(obj, base):
    if obj is None:
        return None
    if isinstance(obj, int):
        return obj + base
    return [_shift(x, base) for x in obj]


class SearchTooLarge(ValueError):
    pass


def _guard(g: ViewingGraph) -> None:
    if g.n > MAX_VERTICES:
        raise SearchTooLarge(f"exhaustive subgraph search refused for n={g.n} > {MAX_VERTICES}")


def check_levi(g: ViewingGraph) -> NecessaryVerdict:
    """Degree rules: min degree 2, and no edge joining two degree-2 vertices.

    They only apply for n > 3; smaller graphs must be complete.
    """
    deg = g.degrees()
    if g.n <= 3:
        for v in range(g.n):
            if deg[v] < g.n - 1:
                return NecessaryVerdict(False, Rule.MIN_DEGREE, v)
        return NecessaryVerdict.ok()
    for v in range(g.n):
        if deg[v] < 2:
            return NecessaryVerdict(False, Rule.MIN_DEGREE, v)
    for a, b in g.edges:
        if deg[a] == 2 and deg[b] == 2:
            return NecessaryVerdict(False, Rule.ADJACENT_DEGREE2, (a, b))
    return NecessaryVerdict.ok()


def subset_edge_counts(g: ViewingGraph) -> list[int]:
    """``counts[S]`` = number of edges of the subgraph induced by bitmask ``S``."""
    counts = [0] * (1 << g.n)
    adj = g.adj
    for s in range(1, 1 << g.n):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        counts[s] = counts[rest] + (adj[v] & rest).bit_count()
    return counts


def subset_deficiency(g: ViewingGraph, vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    e = sum((g.adj[v] & mask).bit_count() for v in _bits(mask)) // 2
    return deficiency(mask.bit_count(), e)


def check_subgraph_deficiency(g: ViewingGraph) -> NecessaryVerdict:
    """Every vertex subset S (|S| >= 2) must have d(|S|, e(S)) <= d(n, e).

    Induced subgraphs suffice: dropping edges only lowers a subgraph's
    deficiency. The witness is the subset with the largest deficiency
    (smallest bitmask among ties).
    """
    _guard(g)
    bound = deficiency(g.n, g.e)
    counts = subset_edge_counts(g)
    best, best_s = bound, None
    for s in range(3, 1 << g.n):
        if s & (s - 1) == 0:
            continue
        d = 7 * counts[s] - 11 * s.bit_count() + 15
        if d > best:
            best, best_s = d, s
    if best_s is None:
        return NecessaryVerdict.ok()
    return NecessaryVerdict(False, Rule.SUBGRAPH_DEFICIENCY, tuple(_bits(best_s)))


def _connected_mask(adj, s: int) -> bool:
    start = s & -s
    seen = frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & s & ~seen
        seen |= frontier
    return seen == s


def _edge_mask(g: ViewingGraph, s: int) -> int:
    m = 0
    for k, (a, b) in enumerate(g.edges):
        if s >> a & 1 and s >> b & 1:
            m |= 1 << k
    return m


def positive_members(g: ViewingGraph) -> list[tuple[int, int, int]]:
    """Connected induced subgraphs with positive deficiency, as (d, vertex mask, edge mask)."""
    _guard(g)
    counts = subset_edge_counts(g)
    out = []
    for s in range(3, 1 << g.n):
        if s & (s - 1) == 0:
            continue
        d = 7 * counts[s] - 11 * s.bit_count() + 15
        if d >= 1 and _connected_mask(g.adj, s):
            out.append((d, s, _edge_mask(g, s)))
    out.sort(key=lambda t: (-t[0], t[1]))
    return out


def best_disjoint_family(
    g: ViewingGraph, k_max: int | None = None, stop_above: int | None = None
) -> tuple[int, list[int]]:
    """Largest summed deficiency over families of edge-disjoint members.

    Members are connected induced subgraphs with deficiency >= 1, at most
    ``k_max`` of them. Returns ``(sum, [vertex masks])``; the empty family
    scores 0. With ``stop_above`` the search ends at the first family whose
    sum exceeds it.
    """
    if k_max is None:
        k_max = max(1, g.e // 3)
    cands = positive_members(g)
    best = [0, []]
    chosen: list[int] = []
    full = (1 << g.e) - 1

    def dfs(start: int, used: int, total: int, depth: int) -> bool:
        if total > best[0]:
            best[0], best[1] = total, list(chosen)
            if stop_above is not None and total > stop_above:
                return True
        # each further member needs >= 3 unused edges
        room = min(k_max - depth, (full & ~used).bit_count() // 3)
        for i in range(start, len(cands)):
            d, s, em = cands[i]
            # members come in non-increasing deficiency order
            if total + d * room <= best[0]:
                return False
            if em & used:
                continue
            chosen.append(s)
            if dfs(i + 1, used | em, total + d, depth + 1):
                return True
            chosen.pop()
        return False

    dfs(0, 0, 0, 0)
    return best[0], best[1]


def check_disjoint_family(g: ViewingGraph, k_max: int | None = None) -> NecessaryVerdict:
    """Summed deficiency of edge-disjoint subgraphs must not exceed d(n, e).

    ``k_max`` caps the family size; it defaults to ``e // 3`` since every
    member with positive deficiency has at least three edges.
    """
    bound = deficiency(g.n, g.e)
    if g.e >= 1 and bound < 0:
        # a single edge already has deficiency 0
        a, b = g.edges[0]
        return NecessaryVerdict(False, Rule.DISJOINT_FAMILY_DEFICIENCY, ((a, b),))
    total, family = best_disjoint_family(g, k_max, stop_above=bound)
    if total > bound:
        return NecessaryVerdict(
            False, Rule.DISJOINT_FAMILY_DEFICIENCY, tuple(tuple(_bits(s)) for s in family)
        )
    return NecessaryVerdict.ok()


def check_all_necessary(g: ViewingGraph, k_max: int | None = None) -> NecessaryVerdict:
    """Connectivity, 2-connectivity, degree rules, edge budget, then both deficiency tests.

    The first failing rule is reported. Graphs that pass are *candidates*.
    """
    if g.n == 1:
        return NecessaryVerdict.ok()
    comps = components(g)
    if len(comps) > 1:
        return NecessaryVerdict(False, Rule.NOT_BICONNECTED, tuple(comps[0]))
    if g.n > 2:
        cut = articulation_points(g)
        if cut:
            return NecessaryVerdict(False, Rule.NOT_BICONNECTED, cut[0])
    v = check_levi(g)
    if not v.passed:
        return v
    if g.e < e_min(g.n):
        return NecessaryVerdict(False, Rule.TOO_FEW_EDGES, g.e)
    v = check_subgraph_deficiency(g)
    if not v.passed:
        return v
    return check_disjoint_family(g, k_max)


def witness_is_violation(g: ViewingGraph, verdict: NecessaryVerdict) -> bool:
    """Re-check a failing verdict's witness from scratch."""
    from .graph import is_connected

    rule, w = verdict.violated_rule, verdict.witness
    deg = g.degrees()
    if rule is Rule.MIN_DEGREE:
        return deg[w] < (g.n - 1 if g.n <= 3 else 2)
    if rule is Rule.ADJACENT_DEGREE2:
        a, b = w
        return g.n > 3 and g.has_edge(a, b) and deg[a] == 2 and deg[b] == 2
    if rule is Rule.NOT_BICONNECTED:
        if isinstance(w, int):
            rest = [v for v in range(g.n) if v != w]
            return not is_connected(g.induced(rest))
        return 0 < len(w) < g.n and all(g.adj[v] & ~sum(1 << u for u in w) == 0 for v in w)
    if rule is Rule.TOO_FEW_EDGES:
        return w == g.e and g.e < e_min(g.n)
    if rule is Rule.SUBGRAPH_DEFICIENCY:
        return subset_deficiency(g, w) > deficiency(g.n, g.e)
    if rule is Rule.DISJOINT_FAMILY_DEFICIENCY:
        if len(w) == 1 and len(w[0]) == 2 and g.has_edge(*w[0]):
            return deficiency(2, 1) > deficiency(g.n, g.e)
        masks = [sum(1 << v for v in member) for member in w]
        edge_sets = [_edge_mask(g, s) for s in masks]
        for i in range(len(edge_sets)):
            for j in range(i + 1, len(edge_sets)):
                if edge_sets[i] & edge_sets[j]:
                    return False
        return sum(subset_deficiency(g, m) for m in w) > deficiency(g.n, g.e)
    return False
