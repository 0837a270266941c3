"""Viewing graphs: representation, text formats and basic graph algorithms."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator


class GraphParseError(ValueError):
    """Malformed graph text. Carries the 1-based line and column of the problem."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class GraphValidationError(ValueError):
    pass


@dataclass(frozen=True)
class ViewingGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as a sorted tuple of ``(i, j)`` pairs with ``i < j``, so
    iteration order is deterministic. Instances are immutable.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 1:
            raise GraphValidationError(f"vertex count must be >= 1, got {n}")
        seen = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise GraphValidationError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphValidationError(f"edge {a}-{b} out of range for n={n}")
            pair = (a, b) if a < b else (b, a)
            if pair in seen:
                raise GraphValidationError(f"duplicate edge {pair[0]}-{pair[1]}")
            seen.add(pair)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_masks(cls, adj: list[int]) -> ViewingGraph:
        n = len(adj)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i] >> j & 1]
        return cls(n, edges)

    @property
    def e(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        masks = [0] * self.n
        for a, b in self.edges:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.adj]

    def relabel(self, perm: list[int]) -> ViewingGraph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return ViewingGraph(self.n, [(perm[a], perm[b]) for a, b in self.edges])

    def induced(self, vertices: Iterable[int]) -> ViewingGraph:
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return ViewingGraph(
            len(keep),
            [(index[a], index[b]) for a, b in self.edges if a in index and b in index],
        )

    def __repr__(self) -> str:
        return f"ViewingGraph({serialize_graph(self, 'edge-list')!r})"

    # cached_property needs a __dict__; frozen dataclass still has one
    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def degree(g: ViewingGraph, v: int) -> int:
    return g.adj[v].bit_count()


def components(g: ViewingGraph) -> list[list[int]]:
    remaining = (1 << g.n) - 1
    comps = []
    while remaining:
        start = remaining & -remaining
        seen = frontier = start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        comps.append(_bits(seen))
        remaining &= ~seen
    return comps


def is_connected(g: ViewingGraph) -> bool:
    return len(components(g)) == 1


def articulation_points(g: ViewingGraph) -> list[int]:
    """Cut vertices via the classic low-link DFS (iterative)."""
    disc = [-1] * g.n
    low = [0] * g.n
    cut = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack: list[tuple[int, int, Iterator[int]]] = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cut.add(p)
        if root_children > 1:
            cut.add(root)
    return sorted(cut)


def is_biconnected(g: ViewingGraph) -> bool:
    """2-connectivity; for n <= 2 this is plain connectivity."""
    if not is_connected(g):
        return False
    if g.n <= 2:
        return True
    return not articulation_points(g)


# ---------------------------------------------------------------- formats

_EDGE_RE = re.compile(r"\s*(-?\d+)\s*-\s*(-?\d+)\s*")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _parse_edge_list(text: str, base: int) -> ViewingGraph:
    head = re.match(r"\s*n\s*=\s*(\d+)\s*(;|\n|$)", text)
    if head is None:
        raise GraphParseError("expected header 'n=<count>;'", *_position(text, 0))
    n = int(head.group(1))
    edges = []
    pos = head.end()
    for m in re.finditer(r"[^,\n;]+", text[pos:]):
        token = m.group(0)
        if not token.strip():
            continue
        offset = pos + m.start()
        em = _EDGE_RE.fullmatch(token)
        if em is None:
            lead = len(token) - len(token.lstrip())
            raise GraphParseError(f"bad edge token {token.strip()!r}", *_position(text, offset + lead))
        la, lb = int(em.group(1)), int(em.group(2))
        line, col = _position(text, offset)
        where = f" (line {line}, column {col})"
        if la == lb:
            raise GraphValidationError(f"self-loop at vertex {la}{where}")
        for lab in (la, lb):
            if not base <= lab < n + base:
                raise GraphValidationError(
                    f"vertex {lab} out of range {base}..{n + base - 1}{where}"
                )
        pair = (min(la, lb) - base, max(la, lb) - base)
        if pair in edges:
            raise GraphValidationError(f"duplicate edge {la}-{lb}{where}")
        edges.append(pair)
    return ViewingGraph(n, edges)


def _graph6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphParseError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 4 and data[1] != 126:
        return ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63), 4
    if len(data) >= 8:
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    raise GraphParseError("truncated graph6 size prefix")


def _parse_graph6(text: str) -> ViewingGraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise GraphParseError(f"invalid graph6 byte {chr(c)!r}", 1, i + 1)
    n, start = _graph6_size(data)
    nbits = n * (n - 1) // 2
    body = data[start:]
    if len(body) != (nbits + 5) // 6:
        raise GraphParseError(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}",
            1, start + 1,
        )
    bits = 0
    for c in body:
        bits = (bits << 6) | (c - 63)
    bits >>= len(body) * 6 - nbits
    edges = []
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                edges.append((i, j))
            k -= 1
    return ViewingGraph(n, edges)


def to_graph6(g: ViewingGraph) -> str:
    n = g.n
    if n < 63:
        out = [n + 63]
    elif n < 258048:
        out = [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    else:
        out = [126, 126] + [(n >> s & 63) + 63 for s in range(30, -1, -6)]
    adj = g.adj
    bits = 0
    nbits = 0
    for j in range(1, n):
        for i in range(j):
            bits = (bits << 1) | (adj[i] >> j & 1)
            nbits += 1
    pad = -nbits % 6
    bits <<= pad
    nbits += pad
    for s in range(nbits - 6, -1, -6):
        out.append((bits >> s & 63) + 63)
    return bytes(out).decode("ascii")


def detect_format(text: str) -> str:
    return "edge-list" if re.match(r"\s*n\s*=", text) else "graph6"


def parse_graph(text: str, format: str | None = None, base: int = 0) -> ViewingGraph:
    """Parse ``edge-list`` (``n=K; a-b, c-d``) or ``graph6`` text.

    ``base`` is the label of the first vertex in edge-list input (1 for the
    labelling used in figures); graph6 is always 0-based.
    """
    fmt = format or detect_format(text)
    if fmt == "edge-list":
        return _parse_edge_list(text, base)
    if fmt == "graph6":
        return _parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def serialize_graph(g: ViewingGraph, format: str = "edge-list", base: int = 0) -> str:
    if format == "graph6":
        return to_graph6(g)
    if format == "edge-list":
        body = ",".join(f"{a + base}-{b + base}" for a, b in g.edges)
        return f"n={g.n}; {body}" if body else f"n={g.n};"
    raise ValueError(f"unknown graph format {format!r}")


# ------------------------------------------------------------ named graphs

def complete_graph(n: int) -> ViewingGraph:
    return ViewingGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> ViewingGraph:
    return ViewingGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> ViewingGraph:
    return ViewingGraph(n, [(i, i + 1) for i in range(n - 1)])
