"""Closure of a viewing graph under Moves I, II and III.

State is a mixed graph: solid edges (fundamental matrix known) and dashed
arrows ``i -> j`` (the epipole of camera ``i`` in image ``j`` is known). A
solid edge always counts as a dashed double arrow.

* Move I: a solid 4-cycle with one solid diagonal gets the other diagonal.
* Move II: arrows ``1->2``, ``1->3`` and solid ``2-4``, ``3-4`` give ``1->4``.
* Move III: double arrow ``1<->2`` plus arrows ``i->1``, ``i->2`` for three
  further vertices ``i`` turn ``1-2`` solid.

All pattern vertices are pairwise distinct.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .graph import ViewingGraph, _bits

SOLID = "solid"
DASHED = "dashed"


@dataclass(frozen=True)
class Addition:
    """One derivation step: ``move`` matched ``witnesses`` and added ``kind`` ``pair``.

    ``pair`` is ``(a, b)`` with ``a < b`` for a solid edge, and ``(i, j)``
    meaning ``i -> j`` for an arrow.
    """

    move: str
    kind: str
    pair: tuple[int, int]
    witnesses: tuple[int, ...]

    def describe(self, base: int = 0) -> str:
        a, b = self.pair[0] + base, self.pair[1] + base
        w = ",".join(str(v + base) for v in self.witnesses)
        if self.kind == SOLID:
            return f"move {self.move}: solid {a}-{b} via ({w})"
        return f"move {self.move}: arrow {a}->{b} via ({w})"


class MixedGraph:
    """Mutable closure state over bitmasks.

    ``solid[v]`` holds the solid neighbours of ``v``; ``out[i]`` holds every
    ``j`` with a dashed arrow ``i -> j`` (solid neighbours included) and
    ``into[j]`` the transpose.
    """

    def __init__(self, n: int, solid: Iterable[tuple[int, int]] = (), dashed: Iterable[tuple[int, int]] = ()):
        self.n = n
        self.solid = [0] * n
        self.out = [0] * n
        self.into = [0] * n
        for a, b in solid:
            self.add_solid(a, b)
        for a, b in dashed:
            self.add_arrow(a, b)

    @classmethod
    def from_graph(cls, g: ViewingGraph) -> MixedGraph:
        return cls(g.n, g.edges)

    def copy(self) -> MixedGraph:
        other = MixedGraph(self.n)
        other.solid = list(self.solid)
        other.out = list(self.out)
        other.into = list(self.into)
        return other

    def add_arrow(self, i: int, j: int) -> bool:
        if self.out[i] >> j & 1:
            return False
        self.out[i] |= 1 << j
        self.into[j] |= 1 << i
        return True

    def add_solid(self, a: int, b: int) -> bool:
        if self.solid[a] >> b & 1:
            return False
        self.solid[a] |= 1 << b
        self.solid[b] |= 1 << a
        self.add_arrow(a, b)
        self.add_arrow(b, a)
        return True

    def apply(self, step: Addition) -> bool:
        if step.kind == SOLID:
            return self.add_solid(*step.pair)
        return self.add_arrow(*step.pair)

    def has_solid(self, a: int, b: int) -> bool:
        return bool(self.solid[a] >> b & 1)

    def has_arrow(self, i: int, j: int) -> bool:
        return bool(self.out[i] >> j & 1)

    def solid_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.n) for b in _bits(self.solid[a]) if a < b]

    def arrows(self) -> list[tuple[int, int]]:
        """Dashed arrows that are not part of a solid edge."""
        return [
            (i, j)
            for i in range(self.n)
            for j in _bits(self.out[i] & ~self.solid[i])
        ]

    def double_arrows(self) -> list[tuple[int, int]]:
        """Pairs ``(a, b)``, ``a < b``, joined by dashed arrows both ways but not solid."""
        return [(i, j) for i, j in self.arrows() if i < j and self.has_arrow(j, i)]

    def is_complete(self) -> bool:
        full = (1 << self.n) - 1
        return all(self.solid[v] | (1 << v) == full for v in range(self.n))

    def key(self) -> tuple:
        return tuple(self.solid), tuple(self.out)

    def __eq__(self, other) -> bool:
        return isinstance(other, MixedGraph) and self.n == other.n and self.key() == other.key()

    def __repr__(self) -> str:
        return f"MixedGraph(n={self.n}, solid={self.solid_edges()}, arrows={self.arrows()})"


def apply_move_I(m: MixedGraph) -> list[Addition]:
    """Missing diagonals ``b-d`` whose common solid neighbours contain a solid edge ``a-c``."""
    found = []
    for b in range(m.n):
        for d in range(b + 1, m.n):
            if m.solid[b] >> d & 1:
                continue
            common = m.solid[b] & m.solid[d]
            for a in _bits(common):
                c_mask = m.solid[a] & common
                if c_mask:
                    c = (c_mask & -c_mask).bit_length() - 1
                    found.append(Addition("I", SOLID, (b, d), (a, b, c, d)))
                    break
    return found


def apply_move_II(m: MixedGraph) -> list[Addition]:
    """New arrows ``1->4`` with two distinct mediators ``2, 3``."""
    found = []
    for one in range(m.n):
        for four in range(m.n):
            if four == one or m.out[one] >> four & 1:
                continue
            mediators = m.out[one] & m.solid[four]
            if mediators.bit_count() >= 2:
                two, three = _bits(mediators)[:2]
                found.append(Addition("II", DASHED, (one, four), (one, two, three, four)))
    return found


def apply_move_III(m: MixedGraph) -> list[Addition]:
    """Double arrows ``1<->2`` promoted to solid, given three witnesses seen in both images."""
    found = []
    for one in range(m.n):
        for two in _bits(m.out[one] & m.into[one] & ~m.solid[one]):
            if two < one:
                continue
            seen_by_both = m.into[one] & m.into[two] & ~(1 << one | 1 << two)
            if seen_by_both.bit_count() >= 3:
                w = _bits(seen_by_both)[:3]
                found.append(Addition("III", SOLID, (one, two), (one, two, *w)))
    return found


MOVES = {"I": apply_move_I, "II": apply_move_II, "III": apply_move_III}


@dataclass
class MoveTrace:
    steps: list[Addition] = field(default_factory=list)

    def replay(self, g: ViewingGraph) -> MixedGraph:
        m = MixedGraph.from_graph(g)
        for step in self.steps:
            m.apply(step)
        return m

    def to_text(self, base: int = 0) -> str:
        return "".join(f"{k + 1}. {s.describe(base)}\n" for k, s in enumerate(self.steps))


def closure_from(m: MixedGraph) -> tuple[MixedGraph, MoveTrace]:
    """Apply Moves I, II, III in rounds until nothing changes."""
    m = m.copy()
    trace = MoveTrace()
    changed = True
    while changed:
        changed = False
        for name in ("I", "II", "III"):
            for step in MOVES[name](m):
                if m.apply(step):
                    trace.steps.append(step)
                    changed = True
    return m, trace


def closure(g: ViewingGraph) -> tuple[MixedGraph, MoveTrace]:
    return closure_from(MixedGraph.from_graph(g))


def random_order_closure(g: ViewingGraph, rng: random.Random) -> MixedGraph:
    """Fixpoint reached by firing one randomly chosen applicable addition at a time."""
    m = MixedGraph.from_graph(g)
    while True:
        pending = [s for f in MOVES.values() for s in f(m)]
        if not pending:
            return m
        m.apply(rng.choice(pending))


def solvable_with_moves(g: ViewingGraph) -> bool:
    if g.n <= 1:
        return True
    m, _ = closure(g)
    return m.is_complete()


def to_dot(m: MixedGraph, name: str = "G", base: int = 0) -> str:
    """DOT text: solid edges plain, dashed arrows dashed (double arrows with ``dir=both``)."""
    lines = [f"graph {name} {{"]
    for v in range(m.n):
        lines.append(f"  {v + base};")
    for a, b in m.solid_edges():
        lines.append(f"  {a + base} -- {b + base};")
    for i, j in m.arrows():
        if m.has_arrow(j, i):
            if i < j:
                lines.append(f"  {i + base} -- {j + base} [style=dashed, dir=both];")
        else:
            lines.append(f"  {i + base} -- {j + base} [style=dashed, dir=forward];")
    lines.append("}")
    return "\n".join(lines) + "\n"
