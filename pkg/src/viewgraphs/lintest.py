"""Finite solvability by the tangent-space linear test.

Each edge ``λ`` carries an unknown 4x4 matrix ``h_λ``. At every vertex ``i``
the matrices of any two incident edges must differ by an element of
``W_i = {a I + c_i v^T}``. With pinholes fixed at random integer points the
constraints are linear, and the graph is finite solvable when the solution
space has the minimum possible dimension ``15 + e`` (the 16-dimensional
global action plus one scale per edge, sharing the identity).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .graph import ViewingGraph, is_connected
from .linalg import RationalMatrix, bareiss_det, flint

# Twenty linear forms in the entries m_ij of a 4x4 matrix M whose common zero
# set is {a I + c v^T} for a nonzero c. Each form is a list of
# (coefficient, (i, j), k) meaning coefficient * m_ij * c_k.
W_FORMS: tuple[tuple[tuple[int, tuple[int, int], int], ...], ...] = (
    ((1, (3, 1), 2), (-1, (2, 1), 3)),
    ((1, (3, 0), 2), (-1, (2, 0), 3)),
    ((1, (3, 2), 1), (-1, (1, 2), 3)),
    ((1, (3, 0), 1), (-1, (1, 0), 3)),
    ((1, (2, 3), 1), (-1, (1, 3), 2)),
    ((1, (2, 0), 1), (-1, (1, 0), 2)),
    ((1, (3, 2), 0), (-1, (0, 2), 3)),
    ((1, (3, 1), 0), (-1, (0, 1), 3)),
    ((1, (2, 3), 0), (-1, (0, 3), 2)),
    ((1, (2, 1), 0), (-1, (0, 1), 2)),
    ((1, (1, 3), 0), (-1, (0, 3), 1)),
    ((1, (1, 2), 0), (-1, (0, 2), 1)),
    ((1, (2, 2), 1), (-1, (3, 3), 1), (-1, (1, 2), 2), (1, (1, 3), 3)),
    ((1, (2, 1), 1), (-1, (1, 1), 2), (1, (3, 3), 2), (-1, (2, 3), 3)),
    ((1, (3, 0), 0), (-1, (3, 2), 2), (-1, (0, 0), 3), (1, (2, 2), 3)),
    ((1, (2, 2), 0), (-1, (3, 3), 0), (-1, (0, 2), 2), (1, (0, 3), 3)),
    ((1, (2, 0), 0), (-1, (0, 0), 2), (1, (3, 3), 2), (-1, (2, 3), 3)),
    ((1, (3, 1), 1), (-1, (3, 2), 2), (-1, (1, 1), 3), (1, (2, 2), 3)),
    ((1, (1, 1), 0), (-1, (3, 3), 0), (-1, (0, 1), 1), (1, (0, 3), 3)),
    ((1, (1, 0), 0), (-1, (0, 0), 1), (1, (3, 3), 1), (-1, (1, 3), 3)),
)


class GenericityError(RuntimeError):
    pass


@dataclass(frozen=True)
class PinholeSet:
    points: tuple[tuple[int, int, int, int], ...]
    seed: int | None = None
    bound: int | None = None

    def __len__(self) -> int:
        return len(self.points)


def _rank_small(vectors) -> int:
    return RationalMatrix.from_rows([list(v) for v in vectors], 4).rank("bareiss")


def is_generic(points: Sequence[Sequence[int]]) -> bool:
    """Every min(n, 4)-subset of the points is linearly independent."""
    n = len(points)
    if n == 0:
        return True
    if any(not any(p) for p in points):
        return False
    k = min(n, 4)
    if k == 4:
        return all(bareiss_det([list(p) for p in quad]) != 0 for quad in combinations(points, 4))
    return all(_rank_small(sub) == k for sub in combinations(points, k))


def sample_pinholes(
    n: int,
    bound: int = 1000,
    seed: int | None = 42,
    rng: random.Random | None = None,
    max_attempts: int = 100,
) -> PinholeSet:
    """Uniform integer points in ``[-bound, bound]^4`` passing the genericity screen."""
    if n < 2:
        raise ValueError(f"need at least two pinholes, got n={n}")
    if bound < 10:
        raise ValueError(f"coordinate bound must be >= 10, got {bound}")
    rng = rng if rng is not None else random.Random(seed)
    for _ in range(max_attempts):
        pts = tuple(
            tuple(rng.randint(-bound, bound) for _ in range(4)) for _ in range(n)
        )
        if is_generic(pts):
            return PinholeSet(pts, seed, bound)
    raise GenericityError(f"no generic sample in {max_attempts} attempts (bound={bound})")


def lc_rows(c: Sequence[int]) -> list[list[int]]:
    """The 20 x 16 matrix of the forms above for pinhole ``c`` (columns m_00..m_33 row-major)."""
    if not any(c):
        raise ValueError("pinhole vector must be nonzero")
    rows = []
    for form in W_FORMS:
        row = [0] * 16
        for coef, (i, j), k in form:
            row[4 * i + j] += coef * c[k]
        rows.append(row)
    return rows


@dataclass
class TangentSystem:
    graph: ViewingGraph
    pinholes: PinholeSet
    matrix: RationalMatrix

    @property
    def unknowns(self) -> int:
        return 16 * self.graph.e


def incident_edges(g: ViewingGraph) -> list[list[int]]:
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for k, (a, b) in enumerate(g.edges):
        inc[a].append(k)
        inc[b].append(k)
    return inc


def independent_forms(c: Sequence[int]) -> list[int]:
    """Indices of a maximal linearly independent subset of ``lc_rows(c)``.

    Without FLINT all 20 indices are returned (same row space, more rows).
    """
    if flint is None:
        return list(range(20))
    red = flint.fmpz_mat(lc_rows(c)).transpose().rref()[0]
    picked, row = [], 0
    for j in range(red.ncols()):
        if row < red.nrows() and red[row, j] != 0:
            picked.append(j)
            row += 1
    return picked


def assemble_system(
    g: ViewingGraph, pinholes: PinholeSet, pairwise: bool = False, reduced: bool = False
) -> TangentSystem:
    """Stack ``L_{c_i}(h_λ - h_λ0)`` for every vertex ``i`` and incident edges.

    By default each vertex contributes a star: its first incident edge is the
    reference ``λ0``. ``pairwise=True`` emits every pair of incident edges
    instead (same kernel, more rows). ``reduced=True`` keeps only a basis of
    the 20 forms at each vertex (11 rows instead of 20, same row space).
    """
    if len(pinholes) != g.n:
        raise ValueError(f"{len(pinholes)} pinholes for a graph on {g.n} vertices")
    cols = 16 * g.e
    nonzeros: list[tuple[int, int, int]] = []
    r = 0
    for i, inc in enumerate(incident_edges(g)):
        if len(inc) < 2:
            continue
        block = lc_rows(pinholes.points[i])
        if reduced:
            block = [block[k] for k in independent_forms(pinholes.points[i])]
        sparse = [[(j, x) for j, x in enumerate(form) if x] for form in block]
        pairs = combinations(inc, 2) if pairwise else ((inc[0], k) for k in inc[1:])
        for ref, other in pairs:
            for form in sparse:
                for j, x in form:
                    nonzeros.append((r, 16 * other + j, x))
                    nonzeros.append((r, 16 * ref + j, -x))
                r += 1
    return TangentSystem(g, pinholes, RationalMatrix.from_triplets(r, cols, nonzeros))


def kernel_dimension(system: TangentSystem, method: str = "auto") -> int:
    return system.matrix.kernel_dimension(method)


def _stabilizer_span(c: Sequence[int]) -> list[list[int]]:
    """Identity and ``c e_k^T`` flattened row-major: a basis of ``W_c``."""
    rows = [[int(a == b) for a in range(4) for b in range(4)]]
    for k in range(4):
        rows.append([c[a] if b == k else 0 for a in range(4) for b in range(4)])
    return rows


def edge_forms(ci: Sequence[int], cj: Sequence[int]) -> list[list[int]]:
    """Integer linear forms on 4x4 matrices vanishing exactly on ``W_ci + W_cj``.

    For non-proportional pinholes the sum is 9-dimensional, so there are 7.
    """
    span = _stabilizer_span(ci) + _stabilizer_span(cj)
    if flint is not None:
        basis, nullity = flint.fmpz_mat(span).nullspace()
        return [[int(basis[r, k]) for r in range(16)] for k in range(nullity)]
    from .linalg import nullspace, primitive

    return [primitive(v) for v in nullspace(span, 16)]


def vertex_system(g: ViewingGraph, pinholes: PinholeSet) -> RationalMatrix:
    """Constraints ``g_i - g_j in W_i + W_j`` on one 4x4 matrix ``g_i`` per vertex.

    Its kernel ``K`` relates to the tangent kernel by ``dim T = K + e - 5n``
    when adjacent pinholes are never proportional: both sides count the pairs
    (vertex matrices, edge matrices) with each ``h_ij`` in
    ``(g_i + W_i) ∩ (g_j + W_j)``, whose fibres have dimensions ``5n`` over
    the edge matrices and ``e`` over the vertex matrices.
    """
    if len(pinholes) != g.n:
        raise ValueError(f"{len(pinholes)} pinholes for a graph on {g.n} vertices")
    nonzeros: list[tuple[int, int, int]] = []
    r = 0
    for a, b in g.edges:
        for form in edge_forms(pinholes.points[a], pinholes.points[b]):
            for j, x in enumerate(form):
                if x:
                    nonzeros.append((r, 16 * a + j, x))
                    nonzeros.append((r, 16 * b + j, -x))
            r += 1
    return RationalMatrix.from_triplets(r, 16 * g.n, nonzeros)


def tangent_dimension(
    g: ViewingGraph, pinholes: PinholeSet, method: str = "edge", rank_method: str = "auto"
) -> int:
    """Kernel dimension of the tangent system, via the vertex or the edge formulation."""
    if method == "vertex":
        k = vertex_system(g, pinholes).kernel_dimension(rank_method)
        return k + g.e - 5 * g.n
    if method == "edge":
        return kernel_dimension(assemble_system(g, pinholes, reduced=True), rank_method)
    raise ValueError(f"unknown formulation {method!r}")


def expected_dimension(g: ViewingGraph) -> int:
    return 15 + g.e


def known_kernel_vectors(g: ViewingGraph) -> list[list[int]]:
    """Kernel vectors present for every graph and pinholes.

    The 16 global directions (the same elementary matrix on every edge) and
    one identity direction per edge; together they span ``15 + e`` dimensions.
    """
    e = g.e
    vecs = []
    for a in range(16):
        v = [0] * (16 * e)
        for k in range(e):
            v[16 * k + a] = 1
        vecs.append(v)
    for k in range(e):
        v = [0] * (16 * e)
        for d in (0, 5, 10, 15):
            v[16 * k + d] = 1
        vecs.append(v)
    return vecs


def finite_solvable(
    g: ViewingGraph, trials: int = 3, bound: int = 1000, seed: int = 42, method: str = "edge"
) -> tuple[bool, int]:
    """Minimum kernel dimension over ``trials`` pinhole samples, and whether it is ``15 + e``.

    Special pinholes can only enlarge the kernel, so sampling stops early once
    the lower bound ``15 + e`` is reached.
    """
    if g.n < 2 or not is_connected(g):
        raise ValueError("finite solvability test needs a connected graph with n >= 2")
    rng = random.Random(seed)
    target = expected_dimension(g)
    best = None
    for _ in range(max(1, trials)):
        pins = sample_pinholes(g.n, bound, seed, rng=rng)
        dim = tangent_dimension(g, pins, method)
        best = dim if best is None else min(best, dim)
        if best == target:
            break
    return best == target, best
