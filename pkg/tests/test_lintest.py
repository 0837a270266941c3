import random

import pytest

from viewgraphs.graph import ViewingGraph, complete_graph, cycle_graph, path_graph
from viewgraphs.linalg import RationalMatrix, bareiss_rank, nullspace
from viewgraphs.lintest import (
    W_FORMS,
    GenericityError,
    PinholeSet,
    assemble_system,
    expected_dimension,
    finite_solvable,
    is_generic,
    kernel_dimension,
    known_kernel_vectors,
    lc_rows,
    independent_forms,
    tangent_dimension,
    vertex_system,
    sample_pinholes,
)

from conftest import random_connected


def flat(m):
    return [x for row in m for x in row]


def w_element(c, alpha, v):
    return [[(alpha if i == j else 0) + c[i] * v[j] for j in range(4)] for i in range(4)]


def test_forms_vanish_on_stabilizer_directions():
    rng = random.Random(0)
    for _ in range(100):
        c = [rng.randint(-20, 20) for _ in range(4)]
        if not any(c):
            continue
        rows = lc_rows(c)
        assert len(rows) == 20 and all(len(r) == 16 for r in rows)
        v = [rng.randint(-9, 9) for _ in range(4)]
        for m in (w_element(c, 1, [0] * 4), w_element(c, 0, v), w_element(c, 3, v)):
            assert RationalMatrix.from_rows(rows).apply(flat(m)) == [0] * 20


def test_kernel_is_exactly_five_dimensional():
    rng = random.Random(1)
    for _ in range(100):
        c = [rng.randint(-50, 50) for _ in range(4)]
        if not any(c):
            continue
        rows = lc_rows(c)
        assert bareiss_rank(rows) == 11
        kernel = nullspace(rows, 16)
        span = [flat(w_element(c, 1, [0] * 4))] + [
            flat(w_element(c, 0, [int(i == k) for i in range(4)])) for k in range(4)
        ]
        assert bareiss_rank(span) == 5
        # kernel and the stabilizer directions span the same space
        assert len(kernel) == 5
        assert RationalMatrix.from_rows(kernel + span).rank() == 5


def test_forms_have_two_or_four_terms():
    assert len(W_FORMS) == 20
    assert sorted(len(f) for f in W_FORMS) == [2] * 12 + [4] * 8


def test_zero_pinhole_rejected():
    with pytest.raises(ValueError):
        lc_rows([0, 0, 0, 0])


def test_sampling():
    p = sample_pinholes(9, 1000, 42)
    assert p == sample_pinholes(9, 1000, 42)
    assert is_generic(p.points)
    p4 = sample_pinholes(4, seed=3)
    assert is_generic(p4.points)
    assert sample_pinholes(2, seed=1).points[0] != (0, 0, 0, 0)
    with pytest.raises(ValueError):
        sample_pinholes(1)
    with pytest.raises(ValueError):
        sample_pinholes(4, bound=5)


def test_genericity_screen():
    assert not is_generic([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)])
    assert not is_generic([(0, 0, 0, 0), (1, 0, 0, 0)])
    assert is_generic([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])


def test_sampling_gives_up(monkeypatch):
    import viewgraphs.lintest as lt

    monkeypatch.setattr(lt, "is_generic", lambda pts: False)
    with pytest.raises(GenericityError):
        lt.sample_pinholes(5, max_attempts=3)


def test_row_counts():
    pins = sample_pinholes(4, seed=0)
    s = assemble_system(path_graph(3), PinholeSet(pins.points[:3]))
    assert (s.matrix.rows, s.matrix.cols) == (20, 32)
    s = assemble_system(cycle_graph(4), pins)
    assert (s.matrix.rows, s.matrix.cols) == (80, 64)
    s = assemble_system(ViewingGraph(2, [(0, 1)]), PinholeSet(pins.points[:2]))
    assert (s.matrix.rows, s.unknowns) == (0, 16)
    assert kernel_dimension(s) == 16
    with pytest.raises(ValueError):
        assemble_system(cycle_graph(5), pins)


def test_explicit_kernel_basis():
    rng = random.Random(4)
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 7), rng.randint(0, 6))
        pins = sample_pinholes(g.n, 100, rng=rng)
        s = assemble_system(g, pins)
        vecs = known_kernel_vectors(g)
        for v in vecs:
            assert not any(s.matrix.apply(v))
        assert bareiss_rank(vecs) == expected_dimension(g)
        assert kernel_dimension(s) >= expected_dimension(g)


def test_star_and_pairwise_agree():
    rng = random.Random(5)
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 7), rng.randint(0, 8))
        pins = sample_pinholes(g.n, 100, rng=rng)
        star = assemble_system(g, pins).matrix
        pair = assemble_system(g, pins, pairwise=True).matrix
        r = star.rank()
        assert r == pair.rank()
        # same row space, hence the same kernel
        assert RationalMatrix(star.rows + pair.rows, star.cols, star.entries + pair.entries).rank() == r


def test_fixtures(four_cycle, grid, dotted8):
    assert finite_solvable(four_cycle) == (False, 20)
    assert finite_solvable(grid) == (True, 27)
    assert finite_solvable(dotted8) == (True, 26)
    assert finite_solvable(ViewingGraph(2, [(0, 1)])) == (True, 16)


@pytest.mark.parametrize("n", range(3, 8))
def test_complete_graphs_finite(n):
    g = complete_graph(n)
    assert finite_solvable(g) == (True, 15 + g.e)


def test_degenerate_pinholes_do_not_lower_dimension():
    g = complete_graph(4)
    coplanar = PinholeSet(((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)))
    generic = sample_pinholes(4, seed=9)
    assert kernel_dimension(assemble_system(g, coplanar)) >= kernel_dimension(assemble_system(g, generic))


def test_deterministic_and_methods_agree(grid):
    assert finite_solvable(grid, seed=7) == finite_solvable(grid, seed=7)
    s = assemble_system(grid, sample_pinholes(9, seed=1))
    assert kernel_dimension(s, "bareiss") == kernel_dimension(s, "flint") == 27


def test_disconnected_refused():
    with pytest.raises(ValueError):
        finite_solvable(ViewingGraph(4, [(0, 1), (2, 3)]))


def test_reduced_and_vertex_formulations_agree():
    rng = random.Random(12)
    for _ in range(100):
        g = random_connected(rng, rng.randint(2, 9), rng.randint(0, 9))
        pins = sample_pinholes(g.n, 1000, rng=rng)
        full = kernel_dimension(assemble_system(g, pins))
        assert tangent_dimension(g, pins, "edge") == full
        assert tangent_dimension(g, pins, "vertex") == full
        assert finite_solvable(g, method="vertex") == finite_solvable(g, method="edge")


def test_independent_forms_span_the_block():
    rng = random.Random(13)
    for _ in range(50):
        c = [rng.randint(-1000, 1000) for _ in range(4)]
        picked = independent_forms(c)
        assert len(picked) == 11
        rows = lc_rows(c)
        assert bareiss_rank([rows[k] for k in picked]) == 11


def test_vertex_system_shape(grid):
    m = vertex_system(grid, sample_pinholes(9, seed=2))
    assert (m.rows, m.cols) == (7 * 12, 16 * 9)
    assert m.rank() == 11 * 9 - 15
    with pytest.raises(ValueError):
        tangent_dimension(grid, sample_pinholes(9, seed=2), "other")
