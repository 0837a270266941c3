import random

import pytest

from viewgraphs.epipolar import (
    Camera,
    DegenerateConfiguration,
    bilinear,
    det3,
    fixes_camera,
    fundamental,
    joint_stabilizer_dimension,
    left_null,
    matmul,
    proportional,
    random_camera,
    random_cameras,
    random_pinholes,
    right_null,
    stabilizer_matrix,
    triple_residuals,
    verify_move_II,
    verify_move_III,
)
from viewgraphs.linalg import bareiss_det


def invertible(rng, k=4, bound=5):
    while True:
        t = [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]
        if bareiss_det(t):
            return t


def test_camera_pinhole():
    rng = random.Random(0)
    for _ in range(50):
        c = [rng.randint(-9, 9) for _ in range(4)]
        if not any(c):
            continue
        cam = random_camera(rng, c)
        assert cam.project(cam.pinhole) == [0, 0, 0]
        assert proportional(cam.pinhole, c)
    with pytest.raises(DegenerateConfiguration):
        Camera.from_matrix([[1, 0, 0, 0], [2, 0, 0, 0], [0, 1, 0, 0]])


def test_correspondence_and_epipoles():
    rng = random.Random(1)
    for _ in range(100):
        p1, p2 = random_cameras(rng, 2)
        f = fundamental(p1, p2)
        x = [rng.randint(-20, 20) for _ in range(4)]
        assert bilinear(p1.project(x), f, p2.project(x)) == 0
        assert proportional(left_null(f), p1.project(p2.pinhole))
        assert proportional(right_null(f), p2.project(p1.pinhole))


def test_same_pinhole_refused():
    rng = random.Random(2)
    c = [1, 2, 3, 4]
    with pytest.raises(DegenerateConfiguration):
        fundamental(random_camera(rng, c), random_camera(rng, c))


def test_camera_triples():
    rng = random.Random(3)
    for _ in range(500):
        cams = random_cameras(rng, 3)
        f12, f23, f31 = (fundamental(cams[a], cams[b]) for a, b in ((0, 1), (1, 2), (2, 0)))
        for f in (f12, f23, f31):
            assert det3(f) == 0 and any(x for r in f for x in r)
        assert triple_residuals(f12, f23, f31) == (0, 0, 0)
        t = invertible(rng)
        moved = [Camera.from_matrix(matmul(c.matrix, t)) for c in cams[:2]]
        g = fundamental(*moved)
        assert proportional([x for r in g for x in r], [x for r in f12 for x in r])


def test_random_rank_two_matrix_breaks_triple():
    rng = random.Random(4)
    broken = 0
    for _ in range(20):
        cams = random_cameras(rng, 3)
        f23, f31 = fundamental(cams[1], cams[2]), fundamental(cams[2], cams[0])
        a = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(2)]
        f12 = [a[0], a[1], [a[0][j] + 2 * a[1][j] for j in range(3)]]
        try:
            broken += triple_residuals(f12, f23, f31) != (0, 0, 0)
        except DegenerateConfiguration:
            pass
    assert broken >= 15


def test_aligned_triple_flagged():
    rng = random.Random(5)
    c1, c2 = [1, 0, 0, 1], [0, 1, 0, 1]
    c3 = [a + b for a, b in zip(c1, c2)]
    cams = [random_camera(rng, c) for c in (c1, c2, c3)]
    fs = [fundamental(cams[a], cams[b]) for a, b in ((0, 1), (1, 2), (2, 0))]
    with pytest.raises(DegenerateConfiguration):
        triple_residuals(*fs)


def test_moves_on_generic_instances():
    rng = random.Random(6)
    for _ in range(1000):
        cams = random_cameras(rng, 5)
        assert verify_move_II(cams[:4])
        assert verify_move_III(cams)


def test_move_II_degenerate():
    rng = random.Random(7)
    c1, c2, c3 = [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]
    coplanar = [random_camera(rng, c) for c in (c1, c2, c3, [1, 2, 3, 0])]
    with pytest.raises(DegenerateConfiguration):
        verify_move_II(coplanar)
    aligned = [random_camera(rng, c) for c in (c1, c2, [0, 0, 0, 1], [2, 3, 0, 0])]
    with pytest.raises(DegenerateConfiguration):
        verify_move_II(aligned)


def test_move_III_degenerate():
    rng = random.Random(8)
    c1, c2 = [1, 0, 0, 0], [0, 1, 0, 0]
    on_line = [c1, c2, [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(DegenerateConfiguration):
        verify_move_III([random_camera(rng, c) for c in on_line])
    same_plane = [c1, c2, [0, 0, 1, 0], [1, 1, 2, 0], [0, 0, 0, 1]]
    with pytest.raises(DegenerateConfiguration):
        verify_move_III([random_camera(rng, c) for c in same_plane])


def test_stabilizer_and_joint_stabilizer():
    rng = random.Random(9)
    for _ in range(100):
        p1, p2 = random_cameras(rng, 2)
        alpha = rng.choice([x for x in range(-5, 6) if x])
        v = [rng.randint(-5, 5) for _ in range(4)]
        m = stabilizer_matrix(p1.pinhole, alpha, v)
        if bareiss_det(m):
            assert fixes_camera(p1, m)
        assert joint_stabilizer_dimension(p1, p2) == 1


def test_pinhole_sampler():
    pts = random_pinholes(random.Random(10), 6)
    assert len(pts) == 6
