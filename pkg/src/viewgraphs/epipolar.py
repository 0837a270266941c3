"""Exact two- and three-view geometry used to check the combinatorics.

Cameras are 3x4 integer (or rational) matrices. Points in an image are
3-vectors; a fundamental matrix ``F`` of cameras ``(P1, P2)`` satisfies
``u1^T F u2 = 0`` for corresponding points ``u1 = P1 X``, ``u2 = P2 X``.
Its left null vector is the epipole ``P1 c2`` and its right null vector is
``P2 c1``. The epipolar line in image 2 of a point ``u1`` is ``F^T u1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import bareiss_det, nullspace, rank


class DegenerateConfiguration(ValueError):
    """Pinholes in a special position where the construction is undefined."""


def cross(a: Sequence, b: Sequence) -> list:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [dot(row, v) for row in m]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def is_zero(v: Sequence) -> bool:
    return not any(v)


def proportional(a: Sequence, b: Sequence) -> bool:
    """Nonzero vectors spanning the same line."""
    if is_zero(a) or is_zero(b):
        return False
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def bilinear(u: Sequence, f: Sequence[Sequence], w: Sequence):
    return dot(u, matvec(f, w))


@dataclass(frozen=True)
class Camera:
    matrix: tuple[tuple, ...]
    pinhole: tuple

    @classmethod
    def from_matrix(cls, p: Sequence[Sequence]) -> Camera:
        p = tuple(tuple(r) for r in p)
        c = tuple(
            (-1) ** k * bareiss_det([[row[j] for j in range(4) if j != k] for row in p])
            for k in range(4)
        )
        if is_zero(c):
            raise DegenerateConfiguration("camera matrix is not of rank 3")
        return cls(p, c)

    def project(self, x: Sequence) -> list:
        return matvec(self.matrix, x)


def orthogonal_basis(c: Sequence[int]) -> list[list[int]]:
    """Three integer vectors spanning the hyperplane ``{x : c . x = 0}``."""
    k = next(i for i in range(4) if c[i])
    basis = []
    for j in range(4):
        if j == k:
            continue
        v = [0] * 4
        v[k] = -c[j]
        v[j] = c[k]
        basis.append(v)
    return basis


def random_camera(rng: random.Random, pinhole: Sequence[int], bound: int = 9) -> Camera:
    """A random full-rank camera with the given pinhole."""
    basis = transpose(orthogonal_basis(pinhole))  # 4 x 3: columns span c-perp
    while True:
        r = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        if bareiss_det(r) != 0:
            break
    # rows of P are combinations of the rows of basis^T
    p = matmul(r, transpose(basis))
    return Camera.from_matrix(p)


def random_pinholes(rng: random.Random, n: int, bound: int = 9) -> list[list[int]]:
    """``n`` integer points with every min(n, 4)-subset independent."""
    while True:
        pts = [[rng.randint(-bound, bound) for _ in range(4)] for _ in range(n)]
        k = min(n, 4)
        if all(rank(list(sub)) == k for sub in combinations(pts, k)):
            return pts


def random_cameras(rng: random.Random, n: int, bound: int = 9) -> list[Camera]:
    return [random_camera(rng, c, bound) for c in random_pinholes(rng, n, bound)]


def fundamental(p1: Camera, p2: Camera) -> list[list[int]]:
    """Signed 4x4 minors: entry (i, l) uses rows of P1 other than i and rows of P2 other than l."""
    if proportional(p1.pinhole, p2.pinhole):
        raise DegenerateConfiguration("cameras share a pinhole")
    f = [[0] * 3 for _ in range(3)]
    for i in range(3):
        j, k = [r for r in range(3) if r != i]
        for l in range(3):
            m, n = [r for r in range(3) if r != l]
            block = [p1.matrix[j], p1.matrix[k], p2.matrix[m], p2.matrix[n]]
            f[i][l] = (-1) ** (i + l) * bareiss_det([list(r) for r in block])
    return f


def det3(m: Sequence[Sequence]):
    return dot(m[0], cross(m[1], m[2]))


def right_null(f: Sequence[Sequence]) -> list:
    """Right null vector of a rank-2 3x3 matrix (image-2 epipole)."""
    for a, b in ((0, 1), (0, 2), (1, 2)):
        v = cross(f[a], f[b])
        if not is_zero(v):
            return v
    raise DegenerateConfiguration("matrix has rank < 2")


def left_null(f: Sequence[Sequence]) -> list:
    return right_null(transpose(f))


def triple_residuals(f12, f23, f31, epipoles: dict | None = None) -> tuple:
    """The three bilinear compatibility residuals of a triple of fundamental matrices.

    ``epipoles[(i, j)]`` is the epipole in image ``i`` of camera ``j``; missing
    entries are read off the null vectors of the matrices. Aligned pinholes
    (coincident epipoles in some image) are rejected.
    """
    ep = {
        (1, 2): left_null(f12), (2, 1): right_null(f12),
        (2, 3): left_null(f23), (3, 2): right_null(f23),
        (3, 1): left_null(f31), (1, 3): right_null(f31),
    }
    if epipoles:
        ep.update(epipoles)
    for img, a, b in ((1, 2, 3), (2, 1, 3), (3, 1, 2)):
        if proportional(ep[(img, a)], ep[(img, b)]):
            raise DegenerateConfiguration("pinholes are aligned")
    return (
        bilinear(ep[(1, 3)], f12, ep[(2, 3)]),
        bilinear(ep[(2, 1)], f23, ep[(3, 1)]),
        bilinear(ep[(3, 2)], f31, ep[(1, 2)]),
    )


def verify_move_II(cams: Sequence[Camera]) -> bool:
    """Recover the epipole of camera 1 in image 4 from e21, e31, F24 and F34.

    Transfers e21 through F24 and e31 through F34 to two lines in image 4 and
    checks that they are distinct and meet exactly at ``P4 c1``.
    """
    p1, p2, p3, p4 = cams
    e21, e31 = p2.project(p1.pinhole), p3.project(p1.pinhole)
    l41 = matvec(transpose(fundamental(p2, p4)), e21)
    m41 = matvec(transpose(fundamental(p3, p4)), e31)
    if is_zero(l41) or is_zero(m41):
        raise DegenerateConfiguration("c1, c4 aligned with c2 or c3: transfer is undefined")
    x = cross(l41, m41)
    if is_zero(x):
        raise DegenerateConfiguration("transferred lines coincide: c1..c4 coplanar")
    return proportional(x, p4.project(p1.pinhole))


def verify_move_III(cams: Sequence[Camera]) -> bool:
    """Check that both epipoles plus the images of c3, c4, c5 pin down F12.

    The three image pairs must lie on corresponding epipolar lines, give three
    distinct epipolar planes, and the linear conditions they impose together
    with the epipoles must leave exactly the line spanned by F12.
    """
    p1, p2 = cams[0], cams[1]
    f12 = fundamental(p1, p2)
    e12, e21 = p1.project(p2.pinhole), p2.project(p1.pinhole)
    pairs = [(p1.project(c.pinhole), p2.project(c.pinhole)) for c in cams[2:5]]
    lines1, lines2 = [], []
    for u, w in pairs:
        if bilinear(u, f12, w) != 0:
            return False
        l1, l2 = cross(e12, u), cross(e21, w)
        if is_zero(l1) or is_zero(l2):
            raise DegenerateConfiguration("a witness pinhole lies on the baseline c1c2")
        lines1.append(l1)
        lines2.append(l2)
    for ls in (lines1, lines2):
        for a, b in combinations(ls, 2):
            if proportional(a, b):
                raise DegenerateConfiguration("two witness pinholes share an epipolar plane")
    rows = []
    for k in range(3):  # e12^T G = 0
        rows.append([e12[i] if j == k else 0 for i in range(3) for j in range(3)])
    for i0 in range(3):  # G e21 = 0
        rows.append([e21[j] if i == i0 else 0 for i in range(3) for j in range(3)])
    for u, w in pairs:
        rows.append([u[i] * w[j] for i in range(3) for j in range(3)])
    kernel = nullspace(rows, 9)
    if len(kernel) != 1:
        return False
    flat = [x for row in f12 for x in row]
    return proportional(kernel[0], flat)


def stabilizer_matrix(c: Sequence, alpha, v: Sequence) -> list[list]:
    return [[(alpha if i == j else 0) + c[i] * v[j] for j in range(4)] for i in range(4)]


def fixes_camera(p: Camera, m: Sequence[Sequence]) -> bool:
    """Does ``P M`` equal a nonzero multiple of ``P``?"""
    pm = matmul(p.matrix, m)
    flat_p = [x for r in p.matrix for x in r]
    flat_pm = [x for r in pm for x in r]
    return proportional(flat_p, flat_pm)


def joint_stabilizer_dimension(p1: Camera, p2: Camera) -> int:
    """Dimension of ``{(M, s1, s2) : P1 M = s1 P1, P2 M = s2 P2}``."""
    rows = []
    for k, p in enumerate((p1, p2)):
        for r in range(3):
            for col in range(4):
                row = [Fraction(0)] * 18
                for t in range(4):
                    row[4 * t + col] = Fraction(p.matrix[r][t])
                row[16 + k] = -Fraction(p.matrix[r][col])
                rows.append(row)
    return len(nullspace(rows, 18))
