"""Exact integer linear algebra: HNF, determinants, standardization."""
import random
from fractions import Fraction

import pytest

from crepant_lab.grouptype import junior_config, parse_type
from crepant_lab.lattice import det_int, hnf, lattice_member, standardize_junior


def _mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def test_hnf_2x2_example():
    h, u = hnf([[2, 1], [0, 3]])
    assert _mat_mul([[2, 1], [0, 3]], u) == h
    assert abs(det_int(u)) == 1
    assert abs(det_int(h)) == 6
    # lower-triangular with positive diagonal
    assert h[0][1] == 0 and h[0][0] > 0 and h[1][1] > 0


def test_hnf_random_unimodular_transform():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(2, 4)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        if det_int(a) == 0:
            continue
        h, u = hnf(a)
        assert _mat_mul(a, u) == h
        assert abs(det_int(u)) == 1
        assert abs(det_int(h)) == abs(det_int(a))
        for i in range(n):
            assert h[i][i] > 0
            for j in range(i + 1, n):
                assert h[i][j] == 0
            # entries left of the diagonal are reduced mod the pivot
            for k in range(i):
                assert 0 <= h[i][k] < h[i][i]


def test_det_int_matches_fraction_elimination():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        # reference: fraction Gaussian elimination
        m = [[Fraction(x) for x in row] for row in a]
        det = Fraction(1)
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col] != 0), None)
            if piv is None:
                det = Fraction(0)
                break
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det *= m[col][col]
            inv = 1 / m[col][col]
            for r in range(col + 1, n):
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        assert det.denominator == 1 and det_int(a) == int(det)


def test_lattice_member():
    t = parse_type("1/12(1,2,3,6)")
    g = tuple(Fraction(x, 12) for x in (1, 2, 3, 6))
    assert lattice_member(g, t)
    assert lattice_member(tuple(Fraction(x, 12) for x in (3, 6, 9, 6)), t)
    assert lattice_member((Fraction(1), Fraction(0), Fraction(0), Fraction(0)), t)
    assert not lattice_member(tuple(Fraction(x, 12) for x in (1, 1, 1, 1)), t)


def test_standardize_junior_exam12():
    t = parse_type("1/12(1,2,3,6)")
    cfg = junior_config(t)
    pts, _ = standardize_junior(cfg, t)
    assert len(pts) == 9
    assert pts[0] == (0, 0, 0)  # e_1 at the origin
    # normalized volume of the standardized vertex simplex = l
    vol = abs(det_int([list(pts[i]) for i in (1, 2, 3)]))
    assert vol == 12
    # junior points stay inside the simplex and keep integrality
    assert all(all(isinstance(c, int) for c in p) for p in pts)


def test_standardize_volume_equals_order():
    for s in ["1/7(1,1,2,3)", "1/9(1,2,3,3)", "1/6(1,1,2,2)"]:
        t = parse_type(s)
        cfg = junior_config(t)
        pts, _ = standardize_junior(cfg, t)
        vol = abs(det_int([list(pts[i]) for i in range(1, t.r)]))
        assert vol == t.order
