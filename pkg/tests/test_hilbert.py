"""Hilbert basis of the orthant monoid and the containment criterion."""
import random
from fractions import Fraction
from itertools import product
from math import gcd

from crepant_lab.grouptype import parse_type
from crepant_lab.hilbert import first_criterion, hilbert_basis
from crepant_lab.lattice import lattice_member


def _frac(nums, den):
    return tuple(Fraction(x, den) for x in nums)


def test_basis_1_7_1123():
    """1/7(1,1,2,3): (2,2,4,6)/7 = 2*(1,1,2,3)/7 is reducible, so the
    basis has 8 elements, not 9."""
    t = parse_type("1/7(1,1,2,3)")
    hb = hilbert_basis(t)
    expected = {
        _frac((1, 0, 0, 0), 1),
        _frac((0, 1, 0, 0), 1),
        _frac((0, 0, 1, 0), 1),
        _frac((0, 0, 0, 1), 1),
        _frac((1, 1, 2, 3), 7),
        _frac((3, 3, 6, 2), 7),
        _frac((4, 4, 1, 5), 7),
        _frac((5, 5, 3, 1), 7),
    }
    assert set(hb.elements) == expected
    assert len(hb.elements) == 8
    # the doubled junior really is double the generator
    double = _frac((2, 2, 4, 6), 7)
    assert tuple(2 * c for c in _frac((1, 1, 2, 3), 7)) == double
    assert double not in expected


def test_first_criterion_1_7_1123():
    ok, witnesses = first_criterion(parse_type("1/7(1,1,2,3)"))
    assert not ok
    assert set(witnesses) == {
        _frac((3, 3, 6, 2), 7),
        _frac((4, 4, 1, 5), 7),
        _frac((5, 5, 3, 1), 7),
    }


def test_first_criterion_passes_exam12():
    ok, witnesses = first_criterion(parse_type("1/12(1,2,3,6)"))
    assert ok and witnesses == []


def test_first_criterion_1_9_1233():
    # the age-2 point (5,1,6,6)/9 survives in the basis
    t = parse_type("1/9(1,2,3,3)")
    ok, witnesses = first_criterion(t)
    assert not ok
    assert _frac((5, 1, 6, 6), 9) in witnesses


def _brute_irreducible(t, elements, p):
    """p is irreducible iff it is not a sum of two nonzero monoid points
    (bounded search suffices: summands are componentwise <= p)."""
    e = t.exp_g
    nums = [int(c * e) for c in p]
    for q in product(*[range(n + 1) for n in nums]):
        if all(x == 0 for x in q) or list(q) == nums:
            continue
        rest = [n - x for n, x in zip(nums, q)]
        if lattice_member(_frac(q, e), t) and lattice_member(_frac(rest, e), t):
            return False
    return True


def _brute_generates(t, elements, p):
    """p decomposes into basis elements (depth-first over subtractions)."""
    e = t.exp_g
    target = tuple(int(c * e) for c in p)
    basis = [tuple(int(c * e) for c in b) for b in elements]
    stack = [target]
    seen = set()
    while stack:
        cur = stack.pop()
        if all(x == 0 for x in cur):
            return True
        if cur in seen:
            continue
        seen.add(cur)
        for b in basis:
            nxt = tuple(c - x for c, x in zip(cur, b))
            if all(x >= 0 for x in nxt):
                stack.append(nxt)
    return False


def test_basis_minimal_and_generating_small_types():
    rng = random.Random(5)
    for s in ["1/5(1,1,3)", "1/7(1,1,2,3)", "1/6(1,1,2,2)", "1/9(1,2,3,3)"]:
        t = parse_type(s)
        hb = hilbert_basis(t)
        for p in hb.elements:
            assert _brute_irreducible(t, hb.elements, p), (s, p)
        # spot-check generation on random monoid points
        e, r = t.exp_g, t.r
        for _ in range(20):
            nums = [rng.randint(0, 2 * e) for _ in range(r)]
            p = _frac(nums, e)
            if lattice_member(p, t):
                assert _brute_generates(t, hb.elements, p), (s, p)


def test_vertices_always_present_for_msc():
    for s in ["1/12(1,2,3,6)", "1/7(1,1,2,3)"]:
        hb = hilbert_basis(parse_type(s))
        assert sum(hb.is_vertex) == 4
