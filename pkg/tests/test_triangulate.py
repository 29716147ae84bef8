"""Triangulation engine: volumes, flips, coherence, the flip-graph census.

The census oracle is an exhaustive backtracking enumeration over all
nondegenerate top-dimensional simplices (pairwise-properness + exact
volume cover), entirely independent of the flip machinery.
"""
from fractions import Fraction
from itertools import combinations

import pytest

from crepant_lab.grouptype import parse_type
from crepant_lab import triangulate as tr


EXAM12 = parse_type("1/12(1,2,3,6)")

# one maximal coherent basic triangulation of 1/12(1,2,3,6), in the
# standardized point order (0..3 the vertices, 4..8 the juniors sorted
# by delta)
BASIC_T1 = [
    (0, 3, 4, 7), (0, 3, 4, 8), (0, 4, 7, 8), (1, 2, 3, 4),
    (1, 2, 4, 5), (1, 3, 4, 6), (1, 4, 5, 7), (1, 4, 6, 7),
    (2, 3, 4, 7), (2, 4, 5, 7), (3, 4, 6, 8), (4, 6, 7, 8),
]


def brute_census(cfg, maximal=True):
    """Every triangulation = pairwise-proper simplex set covering the
    full volume; optionally only those using every point."""
    n, d = cfg.n, cfg.dim
    vol_total = tr.total_volume(cfg)
    simps = [
        s for s in combinations(range(n), d + 1) if tr.simplex_volume(cfg, s) > 0
    ]
    vols = [tr.simplex_volume(cfg, s) for s in simps]
    compat = {}
    for i in range(len(simps)):
        for j in range(i + 1, len(simps)):
            compat[(i, j)] = tr._proper_pair(cfg, simps[i], simps[j])
    out = []

    def rec(start, chosen, vol):
        if vol == vol_total:
            out.append(tr.Triangulation.of([simps[i] for i in chosen]))
            return
        for i in range(start, len(simps)):
            if vol + vols[i] <= vol_total and all(
                compat[(min(i, j), max(i, j))] for j in chosen
            ):
                rec(i + 1, chosen + [i], vol + vols[i])

    rec(0, [], 0)
    if maximal:
        out = [t for t in out if t.used_points == frozenset(range(n))]
    return sorted(out, key=lambda t: t.simplices)


def test_config_exam12():
    cfg = tr.config_from_type(EXAM12)
    assert cfg.n == 9
    assert cfg.dim == 3
    assert tr.total_volume(cfg) == 12


def test_placing_triangulation_valid():
    cfg = tr.config_from_type(EXAM12)
    t = tr.placing_triangulation(cfg, list(range(cfg.n)))
    assert tr.is_valid(cfg, t, expected_volume=12)
    assert t.used_points == frozenset(range(9))
    ok, w = tr.is_coherent(cfg, t)
    assert ok and w is not None


def test_flips_are_involutions():
    cfg = tr.config_from_type(EXAM12)
    t = tr.placing_triangulation(cfg, list(range(cfg.n)))
    flips = tr.find_flips(cfg, t, keep_points=True)
    assert flips
    for c in flips:
        t2 = tr.apply_flip(t, c)
        assert t2 != t
        assert sum(tr.simplex_volume(cfg, s) for s in t2.simplices) == 12
        assert tr.apply_flip(t2, c) == t


def test_exam12_census_matches_brute_force():
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True)
    assert res.complete
    oracle = brute_census(cfg, maximal=True)
    assert sorted(res.triangulations, key=lambda t: t.simplices) == oracle
    assert len(oracle) == 13


def test_exam12_coherent_census():
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True, coherent_only=True)
    assert res.complete
    # every maximal triangulation of this configuration is coherent
    assert len(res.triangulations) == 13
    facets = sorted(len(t.simplices) for t in res.triangulations)
    assert facets == [9, 10, 10, 10, 11, 11, 11, 11, 12, 12, 12, 12, 12]
    basics = [t for t in res.triangulations if tr.basicness(cfg, t)[0]]
    assert len(basics) == 5
    assert tr.Triangulation.of(BASIC_T1) in basics


def test_exam12_coherence_certificates_reconstruct():
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True)
    for t in res.triangulations:
        ok, w = tr.is_coherent(cfg, t)
        assert ok
        # the negated heights induce t as a lower-hull subdivision
        assert tr._regular_cells(cfg, [-x for x in w]) == t


def test_basic_h_vector_is_hstar():
    cfg = tr.config_from_type(EXAM12)
    t = tr.Triangulation.of(BASIC_T1)
    assert tr.is_valid(cfg, t, expected_volume=12)
    basic, failures = tr.basicness(cfg, t)
    assert basic and not failures
    f, h = tr.fh_vectors(t)
    assert f[-1] == 12
    assert h == (1, 5, 5, 1, 0)


def test_h_vector_dominated_by_hstar():
    # h(T) <= h* componentwise, equality iff basic
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True)
    hstar = (1, 5, 5, 1, 0)
    for t in res.triangulations:
        _, h = tr.fh_vectors(t)
        assert all(a <= b for a, b in zip(h, hstar))
        assert (h == hstar) == tr.basicness(cfg, t)[0]


def test_gkz_separates_census():
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True)
    vecs = {tr.gkz_vector(cfg, t) for t in res.triangulations}
    assert len(vecs) == len(res.triangulations)
    for t in res.triangulations:
        assert sum(tr.gkz_vector(cfg, t)) == (cfg.dim + 1) * 12


def test_flop_path_connects_basics():
    cfg = tr.config_from_type(EXAM12)
    res = tr.explore(cfg, maximal_only=True, coherent_only=True)
    basics = [t for t in res.triangulations if tr.basicness(cfg, t)[0]]
    a = basics[0]
    for b in basics[1:]:
        path = tr.flop_path(cfg, a, b)
        cur = a
        for c in path:
            cur = tr.apply_flip(cur, c)
        assert cur == b


def test_star_euler_sums_to_cells():
    cfg = tr.config_from_type(EXAM12)
    t = tr.Triangulation.of(BASIC_T1)
    stars = [tr.star_euler(cfg, t, p) for p in range(cfg.n)]
    assert sum(stars) == 4 * len(t.simplices)
    # the interior junior (1,2,3,6)/12 is point 4 and meets every cell
    assert stars[4] == 12


def test_small_type_census():
    cfg = tr.config_from_type(parse_type("1/6(1,1,2,2)"))
    res = tr.explore(cfg, maximal_only=True)
    assert res.complete
    assert sorted(res.triangulations, key=lambda t: t.simplices) == brute_census(cfg)


def test_explore_deterministic():
    cfg = tr.config_from_type(EXAM12)
    r1 = tr.explore(cfg, maximal_only=True)
    r2 = tr.explore(cfg, maximal_only=True)
    assert r1.triangulations == r2.triangulations
