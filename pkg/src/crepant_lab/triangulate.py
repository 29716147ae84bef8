"""Lattice-triangulation engine over standardized point configurations.

Seeding by regular (height-induced) triangulations, validity/basicness
checks, f/h-vectors, full-dimensional circuits and bistellar flips,
coherence testing by exact rational LP, GKZ vectors, flip-graph
exploration and flop paths.  All arithmetic is exact.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .grouptype import BudgetError, QuotientType, junior_config
from .lattice import det_int, standardize_junior

Point = tuple[int, ...]
Simplex = tuple[int, ...]  # sorted point indices, d+1 of them


@dataclass(frozen=True)
class PointConfig:
    """Integer points in dimension d with provenance labels."""

    dim: int
    points: tuple[Point, ...]
    labels: tuple[str, ...]  # "vertex" | "junior" | "point"
    carriers: tuple[frozenset[int], ...]  # face of the ambient simplex

    def __post_init__(self) -> None:
        assert len(set(self.points)) == len(self.points), "duplicate points"

    @property
    def n(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Triangulation:
    """A set of maximal simplices, canonically sorted."""

    simplices: tuple[Simplex, ...]

    @staticmethod
    def of(simplices: Iterable[Sequence[int]]) -> "Triangulation":
        return Triangulation(
            tuple(sorted(tuple(sorted(s)) for s in simplices))
        )

    @property
    def used_points(self) -> frozenset[int]:
        return frozenset(i for s in self.simplices for i in s)


@dataclass(frozen=True)
class Circuit:
    """A minimal affinely dependent set with its signed partition."""

    points: tuple[int, ...]
    plus: tuple[int, ...]
    minus: tuple[int, ...]


@dataclass
class ExploreResult:
    triangulations: list[Triangulation]
    complete: bool
    nodes_visited: int
    flip_edges: dict[tuple[int, int], Circuit] = field(default_factory=dict)


def config_from_type(t: QuotientType, budget: int = 10**7) -> PointConfig:
    """The standardized junior configuration of a Gorenstein type."""
    cfg = junior_config(t, budget)
    pts, _ = standardize_junior(cfg, t)
    return PointConfig(
        t.r - 1,
        tuple(pts),
        tuple(jp.kind for jp in cfg),
        tuple(jp.carrier for jp in cfg),
    )


# ---------------------------------------------------------------------------
# exact geometry helpers

def simplex_volume(cfg: PointConfig, s: Sequence[int]) -> int:
    """Normalized volume (unimodular simplex = 1); 0 if degenerate."""
    pts = [cfg.points[i] for i in s]
    edges = [
        [p[c] - pts[0][c] for c in range(cfg.dim)] for p in pts[1:]
    ]
    return abs(det_int(edges))


def barycentric(
    cfg: PointConfig, s: Sequence[int], p: Sequence[Fraction | int]
) -> list[Fraction] | None:
    """Barycentric coordinates of p w.r.t. simplex s, or None if s is
    degenerate.  Solves the (d+1)x(d+1) affine system exactly."""
    d = cfg.dim
    m = [[Fraction(cfg.points[i][c]) for i in s] for c in range(d)]
    m.append([Fraction(1)] * len(s))
    rhs = [Fraction(p[c]) for c in range(d)] + [Fraction(1)]
    # gaussian elimination
    n = d + 1
    aug = [row + [rhs[r]] for r, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def total_volume(cfg: PointConfig) -> int:
    """Normalized volume of conv(cfg) = the simplex on the vertex points
    (every other configuration point lies inside it)."""
    verts = [i for i, lab in enumerate(cfg.labels) if lab == "vertex"]
    if len(verts) == cfg.dim + 1:
        return simplex_volume(cfg, verts)
    tri = placing_triangulation(cfg)
    return sum(simplex_volume(cfg, s) for s in tri.simplices)


# ---------------------------------------------------------------------------
# exact rational LP (two-phase simplex, Bland's rule)

def _lp_max(
    a: list[list[Fraction]], b: list[Fraction], c: list[Fraction]
) -> tuple[str, Fraction | None, list[Fraction] | None]:
    """maximize c.x subject to a x = b, x >= 0.

    Returns (status, value, x) with status in {optimal, infeasible,
    unbounded}.  Bland's rule guarantees termination.
    """
    m, n = len(a), len(c)
    a = [row[:] for row in a]
    b = b[:]
    for r in range(m):
        if b[r] < 0:
            a[r] = [-x for x in a[r]]
            b[r] = -b[r]
    # phase 1: artificial variables
    tab = [a[r] + [Fraction(1 if k == r else 0) for k in range(m)] + [b[r]] for r in range(m)]
    basis = [n + r for r in range(m)]
    cost = [Fraction(0)] * n + [Fraction(1)] * m

    rhs = n + m  # index of the right-hand-side column

    def pivot(tab: list[list[Fraction]], basis: list[int], obj: list[Fraction], width: int) -> str:
        while True:
            # reduced costs; entering column restricted to the first
            # `width` variables (Bland: smallest eligible index)
            enter = None
            for j in range(width):
                if j in basis:
                    continue
                red = obj[j] - sum(obj[basis[r]] * tab[r][j] for r in range(m))
                if red < 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            ratios = [
                (tab[r][rhs] / tab[r][enter], basis[r], r)
                for r in range(m)
                if tab[r][enter] > 0
            ]
            if not ratios:
                return "unbounded"
            _, _, leave = min(ratios)
            pv = tab[leave][enter]
            tab[leave] = [x / pv for x in tab[leave]]
            for r in range(m):
                if r != leave and tab[r][enter] != 0:
                    f = tab[r][enter]
                    tab[r] = [x - f * y for x, y in zip(tab[r], tab[leave])]
            basis[leave] = enter

    st = pivot(tab, basis, cost, n + m)
    assert st == "optimal"
    val1 = sum(cost[basis[r]] * tab[r][n + m] for r in range(m))
    if val1 != 0:
        return "infeasible", None, None
    # drive artificial variables out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            enter = next((j for j in range(n) if tab[r][j] != 0), None)
            if enter is None:
                continue  # redundant row
            pv = tab[r][enter]
            tab[r] = [x / pv for x in tab[r]]
            for rr in range(m):
                if rr != r and tab[rr][enter] != 0:
                    f = tab[rr][enter]
                    tab[rr] = [x - f * y for x, y in zip(tab[rr], tab[r])]
            basis[r] = enter
    # phase 2 on original objective (maximize c <=> minimize -c)
    obj2 = [-x for x in c] + [Fraction(0)] * m
    # forbid artificial re-entry by making them costly is unnecessary:
    # they are nonbasic with column still present; restrict pivoting width
    st = pivot(tab, basis, obj2, n)
    if st == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * n
    for r in range(m):
        if basis[r] < n:
            x[basis[r]] = tab[r][n + m]
    return "optimal", sum(ci * xi for ci, xi in zip(c, x)), x


# ---------------------------------------------------------------------------
# seeding: regular triangulation from generic heights

def _heights(cfg: PointConfig, order: Sequence[int], scale: int) -> list[Fraction]:
    """Paraboloid heights with an order-based perturbation: every point
    lifts to a strictly convex surface, so all points become vertices."""
    w = [Fraction(0)] * cfg.n
    for rank, i in enumerate(order):
        p = cfg.points[i]
        # powers of 1/scale: a linear relation between the perturbations
        # is a nonzero polynomial in 1/scale, so it dies once scale is
        # large enough (a fixed offset like (rank+1)/scale does not --
        # circuit relations with sum lambda_i (rank_i + 1) = 0 survive
        # every rescaling)
        w[i] = Fraction(sum(x * x for x in p)) + Fraction(1, scale ** (rank + 1))
    return w


class DegenerateLiftError(RuntimeError):
    """The heights put d+2 lifted points on a common lower facet."""


def _regular_cells(cfg: PointConfig, w: Sequence[Fraction]) -> Triangulation:
    """Cells of the lower-hull subdivision induced by heights w; raises
    DegenerateLiftError when w is not generic (a non-cell point lies on
    the affine span of a lower cell, which would silently leave gaps)."""
    d, n = cfg.dim, cfg.n
    cells = []
    for s in combinations(range(n), d + 1):
        if simplex_volume(cfg, s) == 0:
            continue
        # affine function with ell(p_i) = w_i on s
        m = [[Fraction(cfg.points[i][c]) for c in range(d)] + [Fraction(1)] for i in s]
        rhs = [w[i] for i in s]
        coef = _solve_square(m, rhs)
        ok = True
        tied = False
        for p in range(n):
            if p in s:
                continue
            val = sum(coef[c] * cfg.points[p][c] for c in range(d)) + coef[d]
            if val > w[p]:
                ok = False
                break
            if val == w[p]:
                tied = True
        if ok:
            if tied:
                raise DegenerateLiftError(f"non-generic heights at cell {s}")
            cells.append(s)
    return Triangulation.of(cells)


def _solve_square(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(m)
    aug = [row[:] + [rhs[r]] for r, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def placing_triangulation(
    cfg: PointConfig, order: Sequence[int] | None = None
) -> Triangulation:
    """A coherent triangulation using every configuration point.

    Points are lifted onto the paraboloid with a small order-dependent
    perturbation and the lower hull is read off; the perturbation scale
    is increased until the result is a valid triangulation (genericity).
    """
    if order is None:
        order = list(range(cfg.n))
    scale = 1 << 20
    for _ in range(12):
        w = _heights(cfg, order, scale)
        try:
            tri = _regular_cells(cfg, w)
        except DegenerateLiftError:
            scale *= scale
            continue
        if tri.simplices and is_valid(cfg, tri) and tri.used_points == frozenset(range(cfg.n)):
            return tri
        scale *= scale
    raise BudgetError("could not reach a generic lift")


# ---------------------------------------------------------------------------
# validity / basicness / vectors

def _facet_incidence(tri: Triangulation) -> dict[tuple[int, ...], list[Simplex]]:
    inc: dict[tuple[int, ...], list[Simplex]] = {}
    for s in tri.simplices:
        for v in s:
            f = tuple(x for x in s if x != v)
            inc.setdefault(f, []).append(s)
    return inc


def _proper_pair(cfg: PointConfig, s1: Simplex, s2: Simplex) -> bool:
    """conv(s1) /\\ conv(s2) == conv(shared vertices), by exact LP."""
    shared = set(s1) & set(s2)
    d = cfg.dim
    n1, n2 = len(s1), len(s2)
    # vars: lambda (n1), mu (n2); rows: d coordinate equalities + 2 sums
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    for c in range(d):
        a.append(
            [Fraction(cfg.points[i][c]) for i in s1]
            + [Fraction(-cfg.points[j][c]) for j in s2]
        )
        b.append(Fraction(0))
    a.append([Fraction(1)] * n1 + [Fraction(0)] * n2)
    b.append(Fraction(1))
    a.append([Fraction(0)] * n1 + [Fraction(1)] * n2)
    b.append(Fraction(1))
    obj = [Fraction(0 if i in shared else 1) for i in s1] + [Fraction(0)] * n2
    status, val, _ = _lp_max(a, b, obj)
    if status == "infeasible":
        return not shared or True  # disjoint hulls: proper iff no shared pts? shared pts make it feasible
    assert status == "optimal"
    return val == 0


def is_valid(cfg: PointConfig, tri: Triangulation, expected_volume: int | None = None) -> bool:
    """Volume audit + facet pairing + pairwise proper intersections."""
    if not tri.simplices:
        return False
    d = cfg.dim
    vols = [simplex_volume(cfg, s) for s in tri.simplices]
    if any(v == 0 for v in vols):
        return False
    if len(set(tri.simplices)) != len(tri.simplices):
        return False
    if expected_volume is not None and sum(vols) != expected_volume:
        return False
    for f, inc in _facet_incidence(tri).items():
        if len(inc) > 2:
            return False
    for s1, s2 in combinations(tri.simplices, 2):
        if not _proper_pair(cfg, s1, s2):
            return False
    return True


def basicness(cfg: PointConfig, tri: Triangulation) -> tuple[bool, list[Simplex]]:
    bad = [s for s in tri.simplices if simplex_volume(cfg, s) != 1]
    return not bad, bad


def fh_vectors(tri: Triangulation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(f, h) of the simplicial complex spanned by the maximal simplices.

    f = (f_-1, f_0, ..., f_d) starting with the empty face; h of length
    d+2 via the standard binomial transform.
    """
    faces: set[tuple[int, ...]] = set()
    top = max(len(s) for s in tri.simplices)
    for s in tri.simplices:
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    f = [1] + [0] * top
    for fc in faces:
        f[len(fc)] += 1
    from math import comb

    dp1 = top  # d+1
    h = []
    for k in range(dp1 + 1):
        h.append(
            sum(
                (-1) ** (k - i) * comb(dp1 - i, k - i) * f[i]
                for i in range(k + 1)
            )
        )
    return tuple(f), tuple(h)


# ---------------------------------------------------------------------------
# circuits and flips

def _circuit_of(cfg: PointConfig, pts: Sequence[int]) -> Circuit | None:
    """The signed circuit inside a spanning (d+2)-subset.

    The affine dependence on such a subset is unique up to scale; its
    support is the circuit (coefficients may vanish when the subset
    contains a lower-dimensional dependent set, e.g. collinear points).
    Returns None if the subset has a dependence space of dimension > 1.
    """
    d = cfg.dim
    pts = sorted(pts)
    assert len(pts) == d + 2
    # affine dependence: solve for lambda with sum lam_i (p_i,1) = 0
    m = [[Fraction(cfg.points[i][c]) for i in pts] for c in range(d)]
    m.append([Fraction(1)] * (d + 2))
    # kernel of (d+1) x (d+2) matrix
    aug = [row[:] for row in m]
    ncols = d + 2
    pivots = []
    rr = 0
    for col in range(ncols):
        piv = next((r for r in range(rr, d + 1) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rr], aug[piv] = aug[piv], aug[rr]
        pv = aug[rr][col]
        aug[rr] = [x / pv for x in aug[rr]]
        for r in range(d + 1):
            if r != rr and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rr])]
        pivots.append(col)
        rr += 1
    if rr < d + 1:
        return None  # dependence space has dim >= 2
    free = next(c for c in range(ncols) if c not in pivots)
    lam = [Fraction(0)] * ncols
    lam[free] = Fraction(1)
    for r, col in enumerate(pivots):
        lam[col] = -aug[r][free]
    plus = tuple(pts[i] for i in range(ncols) if lam[i] > 0)
    minus = tuple(pts[i] for i in range(ncols) if lam[i] < 0)
    if len(plus) > len(minus) or (len(plus) == len(minus) and plus > minus):
        plus, minus = minus, plus
    support = tuple(sorted(plus + minus))
    return Circuit(support, plus, minus)


def _flip_patch(
    tri_set: set[Simplex], c: Circuit, side: tuple[int, ...]
) -> tuple[set[Simplex], frozenset[frozenset[int]]] | None:
    """Simplices of the triangulation realizing one side of the circuit.

    The side is present iff for every v on it, the maximal simplices
    containing C \\ {v} all have the form (C \\ {v}) u L with a common
    nonempty set of links L across the side.  Returns (patch, links)."""
    links: frozenset[frozenset[int]] | None = None
    patch: set[Simplex] = set()
    for v in side:
        face = frozenset(c.points) - {v}
        inc = [s for s in tri_set if face <= set(s)]
        if not inc:
            return None
        lv = frozenset(frozenset(s) - face for s in inc)
        if links is None:
            links = lv
        elif links != lv:
            return None
        patch.update(inc)
    assert links is not None
    return patch, links


def find_flips(
    cfg: PointConfig,
    tri: Triangulation,
    keep_points: bool = True,
) -> list[Circuit]:
    """Circuits supporting a bistellar flip of the triangulation.

    Candidates are the circuits spanned by pairs of maximal simplices
    sharing a facet; a flip exists when one side of the circuit sits in
    the triangulation with a common link.  With keep_points, flips that
    would drop a currently used vertex are suppressed (so exploration
    stays inside the maximal triangulations)."""
    seen: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    tri_set = set(tri.simplices)
    out = []
    for inc in _facet_incidence(tri).values():
        if len(inc) != 2:
            continue
        pts = tuple(sorted(set(inc[0]) | set(inc[1])))
        c = _circuit_of(cfg, pts)
        if c is None or (c.plus, c.minus) in seen:
            continue
        seen.add((c.plus, c.minus))
        for side, other in ((c.plus, c.minus), (c.minus, c.plus)):
            got = _flip_patch(tri_set, c, side)
            if got is None:
                continue
            patch, links = got
            if keep_points:
                replacement = {
                    tuple(sorted((frozenset(c.points) - {w}) | L))
                    for w in other
                    for L in links
                }
                survivors = (tri_set - patch) | replacement
                if {i for s in survivors for i in s} != {
                    i for s in tri_set for i in s
                }:
                    continue
            out.append(c)
            break
    return out


def apply_flip(tri: Triangulation, c: Circuit) -> Triangulation:
    """Swap the two triangulations of the circuit's span inside tri
    (an involution: flipping twice returns the original)."""
    tri_set = set(tri.simplices)
    for side, other in ((c.plus, c.minus), (c.minus, c.plus)):
        got = _flip_patch(tri_set, c, side)
        if got is None:
            continue
        patch, links = got
        replacement = {
            tuple(sorted((frozenset(c.points) - {w}) | L))
            for w in other
            for L in links
        }
        return Triangulation.of((tri_set - patch) | replacement)
    raise ValueError("circuit not supported on this triangulation")


# ---------------------------------------------------------------------------
# coherence, GKZ

def coherence_constraints(cfg: PointConfig, tri: Triangulation) -> list[list[Fraction]]:
    """Rows c with the meaning: heights w are admissible iff c.w > 0.

    One row per interior wall (the opposite vertex of one side must lift
    strictly below the affine span of the other side -- local strict
    upper convexity, which over a convex support is equivalent to global
    regularity), and one row per unused point (it must lie strictly
    below the lifted surface of a simplex containing it)."""
    n = cfg.n
    rows: list[list[Fraction]] = []
    for f, inc in _facet_incidence(tri).items():
        if len(inc) != 2:
            continue
        s1, s2 = inc
        v = next(x for x in s2 if x not in f)
        bary = barycentric(cfg, s1, cfg.points[v])
        assert bary is not None
        coeff = [Fraction(0)] * n
        for lam, i in zip(bary, s1):
            coeff[i] += lam
        coeff[v] -= 1
        rows.append(coeff)
    unused = set(range(n)) - set(tri.used_points)
    for p in unused:
        for s in tri.simplices:
            bary = barycentric(cfg, s, cfg.points[p])
            if bary is not None and all(x >= 0 for x in bary):
                coeff = [Fraction(0)] * n
                for lam, i in zip(bary, s):
                    coeff[i] += lam
                coeff[p] -= 1
                rows.append(coeff)
                break
        else:
            raise ValueError(f"point {p} outside the triangulated region")
    return rows


def is_coherent(
    cfg: PointConfig,
    tri: Triangulation,
    certificate: Sequence[Fraction | int] | None = None,
) -> tuple[bool, list[Fraction] | None]:
    """Exact regularity test.  Returns (flag, certificate heights).

    With a candidate certificate, the constraint system is verified
    directly (fast path, exact); otherwise a feasibility LP with slack
    normalized to >= 1 is solved by the exact simplex method."""
    n = cfg.n
    rows = coherence_constraints(cfg, tri)
    if not rows:
        return True, [Fraction(0)] * n
    if certificate is not None:
        w = [Fraction(x) for x in certificate]
        if all(sum(c * wi for c, wi in zip(row, w)) > 0 for row in rows):
            return True, w
        # fall through to the LP: a bad candidate proves nothing
    m = len(rows)
    # variables: w_i = u_i - v_i (2n), one surplus per constraint
    a = []
    for r, row in enumerate(rows):
        a.append(
            [x for x in row]
            + [-x for x in row]
            + [Fraction(-1 if k == r else 0) for k in range(m)]
        )
    rhs = [Fraction(1)] * m
    status, _, x = _lp_max(a, rhs, [Fraction(0)] * (2 * n + m))
    if status == "infeasible":
        return False, None
    assert x is not None
    w = [x[i] - x[n + i] for i in range(n)]
    # independent re-check of the certificate
    for row in rows:
        assert sum(ci * wi for ci, wi in zip(row, w)) >= 1
    return True, w


def gkz_vector(cfg: PointConfig, tri: Triangulation) -> tuple[int, ...]:
    out = [0] * cfg.n
    for s in tri.simplices:
        v = simplex_volume(cfg, s)
        for i in s:
            out[i] += v
    return tuple(out)


# ---------------------------------------------------------------------------
# exploration

def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CREPANT_LAB_THREADS", "1")))
    except ValueError:
        return 1


def explore(
    cfg: PointConfig,
    seeds: Sequence[Triangulation] | None = None,
    *,
    maximal_only: bool = True,
    coherent_only: bool = False,
    basic_only: bool = False,
    budget_nodes: int = 100_000,
    seed_orders: int = 1,
) -> ExploreResult:
    """BFS over the flip graph from coherent seeds.

    All reachable triangulations are collected (coherence is filtered
    afterwards by the LP, so non-coherent nodes met en route are kept
    for the census when coherent_only is off).  With maximal_only, only
    point-preserving flips are used, so every node uses all points.
    """
    if seeds is None:
        rng = random.Random(0)
        orders = [list(range(cfg.n))]
        for _ in range(max(0, seed_orders - 1)):
            o = list(range(cfg.n))
            rng.shuffle(o)
            orders.append(o)
        seeds = [placing_triangulation(cfg, o) for o in orders]
    visited: dict[Triangulation, int] = {}
    frontier: list[Triangulation] = []
    edges: dict[tuple[int, int], Circuit] = {}
    for s in seeds:
        if s not in visited:
            visited[s] = len(visited)
            frontier.append(s)
    complete = True
    while frontier:
        cur = frontier.pop(0)
        for c in find_flips(cfg, cur, keep_points=maximal_only):
            if len(visited) >= budget_nodes:
                complete = False
                break
            nxt = apply_flip(cur, c)
            if nxt not in visited:
                visited[nxt] = len(visited)
                frontier.append(nxt)
            a, b = visited[cur], visited[nxt]
            edges[(min(a, b), max(a, b))] = c
        if not complete:
            break
    tris = list(visited)
    if basic_only:
        tris = [t for t in tris if basicness(cfg, t)[0]]
    if coherent_only:
        nthreads = _thread_count()
        if nthreads > 1 and len(tris) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=nthreads) as pool:
                flags = list(pool.map(lambda t: is_coherent(cfg, t)[0], tris))
            tris = [t for t, ok in zip(tris, flags) if ok]
        else:
            tris = [t for t in tris if is_coherent(cfg, t)[0]]
    tris.sort(key=lambda t: t.simplices)
    return ExploreResult(tris, complete, len(visited), edges)


def flop_path(
    cfg: PointConfig,
    t_a: Triangulation,
    t_b: Triangulation,
    budget_nodes: int = 100_000,
) -> list[Circuit]:
    """A shortest flip sequence from t_a to t_b (BFS)."""
    if t_a == t_b:
        return []
    prev: dict[Triangulation, tuple[Triangulation, Circuit]] = {}
    visited = {t_a}
    frontier = [t_a]
    while frontier:
        nxt_frontier = []
        for cur in frontier:
            for c in find_flips(cfg, cur, keep_points=True):
                nxt = apply_flip(cur, c)
                if nxt in visited:
                    continue
                visited.add(nxt)
                prev[nxt] = (cur, c)
                if nxt == t_b:
                    path = []
                    node = t_b
                    while node != t_a:
                        node, circ = prev[node]
                        path.append(circ)
                    return path[::-1]
                if len(visited) >= budget_nodes:
                    raise BudgetError("flip-graph budget exhausted")
                nxt_frontier.append(nxt)
        frontier = nxt_frontier
    raise ValueError("triangulations not connected under supported flips")


def star_euler(cfg: PointConfig, tri: Triangulation, p: int) -> int:
    """Number of maximal simplices containing point p (= Euler number of
    the exceptional divisor attached to a junior point)."""
    count = sum(1 for s in tri.simplices if p in s)
    if count == 0:
        raise ValueError(f"point {p} unused in triangulation")
    return count
