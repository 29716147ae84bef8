"""Exact integer/rational lattice algebra.

Hermite normal forms by unimodular column operations, lattice membership
tests for N_G = Z^r + sum Z(alpha_mu/q_mu), and the standardization map that
sends the junior simplex to an integer point configuration in rank r-1.
No floating point anywhere in this module.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:  # avoid a runtime import cycle with grouptype
    from .grouptype import JuniorPoint, QuotientType

IntMatrix = list[list[int]]


class RankError(ValueError):
    """Input matrix is not of full row rank."""


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns (h, u) with h = a @ u lower-triangular, positive diagonal, and
    each off-diagonal entry reduced into [0, diagonal of its row); u is
    unimodular (|det u| = 1).  Raises RankError if a is rank-deficient.
    """
    d, dp = len(a), len(a[0])
    h = [list(map(int, row)) for row in a]
    u = _identity(dp)

    def colop_sub(j: int, i: int, f: int) -> None:  # col_j -= f*col_i
        for row in h:
            row[j] -= f * row[i]
        for row in u:
            row[j] -= f * row[i]

    def colswap(i: int, j: int) -> None:
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    def colneg(i: int) -> None:
        for row in h:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]

    for i in range(d):
        while True:
            nz = [j for j in range(i, dp) if h[i][j] != 0]
            if not nz:
                raise RankError(f"row {i} has no pivot")
            jmin = min(nz, key=lambda j: abs(h[i][j]))
            if jmin != i:
                colswap(i, jmin)
            done = True
            for j in range(i + 1, dp):
                if h[i][j] != 0:
                    colop_sub(j, i, h[i][j] // h[i][i])
                    done = done and h[i][j] == 0
            if done:
                break
        if h[i][i] < 0:
            colneg(i)
        for j in range(i):
            if not 0 <= h[i][j] < h[i][i]:
                colop_sub(j, i, h[i][j] // h[i][i])
    return h, u


def _generator_matrix(t: "QuotientType") -> IntMatrix:
    """Columns generating exp_G * N_G inside Z^r."""
    e, r = t.exp_g, t.r
    cols = [[e if i == j else 0 for i in range(r)] for j in range(r)]
    for (q, w), x in zip(t.factors, t.xi):
        cols.append([x * wi for wi in w])
    return [[col[i] for col in cols] for i in range(r)]


def lattice_member(n: Sequence[Fraction], t: "QuotientType") -> bool:
    """Whether the rational vector n lies in N_G."""
    e = t.exp_g
    m = [Fraction(x) * e for x in n]
    if any(x.denominator != 1 for x in m):
        return False
    m = [int(x) for x in m]
    h, _ = hnf(_generator_matrix(t))
    # forward substitution: solve h x = m over Z
    r = t.r
    x = [0] * r
    for i in range(r):
        rem = m[i] - sum(h[i][j] * x[j] for j in range(i))
        if rem % h[i][i] != 0:
            return False
        x[i] = rem // h[i][i]
    return True


def _solve_lower_triangular(
    rmat: list[list[Fraction]], v: list[Fraction]
) -> list[Fraction]:
    n = len(rmat)
    x = [Fraction(0)] * n
    for i in range(n):
        x[i] = (v[i] - sum(rmat[i][j] * x[j] for j in range(i))) / rmat[i][i]
    return x


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix, by fraction-free elimination."""
    n = len(a)
    m = [list(map(int, row)) for row in a]
    sign, prev = 1, 1
    for i in range(n):
        piv = next((k for k in range(i, n) if m[k][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        for k in range(i + 1, n):
            for j in range(i + 1, n):
                m[k][j] = (m[k][j] * m[i][i] - m[k][i] * m[i][j]) // prev
            m[k][i] = 0
        prev = m[i][i]
    return sign * m[n - 1][n - 1]


def standardize_junior(
    cfg: Sequence["JuniorPoint"], t: "QuotientType"
) -> tuple[list[tuple[int, ...]], Fraction]:
    """Map the junior configuration onto integer vectors in Z^(r-1).

    Composes: translation by -e_1; the unimodular map Phi with
    Phi(e_1)=e_1-e_2, Phi(e_2)=e_1, Phi(e_j)=e_1+e_j; projection to the
    hyperplane x_1=0; and R^-1 for R the HNF basis of the image lattice.
    The image lattice is exactly Z^(r-1), so the affine structure, all
    lattice-point counts and normalized volumes are preserved.

    Returns (integer points in input order, euclidean volume of a
    unimodular (r-1)-simplex) -- normalized volume = euclidean / vol_unit.
    """
    e, r = t.exp_g, t.r
    # generators of the projected lattice: e_2..e_r and alpha'_mu/q_mu,
    # written in coordinates (x_2,...,x_r)
    cols = [[e if i == j else 0 for i in range(r - 1)] for j in range(r - 1)]
    for (q, w), x in zip(t.factors, t.xi):
        theta = sum(w)
        ap = [theta - w[0]] + list(w[2:])
        cols.append([x * c for c in ap])
    a = [[col[i] for col in cols] for i in range(r - 1)]
    h, _ = hnf(a)
    rmat = [[Fraction(h[i][j], e) for j in range(r - 1)] for i in range(r - 1)]

    out: list[tuple[int, ...]] = []
    for jp in cfg:
        v = [Fraction(x) for x in jp.point]
        v[0] -= 1  # translate by -e_1
        proj = [-v[0]] + v[2:]  # Phi then drop the (zero) first coordinate
        y = _solve_lower_triangular(rmat, proj)
        assert all(c.denominator == 1 for c in y), "image point not integral"
        out.append(tuple(int(c) for c in y))

    # audit: image of the vertex simplex has normalized volume l
    verts = [p for p, jp in zip(out, cfg) if jp.kind == "vertex"]
    if len(verts) == r:
        edges = [
            [verts[i][c] - verts[0][c] for c in range(r - 1)]
            for i in range(1, r)
        ]
        assert abs(det_int(edges)) == t.order
    return out, Fraction(1, factorial(r - 1))
