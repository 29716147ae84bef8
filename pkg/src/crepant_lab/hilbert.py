"""Hilbert basis of the positive orthant cone w.r.t. N_G, and the first
necessary existence condition: every Hilbert-basis element must be a
vertex or a junior lattice point of the junior simplex.

Every point of the cone decomposes as a point of the half-open
parallelepiped Par(sigma_0) plus a non-negative integer combination of
the e_i, so {e_1..e_r} together with the n_g (g != id) is a complete
candidate set, and irreducibility only needs to be tested against it:
if n = p + q with p, q nonzero in the monoid, then some candidate c
satisfies c <= n componentwise with n - c still in the monoid.  This
keeps the computation at O(l^2 r) instead of a general Hilbert-basis
algorithm (cone membership is co-NP-complete in general).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .grouptype import (
    DEFAULT_BUDGET,
    GroupElement,
    QuotientType,
    TypeError_,
    enumerate_elements,
    is_gorenstein,
)


@dataclass(frozen=True)
class HilbertBasis:
    """Minimal generating set of the monoid sigma_0 /\\ N_G.

    Elements are exact rational vectors; vertices e_i come first, then
    the surviving group-element points sorted by (age, delta).
    """

    elements: tuple[tuple[Fraction, ...], ...]
    is_vertex: tuple[bool, ...]
    is_junior: tuple[bool, ...]
    ages: tuple[int, ...]


def _delta_candidates(t: QuotientType, budget: int) -> list[GroupElement]:
    return [g for g in enumerate_elements(t, budget) if not g.is_identity]


def hilbert_basis(t: QuotientType, budget: int = DEFAULT_BUDGET) -> HilbertBasis:
    """Exact Hilbert basis of sigma_0 /\\ N_G.

    Candidate deltas lie in [0, exp_G)^r, so subtracting a vertex from a
    candidate always leaves the cone; a candidate n_g is reducible iff
    some other candidate is componentwise <= it (the difference is again
    an N_G point of the cone, nonzero).  A vertex e_i is reducible only
    when some candidate is supported on coordinate i alone (possible for
    non-msc types).
    """
    e, r = t.exp_g, t.r
    candidates = _delta_candidates(t, budget)
    deltas = {g.delta for g in candidates}

    def reducible(d: tuple[int, ...]) -> bool:
        return any(
            c != d and all(c[i] <= d[i] for i in range(r)) for c in deltas
        )

    vertex_keep = [
        not any(g.support == frozenset([i]) for g in candidates)
        for i in range(r)
    ]
    kept = [g for g in candidates if not reducible(g.delta)]
    kept.sort(key=lambda g: (g.age, g.delta))

    elements = [
        tuple(Fraction(1 if i == j else 0) for i in range(r))
        for j in range(r)
        if vertex_keep[j]
    ]
    n_vert = len(elements)
    is_vertex = [True] * n_vert
    is_junior = [False] * n_vert
    ages = [0] * n_vert
    for g in kept:
        elements.append(g.point)
        is_vertex.append(False)
        is_junior.append(g.age == 1)
        ages.append(g.age)
    return HilbertBasis(
        tuple(elements), tuple(is_vertex), tuple(is_junior), tuple(ages)
    )


def first_criterion(
    t: QuotientType, budget: int = DEFAULT_BUDGET
) -> tuple[bool, list[tuple[Fraction, ...]]]:
    """Necessary condition: Hilbert basis contained in the junior simplex.

    Fails exactly when some basis element has age >= 2; those elements
    are returned as witnesses.
    """
    if not is_gorenstein(t):
        raise TypeError_(f"{t} is not Gorenstein")
    hb = hilbert_basis(t, budget)
    witnesses = [
        p for p, age in zip(hb.elements, hb.ages) if age >= 2
    ]
    return not witnesses, witnesses
