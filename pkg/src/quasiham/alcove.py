"""Fundamental alcove geometry, the weight lattice, and level-k weights.

The alcove is the simplex cut out by (a_i, xi) >= 0 for simple roots a_i
together with (a_0, xi) >= -1 for the lowest root a_0; scaling the last
inequality by k gives the level-k alcove.  All tests here are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import NamedTuple

from .errors import InputError
from .rational import (
    CartanVector,
    denominator_lcm,
    format_vector,
    matvec,
    solve,
    vsub,
    zero,
)
from .roots import RootSystem, coroot_pairing, inner_product


@dataclass(frozen=True)
class AlcoveModel:
    """Alcove vertices for one root system, vertex 0 always the origin."""

    rs: RootSystem
    vertices: tuple[CartanVector, ...]

    def to_json(self) -> dict:
        return {
            "lie_type": str(self.rs.lie_type),
            "vertices": [format_vector(v) for v in self.vertices],
        }


@dataclass(frozen=True)
class LevelWeightSet:
    """All weights inside the closed level-k alcove, sorted lexicographically."""

    rs: RootSystem
    level: int
    weights: tuple[CartanVector, ...]

    def to_json(self) -> dict:
        return {
            "lie_type": str(self.rs.lie_type),
            "level": self.level,
            "count": len(self.weights),
            "weights": [format_vector(w) for w in self.weights],
        }


class AlcoveMembership(NamedTuple):
    contains: bool
    boundary: bool


@lru_cache(maxsize=None)
def alcove_vertices(rs: RootSystem) -> AlcoveModel:
    """Solve the vertex systems (a_i, v_j) = 0 for i != j, (a_0, v_j) = -1."""
    r = rs.rank
    theta_row = matvec(rs.gram, rs.highest_root)  # row of (theta, .) pairings
    verts = [zero(r)]
    for j in range(r):
        rows = []
        rhs = []
        for i in range(r):
            if i == j:
                rows.append(theta_row)
                rhs.append(Fraction(1))  # (a_0, v) = -1  <=>  (theta, v) = 1
            else:
                rows.append(tuple(rs.gram[i]))
                rhs.append(Fraction(0))
        verts.append(solve(rows, tuple(rhs)))
    return AlcoveModel(rs=rs, vertices=tuple(verts))


def _membership(rs: RootSystem, xi: CartanVector, k) -> AlcoveMembership:
    k = Fraction(k)
    tight = False
    for i in range(rs.rank):
        p = inner_product(rs, rs.simple_roots[i], xi)
        if p < 0:
            return AlcoveMembership(False, False)
        tight = tight or p == 0
    p = inner_product(rs, rs.highest_root, xi)
    if p > k:
        return AlcoveMembership(False, False)
    return AlcoveMembership(True, tight or p == k)


def alcove_contains(rs: RootSystem, xi: CartanVector, k: int) -> AlcoveMembership:
    """Exact membership of xi in the closed level-k alcove, with a flag that
    marks boundary points (some defining inequality tight)."""
    if len(xi) != rs.rank:
        raise InputError("dimension-mismatch", f"expected length {rs.rank}")
    if k <= 0:
        raise InputError("invalid-level", f"level must be positive, got {k}")
    return _membership(rs, xi, k)


def weight_lattice_contains(rs: RootSystem, mu: CartanVector) -> bool:
    """True iff (mu, a_i^v) is an integer for every simple root."""
    if len(mu) != rs.rank:
        raise InputError("dimension-mismatch", f"expected length {rs.rank}")
    return all(
        coroot_pairing(rs, mu, i).denominator == 1 for i in range(rs.rank)
    )


def fundamental_weight_coords(rs: RootSystem, mu: CartanVector) -> CartanVector:
    """Coordinates of mu against the fundamental weights: m_i = (mu, a_i^v)."""
    return tuple(coroot_pairing(rs, mu, i) for i in range(rs.rank))


def level_weights(rs: RootSystem, k: int) -> LevelWeightSet:
    """Enumerate the weight lattice inside the closed level-k alcove.

    Dominant weights are integer combinations sum m_i w_i with m_i >= 0; the
    level bound (theta, mu) <= k caps each m_i by k, so a finite box suffices
    and the alcove filter keeps exactly the level-k set.
    """
    if k < 0:
        raise InputError("invalid-level", f"level must be >= 0, got {k}")
    r = rs.rank
    weights = []

    def descend(i: int, partial: CartanVector, budget: Fraction):
        if i == r:
            weights.append(partial)
            return
        comark = rs.comarks[i]
        m = 0
        while m * comark <= budget:
            cand = tuple(
                p + m * w for p, w in zip(partial, rs.fundamental_weights[i])
            )
            descend(i + 1, cand, budget - m * comark)
            m += 1

    descend(0, zero(r), Fraction(k))
    kept = [w for w in weights if _membership(rs, w, max(k, 0)).contains]
    if len(set(kept)) != len(kept):
        raise InputError("duplicate-weights", "enumeration produced duplicates")
    kept.sort()
    return LevelWeightSet(rs=rs, level=k, weights=tuple(kept))


@lru_cache(maxsize=None)
def minimal_integral_level(rs: RootSystem) -> int:
    """Smallest k >= 1 with k * v in the weight lattice for every alcove
    vertex v, computed as the lcm of the denominators of the vertices in
    fundamental-weight coordinates."""
    model = alcove_vertices(rs)
    out = 1
    for v in model.vertices:
        out = lcm(out, denominator_lcm(fundamental_weight_coords(rs, v)))
    return out


def barycentric_coords(rs: RootSystem, xi: CartanVector) -> tuple[Fraction, ...]:
    """Barycentric coordinates of xi against the alcove vertices.

    t_j = mark_j * (a_j, xi) for j >= 1 and t_0 = 1 - (theta, xi); these sum
    to one and are all nonnegative exactly on the alcove.
    """
    t = [Fraction(1) - inner_product(rs, rs.highest_root, xi)]
    for j in range(rs.rank):
        t.append(rs.marks[j] * inner_product(rs, rs.simple_roots[j], xi))
    return tuple(t)


def open_face_set(rs: RootSystem, xi: CartanVector) -> frozenset[int]:
    """Indices j of the cover pieces containing xi: the vertices whose
    barycentric coordinate at xi is strictly positive."""
    if not _membership(rs, xi, 1).contains:
        raise InputError("not-in-alcove", f"{xi} lies outside the level-1 alcove")
    bary = barycentric_coords(rs, xi)
    return frozenset(j for j, t in enumerate(bary) if t > 0)


def transition_weight(rs: RootSystem, i: int, j: int) -> CartanVector:
    """Difference v_j - v_i of alcove vertices; the weight labeling the
    transition line bundle between cover pieces i and j."""
    model = alcove_vertices(rs)
    m = len(model.vertices)
    if not (0 <= i < m and 0 <= j < m):
        raise InputError("invalid-vertex", f"vertex indices must be in 0..{m - 1}")
    return vsub(model.vertices[j], model.vertices[i])
