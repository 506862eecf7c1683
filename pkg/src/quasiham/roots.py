"""Exact root-system data for the compact simple simply connected types.

Simple roots are the canonical internal basis: a vector is stored as its
tuple of rational coefficients against the simple roots.  The Gram matrix
of the basic inner product (long roots of squared length 2) turns those
coefficients into geometry.  Positive roots come from height-by-height
closure using root strings, so everything stays in exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .rational import CartanVector, RationalMatrix, dot, matvec, solve

_RANK_RULES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class LieType:
    """A simple Lie type: series letter plus rank."""

    series: str
    rank: int

    def __post_init__(self):
        lo_hi = _RANK_RULES.get(self.series)
        if lo_hi is None:
            raise InputError("invalid-series", f"unknown series {self.series!r}")
        lo, hi = lo_hi
        if self.rank < lo or (hi is not None and self.rank > hi):
            bound = f">= {lo}" if hi is None else f"in [{lo}, {hi}]"
            raise InputError(
                "invalid-rank", f"series {self.series} needs rank {bound}, got {self.rank}"
            )

    @staticmethod
    def parse(text: str) -> "LieType":
        """Parse 'A2', 'a2', or 'A_2' style labels."""
        t = text.strip().replace("_", "")
        if len(t) < 2 or not t[0].isalpha() or not t[1:].isdigit():
            raise InputError("invalid-type", f"cannot parse Lie type {text!r}")
        return LieType(t[0].upper(), int(t[1:]))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


@dataclass(frozen=True)
class RootSystem:
    """Immutable root-system data, all entries exact rationals.

    cartan[i][j] is 2(a_i, a_j)/(a_j, a_j); gram[i][j] = (a_i, a_j) under
    the basic inner product.  positive_roots are ordered by height then
    lexicographically; lowest_root is minus the highest root.
    """

    lie_type: LieType
    cartan_matrix: tuple[tuple[int, ...], ...]
    gram: RationalMatrix
    positive_roots: tuple[CartanVector, ...]
    lowest_root: CartanVector
    fundamental_weights: tuple[CartanVector, ...]
    dual_coxeter: int
    root_halves: tuple[Fraction, ...]  # d_i = (a_i, a_i)/2 per simple root

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def simple_roots(self) -> tuple[CartanVector, ...]:
        r = self.rank
        return tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(r)) for i in range(r)
        )

    @property
    def highest_root(self) -> CartanVector:
        return tuple(-c for c in self.lowest_root)

    @property
    def marks(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.highest_root)

    @property
    def comarks(self) -> tuple[Fraction, ...]:
        """Coefficients a_i * d_i; integers for every simple type."""
        return tuple(a * d for a, d in zip(self.highest_root, self.root_halves))

    def is_root(self, v: CartanVector) -> bool:
        neg = tuple(-c for c in v)
        return v in self._root_index or neg in self._root_index

    @property
    def _root_index(self) -> frozenset:
        return frozenset(self.positive_roots)


def _cartan_and_halves(lt: LieType) -> tuple[list[list[int]], list[Fraction]]:
    r = lt.rank
    one = Fraction(1)
    cartan = [[2 if i == j else 0 for j in range(r)] for i in range(r)]

    def chain(edges):
        for i, j in edges:
            cartan[i][j] = -1
            cartan[j][i] = -1

    halves = [one] * r
    if lt.series in ("A", "B", "C"):
        chain((i, i + 1) for i in range(r - 1))
        if lt.series == "B":
            cartan[r - 2][r - 1] = -2  # last root short
            halves[r - 1] = Fraction(1, 2)
        elif lt.series == "C":
            cartan[r - 1][r - 2] = -2  # last root long, others short
            halves = [Fraction(1, 2)] * (r - 1) + [one]
    elif lt.series == "D":
        chain((i, i + 1) for i in range(r - 2))
        chain([(r - 3, r - 1)])
    elif lt.series == "E":
        # chain 1-3-4-5-..., node 2 hangs off node 4 (1-based labels)
        chain([(0, 2)])
        chain((i, i + 1) for i in range(2, r - 1))
        chain([(1, 3)])
    elif lt.series == "F":
        chain([(0, 1), (1, 2), (2, 3)])
        cartan[1][2] = -2  # roots 3,4 short
        halves[2] = halves[3] = Fraction(1, 2)
    elif lt.series == "G":
        cartan[0][1] = -1
        cartan[1][0] = -3  # first root short, squared length 2/3
        halves[0] = Fraction(1, 3)
    return cartan, halves


def _positive_roots(cartan: list[list[int]]) -> list[CartanVector]:
    """Height-by-height closure: alpha + a_i is a root iff its root string
    through a_i still ascends (q - <alpha, a_i^v> > 0)."""
    r = len(cartan)
    simple = [tuple(Fraction(1 if i == j else 0) for j in range(r)) for i in range(r)]
    found = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for alpha in layer:
            for i in range(r):
                pairing = sum(int(alpha[m]) * cartan[m][i] for m in range(r))
                q = 0
                probe = alpha
                while True:
                    probe = tuple(c - (1 if m == i else 0) for m, c in enumerate(probe))
                    if probe in found:
                        q += 1
                    else:
                        break
                if q - pairing > 0:
                    beta = tuple(c + (1 if m == i else 0) for m, c in enumerate(alpha))
                    if beta not in found:
                        found.add(beta)
                        nxt.append(beta)
        nxt.sort()
        ordered.extend(nxt)
        layer = nxt
    ordered.sort(key=lambda v: (sum(v), v))
    return ordered


@lru_cache(maxsize=None)
def build_root_system(lie_type: LieType) -> RootSystem:
    """Construct the full exact root-system record for one simple type."""
    cartan, halves = _cartan_and_halves(lie_type)
    r = lie_type.rank
    gram = tuple(
        tuple(halves[j] * cartan[i][j] for j in range(r)) for i in range(r)
    )
    for i in range(r):
        for j in range(r):
            if gram[i][j] != gram[j][i]:
                raise InputError("asymmetric-gram", f"bad symmetrization at {(i, j)}")

    positives = _positive_roots(cartan)
    highest = positives[-1]
    if len(positives) > 1 and sum(positives[-2]) == sum(highest):
        raise InputError("no-unique-highest", "highest root is not unique")
    lowest = tuple(-c for c in highest)

    # (w_i, a_j^v) = sum_m c_m cartan[m][j] = delta_ij, so the coefficient
    # rows solve against the transposed Cartan matrix.
    ct = [[Fraction(cartan[m][j]) for m in range(r)] for j in range(r)]
    weights = []
    for i in range(r):
        rhs = tuple(Fraction(1 if j == i else 0) for j in range(r))
        weights.append(solve(ct, rhs))

    # Dual Coxeter number: 1 + height of the highest root rewritten in the
    # simple-coroot basis, i.e. 1 + sum of mark_i * d_i.
    hprime = Fraction(1) + sum(
        (Fraction(c) * d for c, d in zip(highest, halves)), Fraction(0)
    )
    if hprime.denominator != 1:
        raise InputError("bad-dual-coxeter", f"non-integer value {hprime}")

    return RootSystem(
        lie_type=lie_type,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        gram=gram,
        positive_roots=tuple(positives),
        lowest_root=lowest,
        fundamental_weights=tuple(weights),
        dual_coxeter=int(hprime),
        root_halves=tuple(halves),
    )


def inner_product(rs: RootSystem, x: CartanVector, y: CartanVector) -> Fraction:
    """Basic inner product of two vectors given in simple-root coordinates."""
    if len(x) != rs.rank or len(y) != rs.rank:
        raise InputError(
            "dimension-mismatch",
            f"expected vectors of length {rs.rank}, got {len(x)} and {len(y)}",
        )
    return dot(matvec(rs.gram, x), y)


def coroot_pairing(rs: RootSystem, x: CartanVector, i: int) -> Fraction:
    """(x, a_i^v) = 2(x, a_i)/(a_i, a_i) for the i-th simple root."""
    col = tuple(rs.gram[m][i] for m in range(rs.rank))
    return dot(col, x) / rs.root_halves[i]


def height(rs: RootSystem, root: CartanVector) -> int:
    """Sum of simple-root coefficients; rejects vectors that are not roots."""
    if len(root) != rs.rank:
        raise InputError("dimension-mismatch", f"expected length {rs.rank}")
    if not rs.is_root(root):
        raise InputError("not-a-root", f"{root} is not a root of {rs.lie_type}")
    h = sum(root)
    return int(h)


def reflect(rs: RootSystem, v: CartanVector, i: int) -> CartanVector:
    """Simple reflection s_i(v) = v - (v, a_i^v) a_i."""
    c = coroot_pairing(rs, v, i)
    return tuple(a - (c if m == i else 0) for m, a in enumerate(v))


def a_series_embedding(rs: RootSystem, v: CartanVector) -> CartanVector:
    """Convert simple-root coordinates to the sum-zero R^n eigenvalue
    coordinates of the A series (a_i maps to e_i - e_{i+1})."""
    if rs.lie_type.series != "A":
        raise InputError("not-a-series", "R^n embedding only defined for type A")
    coeffs = (Fraction(0),) + tuple(v) + (Fraction(0),)
    return tuple(coeffs[i + 1] - coeffs[i] for i in range(rs.rank + 1))


def a_series_from_euclidean(rs: RootSystem, x: CartanVector) -> CartanVector:
    """Inverse of the R^n embedding; requires coordinates summing to zero."""
    if rs.lie_type.series != "A":
        raise InputError("not-a-series", "R^n coordinates only defined for type A")
    if len(x) != rs.rank + 1:
        raise InputError("dimension-mismatch", f"expected length {rs.rank + 1}")
    if sum(x) != 0:
        raise InputError("nonzero-sum", "eigenvalue coordinates must sum to zero")
    acc = Fraction(0)
    out = []
    for i in range(rs.rank):
        acc += x[i]
        out.append(acc)
    return tuple(out)
