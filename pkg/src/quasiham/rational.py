"""Exact rational vectors and small exact linear algebra.

Everything lattice-sided in this package runs on `fractions.Fraction`;
no floating point enters any membership decision.  Vectors are plain
tuples of Fractions so they hash, compare, and serialize cheaply.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

CartanVector = tuple[Fraction, ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


def vec(*entries) -> CartanVector:
    """Build a CartanVector from ints, Fractions, or 'p/q' strings."""
    return tuple(Fraction(e) for e in entries)


def zero(n: int) -> CartanVector:
    return (Fraction(0),) * n


def vadd(x: CartanVector, y: CartanVector) -> CartanVector:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def vsub(x: CartanVector, y: CartanVector) -> CartanVector:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def vneg(x: CartanVector) -> CartanVector:
    return tuple(-a for a in x)


def scale(r, x: CartanVector) -> CartanVector:
    r = Fraction(r)
    return tuple(r * a for a in x)


def dot(x: CartanVector, y: CartanVector) -> Fraction:
    return sum((a * b for a, b in zip(x, y, strict=True)), Fraction(0))


def matvec(m: Sequence[Sequence[Fraction]], x: CartanVector) -> CartanVector:
    return tuple(dot(tuple(row), x) for row in m)


def solve(m: Sequence[Sequence[Fraction]], rhs: CartanVector) -> CartanVector:
    """Solve a square exact linear system by Gaussian elimination.

    Raises ValueError if the matrix is singular.
    """
    n = len(rhs)
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular exact linear system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def denominator_lcm(xs: Iterable[Fraction]) -> int:
    out = 1
    for x in xs:
        out = lcm(out, Fraction(x).denominator)
    return out


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or plain integer strings; reject anything else."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}, expected 'p/q'") from exc


def parse_vector(text: str) -> CartanVector:
    """Parse a comma-separated list of rationals."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty rational vector")
    return tuple(parse_rational(p) for p in parts)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def format_vector(x: CartanVector) -> list[str]:
    return [format_rational(a) for a in x]
