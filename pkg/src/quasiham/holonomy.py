"""Discretized holonomy of connections on the circle and the gauge action.

A connection is a uniform grid of algebra samples a_1..a_N, read as midpoint
values of a smooth 1-form a(t) dt.  The holonomy is the ordered product of
step exponentials with earlier factors on the left,

    hol(A) = exp(h a_1) exp(h a_2) ... exp(h a_N),   h = 1/N,

which is the convention that makes the gauge action
g.A = Ad_g(A) - (dg) g^{-1} intertwine holonomy with conjugation by g(0).
A constant sample ξ gives exp(ξ) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InputError
from .sun import check_algebra, check_special_unitary, project_algebra


@dataclass(frozen=True)
class PiecewiseConnection:
    """Uniform grid of algebra values on the circle."""

    samples: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.samples) < 1:
            raise InputError("empty-grid", "need at least one sample")
        for s in self.samples:
            check_algebra(s, tol=1e-9)

    @property
    def steps(self) -> int:
        return len(self.samples)

    def to_json(self) -> dict:
        return {
            "steps": self.steps,
            "samples": [
                [[[float(v.real), float(v.imag)] for v in row] for row in s]
                for s in self.samples
            ],
        }


def holonomy(conn: PiecewiseConnection) -> np.ndarray:
    """Ordered product of step exponentials, earliest factor leftmost."""
    n = conn.samples[0].shape[0]
    h = 1.0 / conn.steps
    out = np.eye(n, dtype=complex)
    for a in conn.samples:
        out = out @ scipy.linalg.expm(h * a)
    return out


def gauge_transform(loop: list, conn: PiecewiseConnection) -> PiecewiseConnection:
    """Apply g.A = Ad_g(A) - (dg) g^{-1} on matching grids.

    The derivative term uses central differences of the loop samples with
    cyclic indexing, so the loop grid must match the connection grid.
    """
    n_steps = conn.steps
    if len(loop) != n_steps:
        raise InputError(
            "grid-mismatch", f"loop has {len(loop)} samples, connection {n_steps}"
        )
    gs = [check_special_unitary(g, tol=1e-9) for g in loop]
    h = 1.0 / n_steps
    out = []
    for i in range(n_steps):
        g = gs[i]
        ginv = g.conj().T
        dg = (gs[(i + 1) % n_steps] - gs[(i - 1) % n_steps]) / (2.0 * h)
        # The discretized derivative term sits O(h^2) off the algebra;
        # projecting it back removes pure discretization noise.
        out.append(g @ conn.samples[i] @ ginv - project_algebra(dg @ ginv))
    return PiecewiseConnection(samples=tuple(out))


def constant_connection(xi: np.ndarray, steps: int) -> PiecewiseConnection:
    check_algebra(xi)
    return PiecewiseConnection(samples=tuple(np.array(xi) for _ in range(steps)))


def midpoint_grid(steps: int) -> np.ndarray:
    """Midpoints (i - 1/2)/N of the N uniform subintervals of [0, 1]."""
    return (np.arange(steps) + 0.5) / steps


def sample_smooth_connection(fn, steps: int) -> PiecewiseConnection:
    """Sample a smooth algebra-valued function at the midpoint grid."""
    return PiecewiseConnection(
        samples=tuple(fn(t) for t in midpoint_grid(steps))
    )


def gauge_equivariance_residual(conn_fn, loop_fn, steps: int) -> float:
    """|hol(g.A) - g(0) hol(A) g(0)^-1| for midpoint-sampled smooth data."""
    conn = sample_smooth_connection(conn_fn, steps)
    loop = [loop_fn(t) for t in midpoint_grid(steps)]
    lhs = holonomy(gauge_transform(loop, conn))
    g0 = loop_fn(0.0)
    rhs = g0 @ holonomy(conn) @ g0.conj().T
    return float(np.max(np.abs(lhs - rhs)))


def convergence_order(residuals: dict[int, float]) -> float:
    """Least-squares slope of log residual against log grid size, negated."""
    ns = np.array(sorted(residuals))
    rs = np.array([residuals[n] for n in ns])
    if np.any(rs <= 0):
        raise InputError("degenerate-fit", "residuals must be positive for the fit")
    slope = np.polyfit(np.log(ns), np.log(rs), 1)[0]
    return -float(slope)
