"""Numerical SU(n) primitives.

Matrix conventions: group points are n x n special unitary ndarrays, algebra
vectors are traceless anti-Hermitian ndarrays.  The inner product is fixed as

    basic_inner(X, Y) = -tr(XY) / (4 pi^2),

which restricts to the exact basic inner product on the torus under the
correspondence lam -> 2*pi*i*diag(lam); with that normalization the
canonical 3-form integrates to 1 over SU(2).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np
import scipy.linalg

from .errors import InputError

UNITARY_TOL = 1e-12
ALGEBRA_TOL = 1e-12
SNAP_TOL = 1e-9

_SIGNED_PERMS = [
    (p, sign)
    for p, sign in zip(
        permutations(range(3)), (1, -1, -1, 1, 1, -1)
    )
]


def check_special_unitary(a: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    """Validate A*A = I and det A = 1; returns A unchanged."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise InputError("not-square", f"expected square matrix, got {a.shape}")
    defect = np.max(np.abs(a.conj().T @ a - np.eye(n)))
    det_defect = abs(np.linalg.det(a) - 1.0)
    if defect >= tol or det_defect >= tol:
        raise InputError(
            "not-special-unitary",
            f"unitarity defect {defect:.2e}, det defect {det_defect:.2e}",
        )
    return a


def check_algebra(x: np.ndarray, tol: float = ALGEBRA_TOL) -> np.ndarray:
    """Validate X* + X = 0 and tr X = 0; returns X unchanged."""
    x = np.asarray(x, dtype=complex)
    herm = np.max(np.abs(x + x.conj().T))
    tr = abs(np.trace(x))
    if herm >= tol or tr >= tol:
        raise InputError(
            "not-algebra", f"anti-Hermitian defect {herm:.2e}, trace {tr:.2e}"
        )
    return x


def project_algebra(x: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto traceless anti-Hermitian matrices."""
    x = np.asarray(x, dtype=complex)
    y = 0.5 * (x - x.conj().T)
    n = x.shape[0]
    return y - (np.trace(y) / n) * np.eye(n)


def basic_inner(x: np.ndarray, y: np.ndarray) -> float:
    """Invariant inner product -tr(XY)/(4 pi^2) on the algebra."""
    return float(np.real(-np.trace(x @ y))) / (4.0 * np.pi**2)


def random_algebra(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Gaussian traceless anti-Hermitian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * project_algebra(z)


def random_special_unitary(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Group point exp(X) for a Gaussian algebra draw X."""
    return scipy.linalg.expm(random_algebra(n, rng, scale))


def torus_algebra(lam) -> np.ndarray:
    """Torus correspondence lam -> 2*pi*i*diag(lam) (sum of entries zero)."""
    lam = np.asarray([float(v) for v in lam], dtype=float)
    if abs(lam.sum()) > 1e-12:
        raise InputError("nonzero-sum", "torus coordinates must sum to zero")
    return 2j * np.pi * np.diag(lam)


def torus_point(lam) -> np.ndarray:
    """exp of the torus correspondence: diag(exp(2 pi i lam_j))."""
    lam = np.asarray([float(v) for v in lam], dtype=float)
    return np.diag(np.exp(2j * np.pi * lam))


def _circular_clusters(phases: np.ndarray, tol: float) -> list[list[int]]:
    """Group phase values in [0,1) that sit within tol on the circle."""
    order = np.argsort(phases)
    n = len(phases)
    breaks = []
    for pos in range(n):
        cur = phases[order[pos]]
        nxt = phases[order[(pos + 1) % n]] + (1.0 if pos == n - 1 else 0.0)
        if nxt - cur > tol:
            breaks.append(pos)
    if not breaks:
        return [list(order)]
    clusters = []
    start = (breaks[-1] + 1) % n
    for b in breaks:
        cluster = []
        pos = start
        while True:
            cluster.append(int(order[pos]))
            if pos == b:
                break
            pos = (pos + 1) % n
        clusters.append(cluster)
        start = (b + 1) % n
    return clusters


def alcove_coordinates(a: np.ndarray, snap_tol: float = SNAP_TOL) -> np.ndarray:
    """Sorted eigenvalue phases of a special unitary matrix, normalized to
    the fundamental alcove: descending, summing to zero, top-bottom gap at
    most one.  Phases within snap_tol of an alcove wall are snapped onto it.
    """
    a = check_special_unitary(a)
    n = a.shape[0]
    try:
        eigvals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise InputError("eigensolver-failure", str(exc)) from exc
    phases = (np.angle(eigvals) / (2.0 * np.pi)) % 1.0

    # Snap: replace each circular cluster of nearly equal phases by its
    # circular mean so wall membership is exact downstream.
    snapped = phases.copy()
    for cluster in _circular_clusters(phases, snap_tol):
        zs = np.exp(2j * np.pi * phases[cluster])
        mean = (np.angle(zs.sum()) / (2.0 * np.pi)) % 1.0
        snapped[cluster] = mean

    q = np.sort(snapped)[::-1]
    m = int(round(q.sum()))
    lam = np.concatenate([q[m:], q[:m] - 1.0])
    lam -= lam.sum() / n
    if not (np.all(np.diff(lam) <= 1e-12) and lam[0] - lam[-1] <= 1.0 + 1e-9):
        raise InputError("alcove-normalization", f"bad representative {lam}")
    return lam


def maurer_cartan(g: np.ndarray, v: np.ndarray, side: str, tol: float = 1e-8) -> np.ndarray:
    """Left or right translation of a tangent vector at g back to the algebra."""
    g = np.asarray(g, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if side not in ("left", "right"):
        raise InputError("invalid-side", f"side must be 'left' or 'right', got {side!r}")
    ginv = g.conj().T
    x = ginv @ v
    defect = np.max(np.abs(x + x.conj().T))
    if defect >= tol or abs(np.trace(x)) >= tol:
        raise InputError("not-tangent", f"vector is not tangent at g (defect {defect:.2e})")
    return x if side == "left" else v @ ginv


def canonical_three_form(
    g: np.ndarray,
    v1: np.ndarray,
    v2: np.ndarray,
    v3: np.ndarray,
    tol: float = 1e-8,
) -> float:
    """The bi-invariant 3-form (1/12) B(theta, [theta, theta]) evaluated on
    three tangent vectors at g."""
    xs = [maurer_cartan(g, v, "left", tol=tol) for v in (v1, v2, v3)]
    total = 0.0
    for perm, sign in _SIGNED_PERMS:
        x, y, z = (xs[p] for p in perm)
        total += sign * basic_inner(x, y @ z - z @ y)
    return total / 12.0


def _three_form_pulled(g: np.ndarray, xs: list[np.ndarray]) -> float:
    """Same antisymmetrized sum on already left-translated algebra values."""
    total = 0.0
    for perm, sign in _SIGNED_PERMS:
        x, y, z = (xs[p] for p in perm)
        total += sign * basic_inner(x, y @ z - z @ y)
    return total / 12.0


@lru_cache(maxsize=None)
def algebra_basis(n: int) -> tuple[np.ndarray, ...]:
    """Orthonormal real basis of su(n) for Re tr(X* Y)."""
    out = []
    s = 1.0 / np.sqrt(2.0)
    for j in range(n):
        for k in range(j + 1, n):
            m = np.zeros((n, n), dtype=complex)
            m[j, k], m[k, j] = s, -s
            out.append(m)
            m = np.zeros((n, n), dtype=complex)
            m[j, k] = m[k, j] = 1j * s
            out.append(m)
    for j in range(n - 1):
        d = np.zeros(n)
        d[: j + 1] = 1.0
        d[j + 1] = -(j + 1.0)
        d /= np.linalg.norm(d)
        out.append(1j * np.diag(d))
    return tuple(out)


def algebra_coords(x: np.ndarray) -> np.ndarray:
    """Coordinates of an algebra element in the orthonormal real basis."""
    basis = algebra_basis(x.shape[0])
    return np.array([float(np.real(np.trace(b.conj().T @ x))) for b in basis])


def algebra_from_coords(n: int, coords: np.ndarray) -> np.ndarray:
    basis = algebra_basis(n)
    out = np.zeros((n, n), dtype=complex)
    for c, b in zip(coords, basis):
        out += c * b
    return out


def realified_operator(n: int, fn) -> np.ndarray:
    """Matrix of a real-linear operator on su(n) in the orthonormal basis."""
    basis = algebra_basis(n)
    cols = [algebra_coords(fn(b)) for b in basis]
    return np.stack(cols, axis=1)


def eta_integral_su2(samples: int = 2000, seed: int = 0) -> float:
    """Monte Carlo integral of the canonical 3-form over SU(2).

    Points are Haar-uniform via unit quaternions; at each point an oriented
    frame orthonormal for the round embedding metric Re tr(V W*)/2 is drawn,
    oriented against the left-invariant reference frame, and the 3-form value
    is averaged and scaled by vol(S^3) = 2 pi^2.
    """
    rng = np.random.default_rng(seed)
    sigma = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )

    def quat_matrix(w, x, y, z):
        return w * np.eye(2, dtype=complex) + 1j * (x * sigma[0] + y * sigma[1] + z * sigma[2])

    total = 0.0
    for _ in range(samples):
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        g = quat_matrix(*q)
        # Left-invariant round-orthonormal reference frame, ordered so the
        # 3-form is positive on it (that orientation makes the integral +1).
        ref = [g @ (1j * sigma[0]), g @ (1j * sigma[2]), g @ (1j * sigma[1])]

        # Random round-orthonormal tangent frame at g.
        raw = [sum(rng.normal() * r for r in ref) for _ in range(3)]
        frame = []
        for v in raw:
            for u in frame:
                v = v - 0.5 * np.real(np.trace(v @ u.conj().T)) * u
            norm = np.sqrt(0.5 * np.real(np.trace(v @ v.conj().T)))
            frame.append(v / norm)

        change = np.array(
            [
                [0.5 * np.real(np.trace(f @ r.conj().T)) for r in ref]
                for f in frame
            ]
        )
        orient = np.sign(np.linalg.det(change))
        total += orient * canonical_three_form(g, *frame, tol=1e-6)
    return float(total / samples * 2.0 * np.pi**2)
