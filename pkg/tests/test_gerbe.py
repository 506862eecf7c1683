from fractions import Fraction as Q

import numpy as np
import pytest

from quasiham.alcove import open_face_set
from quasiham.errors import InputError
from quasiham.gerbe import (
    cocycle_check,
    cocycle_coefficient,
    cover_index_set,
    eigenline_weight,
    spectral_det_line,
    subspace_projector,
    vertex_weight_consistency,
    wedge_coordinates,
    wedge_product,
)
from quasiham.roots import LieType, a_series_from_euclidean, build_root_system
from quasiham.sun import alcove_coordinates, random_special_unitary, torus_point


def regular_sample(n, rng, margin=1e-6):
    while True:
        a = random_special_unitary(n, rng)
        lam = alcove_coordinates(a)
        gaps = np.append(lam[:-1] - lam[1:], lam[-1] - lam[0] + 1.0)
        if np.min(gaps) > margin:
            return a


def test_cover_examples_su2():
    assert cover_index_set(np.diag([1j, -1j])) == frozenset({1, 2})
    assert cover_index_set(np.eye(2, dtype=complex)) == frozenset({2})
    assert cover_index_set(-np.eye(2, dtype=complex)) == frozenset({1})


def test_eigenline_weights():
    assert eigenline_weight(3, 2) == (Q(-1, 3), Q(2, 3), Q(-1, 3))
    for n in (2, 3, 4, 5):
        total = tuple(sum(eigenline_weight(n, i)[k] for i in range(1, n + 1)) for k in range(n))
        assert all(t == 0 for t in total)
    with pytest.raises(InputError):
        eigenline_weight(3, 4)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_vertex_weight_consistency(n):
    assert vertex_weight_consistency(n)


def test_transition_weights_are_eigenline_sums():
    for n in (2, 3, 4):
        rs = build_root_system(LieType("A", n - 1))
        from quasiham.alcove import transition_weight
        from quasiham.roots import a_series_embedding

        for i in range(n):
            for j in range(i + 1, n):
                expected = tuple(
                    sum(eigenline_weight(n, k)[m] for k in range(i + 1, j + 1))
                    for m in range(n)
                )
                assert a_series_embedding(rs, transition_weight(rs, i, j)) == expected


def test_diagonal_det_line():
    a = torus_point([0.3, 0.1, -0.4])
    line = spectral_det_line(a, 1, 2)
    assert line.dim == 1
    # eigenposition 2 is the phase-0.1 coordinate axis: e_2 up to phase
    mods = np.abs(line.representative)
    assert mods == pytest.approx([0.0, 1.0, 0.0], abs=1e-12)
    wide = spectral_det_line(a, 1, 3)
    assert wide.dim == 2


def test_det_line_dim_and_equivariance():
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = regular_sample(3, rng)
        g = random_special_unitary(3, rng)
        for i, j in [(1, 2), (1, 3), (2, 3)]:
            line = spectral_det_line(a, i, j)
            assert line.dim == j - i
            p = subspace_projector(line)
            pg = subspace_projector(spectral_det_line(g @ a @ g.conj().T, i, j))
            assert np.max(np.abs(pg - g @ p @ g.conj().T)) < 1e-9


def test_flag_orthogonal_sums():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a = regular_sample(3, rng)
        p12 = subspace_projector(spectral_det_line(a, 1, 2))
        p23 = subspace_projector(spectral_det_line(a, 2, 3))
        p13 = subspace_projector(spectral_det_line(a, 1, 3))
        assert np.max(np.abs(p12 + p23 - p13)) < 1e-9


def test_cocycle_unimodular():
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = regular_sample(3, rng)
        coeff, ok = cocycle_check(a, 1, 2, 3)
        assert ok and abs(abs(coeff) - 1.0) < 1e-8
    for _ in range(5):
        a = regular_sample(4, rng)
        for triple in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
            coeff, ok = cocycle_check(a, *triple)
            assert ok and abs(abs(coeff) - 1.0) < 1e-8


def test_diagonal_cocycle_is_one():
    a = torus_point([0.3, 0.1, -0.4])
    coeff = cocycle_coefficient(a, 1, 2, 3)
    assert abs(coeff) == pytest.approx(1.0, abs=1e-12)


def test_collapsed_gap_rejected():
    a = torus_point([0.25, 0.25, -0.5])
    with pytest.raises(InputError) as err:
        spectral_det_line(a, 1, 2)
    assert err.value.code == "outside-cover"
    with pytest.raises(InputError):
        cocycle_check(a, 1, 2, 3)
    with pytest.raises(InputError):
        cocycle_check(torus_point([0.2, 0.2, -0.4]), 1, 2, 3)


def test_index_validation():
    a = torus_point([0.3, 0.1, -0.4])
    with pytest.raises(InputError):
        spectral_det_line(a, 2, 2)
    with pytest.raises(InputError):
        cocycle_check(a, 2, 1, 3)


def cover_to_faces(n, cover):
    """Gap index i corresponds to alcove vertex i mod n."""
    return frozenset(i % n for i in cover)


def _rationalized(lam):
    head = [Q(x).limit_denominator(10**12) for x in lam[:-1]]
    return tuple(head) + (-sum(head),)


@pytest.mark.parametrize("n,samples", [(2, 500), (3, 500)])
def test_cover_matches_open_faces(n, samples):
    rs = build_root_system(LieType("A", n - 1))
    rng = np.random.default_rng(4)
    mats = [random_special_unitary(n, rng) for _ in range(samples)]
    # wall points exercise the boundary cases random sampling never hits
    mats.append(np.eye(n, dtype=complex))
    if n == 2:
        mats.append(-np.eye(2, dtype=complex))
        mats.append(torus_point([0.5, -0.5]))
    if n == 3:
        mats.append(torus_point([0.25, 0.25, -0.5]))
        mats.append(torus_point([0.5, -0.25, -0.25]))
        mats.append(torus_point([Q(1, 3), Q(1, 3), Q(-2, 3)]))
    for a in mats:
        lam = alcove_coordinates(a)
        xi = a_series_from_euclidean(rs, _rationalized(lam))
        faces = open_face_set(rs, xi)
        assert cover_to_faces(n, cover_index_set(a)) == faces


def test_wedge_algebra():
    rng = np.random.default_rng(5)
    cols = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
    u = wedge_coordinates(cols[:, :1])
    v = wedge_coordinates(cols[:, 1:])
    both = wedge_product(u, 1, v, 1, 4)
    assert np.allclose(both, wedge_coordinates(cols))
    flipped = wedge_product(v, 1, u, 1, 4)
    assert np.allclose(both, -flipped)


def test_det_line_json():
    a = torus_point([0.3, 0.1, -0.4])
    data = spectral_det_line(a, 1, 2).to_json()
    assert len(data["basis"]) == 1 and len(data["basis"][0]) == 3
    assert len(data["representative"]) == 3
