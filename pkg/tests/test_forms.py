import itertools

import numpy as np
import pytest

import fourcurv as fc
from fourcurv.forms import PAIRS


def _levi_civita():
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4)
                         if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


def test_star_matrix_matches_levi_civita():
    # independent oracle: star(e_i^e_j) = sum_{k<l} eps_{ijkl} e_k^e_l
    eps = _levi_civita()
    for a, (i, j) in enumerate(PAIRS):
        for b, (k, l) in enumerate(PAIRS):
            assert fc.STAR_MATRIX[b, a] == eps[i, j, k, l]


def test_star_examples():
    e12 = fc.Form2([1, 0, 0, 0, 0, 0])
    assert np.array_equal(fc.hodge_star(e12).coeffs, [0, 0, 0, 0, 0, 1])
    e13 = fc.Form2([0, 1, 0, 0, 0, 0])
    assert np.array_equal(fc.hodge_star(e13).coeffs, [0, 0, 0, 0, -1, 0])


def test_star_involution_and_isometry(rng):
    coeffs = rng.normal(size=(10_000, 6))
    starred = coeffs @ fc.STAR_MATRIX.T
    assert np.allclose(starred @ fc.STAR_MATRIX.T, coeffs, atol=0)
    assert np.allclose(np.linalg.norm(starred, axis=1),
                       np.linalg.norm(coeffs, axis=1), atol=1e-12)


def test_block_basis_orthogonal():
    assert np.allclose(fc.BLOCK_BASIS.T @ fc.BLOCK_BASIS, np.eye(6),
                       atol=1e-15)
    # star is +1 on the SD columns, -1 on the ASD columns
    assert np.allclose(fc.STAR_MATRIX @ fc.SD_BASIS, fc.SD_BASIS, atol=0)
    assert np.allclose(fc.STAR_MATRIX @ fc.ASD_BASIS, -fc.ASD_BASIS, atol=0)


def test_split_reassembles(rng):
    for _ in range(200):
        omega = fc.Form2(rng.normal(size=6))
        plus, minus = fc.sd_asd_split(omega)
        assert np.allclose(plus.coeffs + minus.coeffs, omega.coeffs,
                           atol=1e-14)
        assert np.allclose(fc.hodge_star(plus).coeffs, plus.coeffs,
                           atol=1e-14)
        assert np.allclose(fc.hodge_star(minus).coeffs, -minus.coeffs,
                           atol=1e-14)


def test_sd_asd_coordinate_roundtrip(rng):
    h = rng.normal(size=3)
    assert np.allclose(fc.sd_coords(fc.sd_form(h)), h, atol=1e-14)
    k = rng.normal(size=3)
    assert np.allclose(fc.asd_coords(fc.asd_form(k)), k, atol=1e-14)


def test_wedge_antisymmetry_and_plucker(rng):
    for _ in range(1000):
        x, y = rng.normal(size=(2, 4))
        w = fc.wedge(x, y)
        assert np.allclose(w.coeffs, -fc.wedge(y, x).coeffs, atol=0)
        # decomposable forms are null for the wedge pairing
        assert abs(w.coeffs @ fc.hodge_star(w).coeffs) < 1e-12
        plus, minus = fc.sd_asd_split(w)
        assert abs(plus.norm - minus.norm) < 1e-12


def test_wedge_example():
    w = fc.wedge([1, 0, 0, 0], [0, 1, 0, 0])
    assert np.array_equal(w.coeffs, [1, 0, 0, 0, 0, 0])
    m = fc.form_matrix(w)
    assert m[0, 1] == 1 and m[1, 0] == -1
    assert np.allclose(m + m.T, 0, atol=0)


def test_plane_roundtrip(rng):
    for _ in range(1000):
        h = rng.normal(size=3)
        h /= np.linalg.norm(h)
        k = rng.normal(size=3)
        k /= np.linalg.norm(k)
        p = fc.plane_from_sd_asd(fc.sd_form(h), fc.asd_form(k))
        assert abs(p.form.norm - 1.0) < 1e-12
        assert np.allclose(fc.sd_coords(p.sd_unit), h, atol=1e-12)
        assert np.allclose(fc.asd_coords(p.asd_unit), k, atol=1e-12)
        x, y = fc.plane_vectors(p)
        assert abs(x @ x - 1) < 1e-9 and abs(y @ y - 1) < 1e-9
        assert abs(x @ y) < 1e-9
        assert np.allclose(fc.wedge(x, y).coeffs, p.form.coeffs, atol=1e-9)


def test_plane_from_vectors_matches_wedge(rng):
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    x, y = q[:, 0], q[:, 1]
    p = fc.plane_from_vectors(x, y)
    assert np.allclose(p.form.coeffs, fc.wedge(x, y).coeffs, atol=1e-12)


def test_complement_is_involution(rng):
    h = rng.normal(size=3)
    h /= np.linalg.norm(h)
    k = rng.normal(size=3)
    k /= np.linalg.norm(k)
    p = fc.plane_from_sd_asd(fc.sd_form(h), fc.asd_form(k))
    q = fc.complement(p)
    assert np.allclose(q.sd_unit.coeffs, p.sd_unit.coeffs, atol=0)
    assert np.allclose(q.asd_unit.coeffs, -p.asd_unit.coeffs, atol=0)
    back = fc.complement(q)
    assert np.allclose(back.form.coeffs, p.form.coeffs, atol=1e-14)


def test_plane_input_validation():
    h = np.array([1.0, 0.0, 0.0])
    with pytest.raises(fc.NonUnitInput):
        fc.plane_from_sd_asd(fc.sd_form(2 * h), fc.asd_form(h))
    with pytest.raises(fc.WrongDuality):
        fc.plane_from_sd_asd(fc.asd_form(h), fc.asd_form(h))
    with pytest.raises(fc.WrongDuality):
        fc.plane_from_sd_asd(fc.sd_form(h), fc.sd_form(h))
    with pytest.raises(fc.NonOrthonormalInput):
        fc.plane_from_vectors([1, 0, 0, 0], [1, 1, 0, 0])
    with pytest.raises(fc.NonOrthonormalInput):
        fc.plane_from_vectors([2, 0, 0, 0], [0, 1, 0, 0])


def test_form2_shape_validation():
    with pytest.raises(ValueError):
        fc.Form2([1.0, 2.0])


def test_frame_validation():
    with pytest.raises(fc.NonOrthonormalInput):
        fc.Frame4(np.eye(4) * 2)
    flipped = np.eye(4)
    flipped[0, 0] = -1
    with pytest.raises(fc.NonOrthonormalInput):
        fc.Frame4(flipped)
    fc.Frame4(np.eye(4))  # identity is fine


def test_random_frame_properties():
    rng = np.random.default_rng(7)
    f = fc.random_frame(rng)
    assert np.allclose(f.columns.T @ f.columns, np.eye(4), atol=1e-12)
    assert np.linalg.det(f.columns) > 0
    again = fc.random_frame(np.random.default_rng(7))
    assert np.array_equal(f.columns, again.columns)
