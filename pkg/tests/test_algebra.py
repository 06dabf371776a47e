import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from spinor_em.algebra import (
    LEVI_CIVITA,
    algebra_report,
    check_lorentz,
    generator_matrix,
    helicity_operator,
    isospin_generators,
    isospin_matrices,
    lambda_inverses,
    lambda_matrices,
    lorentz_boost,
    lorentz_rotation,
    rotation_matrix3,
    rotation_rep,
    spin_matrices,
    spinor_rep,
)
from spinor_em.errors import InvalidLorentz, ZeroDirection

angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)
vec3 = st.lists(st.floats(-3, 3, allow_nan=False), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 1e-3)


def unit(v):
    v = np.asarray(v, float)
    return v / np.linalg.norm(v)


def test_lambda_frozen_entries():
    lam = lambda_matrices()
    # Lambda_1 applied to (a, b, c, d) gives (-d, -c, b, a)
    assert np.array_equal(lam[0] @ np.array([1, 2, 3, 4]), [-4, -3, 2, 1])
    assert np.array_equal(lam[1] @ np.array([1, 2, 3, 4]), [3, -4, -1, 2])
    assert np.array_equal(lam[2] @ np.array([1, 2, 3, 4]), [-2, 1, -4, 3])
    assert np.array_equal(lam[3], -np.eye(4))


def test_lambda_vector_part_is_curl_minus_grad():
    # sum_j Lambda_j k_j acting on (v, s) is (k x v - k s, k.v) for plane waves
    rng = np.random.default_rng(0)
    k, v, s = rng.normal(size=3), rng.normal(size=3), rng.normal()
    out = generator_matrix(k) @ np.concatenate([v, [s]])
    assert np.allclose(out[:3], np.cross(k, v) - k * s, atol=1e-14)
    assert np.isclose(out[3], k @ v, atol=1e-14)


def test_quaternion_relations():
    lam = lambda_matrices()
    assert np.array_equal(lam[0] @ lam[1], lam[2])
    assert np.array_equal(lam[1] @ lam[2], lam[0])
    assert np.array_equal(lam[2] @ lam[0], lam[1])
    for m in lam[:3]:
        assert np.array_equal(m @ m, -np.eye(4))


def test_inverses():
    for m, inv in zip(lambda_matrices(), lambda_inverses()):
        assert np.allclose(m @ inv, np.eye(4), atol=1e-15)
    assert np.array_equal(lambda_inverses()[:3], -lambda_matrices()[:3])


def test_constants_are_read_only_copies():
    lam = lambda_matrices()
    lam[0, 0, 0] = 99
    assert lambda_matrices()[0, 0, 0] == 0


def test_spin_casimir_eigenvalues():
    s = spin_matrices()
    cas = np.einsum("iab,ibc->ac", s, s)
    assert np.allclose(np.sort(np.linalg.eigvalsh(cas)), [0, 2, 2, 2], atol=1e-15)


def test_spin_commutators():
    s = spin_matrices()
    for i in range(3):
        for j in range(3):
            comm = s[i] @ s[j] - s[j] @ s[i]
            assert np.allclose(comm, 1j * np.einsum("k,kab->ab", LEVI_CIVITA[i, j], s), atol=1e-15)


def test_isospin_su2_and_commutes_with_lambda():
    d = isospin_matrices()
    gen = isospin_generators()
    assert np.allclose(gen, 0.5j * d)
    assert np.array_equal(d[0] @ d[1], d[2])
    for x in lambda_matrices():
        for y in d:
            assert np.array_equal(x @ y, y @ x)


def test_algebra_report_all_below_tolerance():
    report = algebra_report()
    assert set(report) >= {"lambda-unitary", "spin-commutator", "spin-casimir", "isospin-su2"}
    assert max(report.values()) < 1e-14


@given(vec3)
def test_helicity_spectrum(v):
    h = helicity_operator(unit(v))
    assert np.allclose(np.sort(np.linalg.eigvalsh(h)), [-1, 0, 0, 1], atol=1e-12)


@given(vec3)
def test_generator_squares_to_minus_k2(v):
    k = np.asarray(v)
    kmat = generator_matrix(k)
    assert np.allclose(kmat @ kmat, -(k @ k) * np.eye(4), atol=1e-12)
    assert np.allclose(kmat, -kmat.T)


@given(vec3, angles, angles)
def test_rotation_rep_group_law(v, a, b):
    n = unit(v)
    r = rotation_rep(n, a) @ rotation_rep(n, b)
    assert np.allclose(r, rotation_rep(n, a + b), atol=1e-12)
    assert np.allclose(r.conj().T @ r, np.eye(4), atol=1e-12)


@given(vec3, angles)
def test_rotation_rep_acts_as_rotation_on_vectors(v, a):
    n = unit(v)
    rep = rotation_rep(n, a)
    assert np.allclose(rep[:3, :3], rotation_matrix3(n, a), atol=1e-12)
    assert np.isclose(rep[3, 3], 1.0)


def test_rotation_rep_matches_expm():
    n = unit([1, 2, 2])
    s = spin_matrices()
    assert np.allclose(rotation_rep(n, 0.4), expm(-0.4j * np.einsum("i,iab->ab", n, s)))


def test_boost_matrix_entries():
    a = lorentz_boost([0, 0, 1], 0.5)
    assert np.isclose(a[2, 2], np.cosh(0.5))
    assert np.isclose(a[2, 3], 1j * np.sinh(0.5))
    assert np.isclose(a[3, 2], -1j * np.sinh(0.5))
    assert np.isclose(a[3, 3], np.cosh(0.5))
    check_lorentz(a)


def test_boost_zero_rapidity_is_identity():
    assert np.allclose(lorentz_boost([1, 0, 0], 0.0), np.eye(4))


@given(vec3, st.floats(-2, 2))
def test_boost_is_lorentz(v, eta):
    check_lorentz(lorentz_boost(unit(v), eta))


def test_check_lorentz_rejects():
    with pytest.raises(InvalidLorentz):
        check_lorentz(2 * np.eye(4))
    with pytest.raises(InvalidLorentz):
        check_lorentz(np.eye(3))


def test_zero_direction():
    with pytest.raises(ZeroDirection):
        helicity_operator([0, 0, 0])
    with pytest.raises(ZeroDirection):
        lorentz_boost([0, 0, 2], 0.1)


@given(vec3, angles)
def test_literal_rep_of_rotation_equals_rotation_rep(v, a):
    n = unit(v)
    t = spinor_rep(lorentz_rotation(n, a))
    assert np.allclose(t[:3, :3], rotation_rep(n, a)[:3, :3], atol=1e-12)
