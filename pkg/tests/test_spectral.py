import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinor_em.algebra import generator_matrix, helicity_operator
from spinor_em.errors import ZeroWavevector
from spinor_em.fields import SpinorField
from spinor_em.grid import GridSpec
from spinor_em.spectral import (
    Helicity,
    ModeIndex,
    PlaneWaveSpec,
    dump_modes,
    forward_transform,
    helicity_decompose,
    inverse_transform,
    mode_basis,
    plane_wave,
    polarization_column,
    propagator,
    transverse_project,
    transverse_unit_vectors,
    transversality_per_mode,
)

GRID = GridSpec(8)
modes = st.tuples(st.integers(-3, 4), st.integers(-3, 4), st.integers(-3, 4)).filter(lambda m: m != (0, 0, 0))


def random_field(seed, grid=GRID):
    rng = np.random.default_rng(seed)
    return SpinorField(grid, rng.normal(size=(4, *grid.shape)) + 1j * rng.normal(size=(4, *grid.shape)))


def test_columns_along_z():
    plus, minus = transverse_unit_vectors(np.array([0.0, 0.0, 2.0]))
    assert np.allclose(plus, np.array([1, 1j, 0, 0]) / np.sqrt(2))
    assert np.allclose(minus, np.array([1, -1j, 0, 0]) / np.sqrt(2))


def test_antipode_uses_x_rotation():
    plus, _ = transverse_unit_vectors(np.array([0.0, 0.0, -1.0]))
    assert np.allclose(plus, np.array([1, -1j, 0, 0]) / np.sqrt(2))
    h = helicity_operator([0, 0, -1])
    assert np.allclose(h @ plus, plus)


@given(modes)
def test_helicity_eigencolumns(m):
    k = ModeIndex(m).k()
    h = helicity_operator(k / np.linalg.norm(k))
    for hel, val in ((Helicity.PLUS, 1), (Helicity.MINUS, -1), (Helicity.LONGITUDINAL, 0), (Helicity.SCALAR, 0)):
        u = polarization_column(k, hel)
        assert np.isclose(np.linalg.norm(u), 1.0)
        assert np.allclose(h @ u, val * u, atol=1e-12)


def test_zero_wavevector():
    with pytest.raises(ZeroWavevector):
        polarization_column(np.zeros(3), Helicity.PLUS)
    with pytest.raises(ZeroWavevector):
        plane_wave(PlaneWaveSpec((0, 0, 0), 1, Helicity.MINUS), GRID)


def test_helicity_parse():
    assert Helicity.parse(1) is Helicity.PLUS
    assert Helicity.parse("-1") is Helicity.MINUS
    assert Helicity.parse("scalar") is Helicity.SCALAR
    with pytest.raises(ValueError):
        Helicity.parse("2")


@given(st.integers(0, 1000))
def test_transform_round_trip_and_parseval(seed):
    s = random_field(seed)
    m = forward_transform(s)
    assert np.allclose(inverse_transform(m).phi, s.phi)
    # box normalization: sum |phi_hat|^2 = integral |phi|^2
    assert np.isclose(m.norm2(), np.sum(np.abs(s.phi) ** 2) * GRID.cell_volume)


def test_plane_wave_mode_amplitude():
    spec = PlaneWaveSpec((1, 0, -2), -1, Helicity.PLUS, 2.0)
    m = forward_transform(plane_wave(spec, GRID))
    col = m.at((1, 0, -2))
    expected = 2.0 * np.sqrt(GRID.volume) * polarization_column(ModeIndex((1, 0, -2)).k(), Helicity.PLUS)
    assert np.allclose(col, expected)
    assert np.isclose(m.norm2(), 4.0 * GRID.volume)


def test_plane_wave_pairing_enforced():
    with pytest.raises(ValueError):
        plane_wave(PlaneWaveSpec((1, 0, 0), 1, Helicity.PLUS), GRID)
    with pytest.raises(ValueError):
        PlaneWaveSpec((1, 0, 0), 0, Helicity.PLUS)


def test_plane_wave_off_grid_mode():
    with pytest.raises(ValueError):
        plane_wave(PlaneWaveSpec((5, 0, 0), 1, Helicity.MINUS), GRID)


@given(modes, st.floats(0, 10))
def test_propagator_orthogonal(m, t):
    k = ModeIndex(m).k()
    p = propagator(k, t)
    assert np.allclose(p.T @ p, np.eye(4), atol=1e-12)
    assert np.allclose(p.imag, 0)


def test_propagator_mixes_zero_helicity():
    k = np.array([0.0, 0.0, 1.0])
    out = propagator(k, np.pi / 2) @ polarization_column(k, Helicity.SCALAR)
    assert np.allclose(out, [0, 0, 1, 0])


@given(st.integers(0, 1000))
def test_decomposition_reconstructs_and_projects(seed):
    s = random_field(seed)
    parts = helicity_decompose(s)
    assert np.allclose(parts.total().phi, s.phi)
    t = transverse_project(s)
    assert np.allclose(transverse_project(t).phi, t.phi)
    assert transversality_per_mode(t) < 1e-10


def test_decomposition_buckets_of_plane_wave():
    s = plane_wave(PlaneWaveSpec((1, 2, 0), 1, Helicity.MINUS), GRID)
    n = helicity_decompose(s).norms()
    assert n["plus"] < 1e-12 and n["longitudinal"] < 1e-12 and n["scalar"] < 1e-12
    assert np.isclose(n["minus"], s.norm())


def test_dump_modes_records():
    s = plane_wave(PlaneWaveSpec((0, 0, 1), -1, Helicity.PLUS, 1.5 - 0.5j), GRID)
    (rec,) = dump_modes(s)
    assert rec["m"] == [0, 0, 1] and rec["alpha"] == -1 and rec["helicity"] == "+1"
    assert rec["amplitude_re"] == pytest.approx(1.5) and rec["amplitude_im"] == pytest.approx(-0.5)


@given(modes)
def test_mode_basis_relations(m):
    mb = mode_basis(ModeIndex(m))
    kn = np.linalg.norm(mb.k)
    # v = (K + i|k|) eps / (sqrt2 |k|)
    kmat = generator_matrix(mb.k)
    assert np.allclose(mb.v, (kmat + 1j * kn * np.eye(4)) @ mb.eps / (np.sqrt(2) * kn), atol=1e-12)
    assert np.allclose(mb.eps[:, :3].conj().T @ mb.eps[:, :3], np.eye(3), atol=1e-12)
