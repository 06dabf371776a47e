import numpy as np
import pytest

from spinor_em import grid as g
from spinor_em.grid import GridSpec


def test_grid_validation():
    for bad in (3, 5, 2, 0):
        with pytest.raises(ValueError):
            GridSpec(bad)
    with pytest.raises(ValueError):
        GridSpec(8, -1.0)


def test_basic_properties():
    grid = GridSpec(8, 4.0)
    assert grid.spacing == 0.5
    assert grid.shape == (8, 8, 8)
    assert grid.volume == 64.0
    x, y, z = grid.coords()
    assert x.shape == (1, 1, 8) and z.shape == (8, 1, 1)
    assert grid.position_vectors().shape == (3, 8, 8, 8)


def test_mode_indices_nyquist_positive():
    mx, _, _ = GridSpec(8).mode_indices
    assert list(mx.ravel()) == [0, 1, 2, 3, 4, -3, -2, -1]
    assert GridSpec(8).fft_slot((4, -1, 0)) == (0, 7, 4)
    with pytest.raises(ValueError):
        GridSpec(8).fft_slot((-4, 0, 0))


def test_spectral_derivative_exact():
    grid = GridSpec(16)
    x, y, z = grid.coords()
    f = np.sin(2 * x + 3 * z) * np.ones(grid.shape)
    assert np.allclose(g.derivative(f, 0, grid), 2 * np.cos(2 * x + 3 * z), atol=1e-12)
    assert np.allclose(g.derivative(f, 2, grid), 3 * np.cos(2 * x + 3 * z), atol=1e-12)
    assert np.allclose(g.derivative(f, 1, grid), 0, atol=1e-12)


def test_centered_derivative_second_order():
    errs = []
    for n in (16, 32, 64):
        grid = GridSpec(n)
        _, y, _ = grid.coords()
        f = np.sin(y) * np.ones(grid.shape)
        errs.append(np.max(np.abs(g.derivative(f, 1, grid, "centered2") - np.cos(y))))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.allclose(orders, 2.0, atol=0.05)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        g.derivative(np.zeros((4, 4, 4)), 0, GridSpec(4), "upwind")


def test_vector_identities_spectral(rng):
    grid = GridSpec(8)
    f = rng.normal(size=grid.shape)
    v = rng.normal(size=(3, *grid.shape))
    assert np.allclose(g.curl(g.gradient(f, grid), grid), 0, atol=1e-11)
    assert np.allclose(g.divergence(g.curl(v, grid), grid), 0, atol=1e-11)


def test_integrate_constant():
    grid = GridSpec(8, 3.0)
    assert np.isclose(g.integrate(np.ones(grid.shape), grid), 27.0)
