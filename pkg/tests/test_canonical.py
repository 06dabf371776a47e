import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinor_em.audits import isospin_history, random_potential_data, random_transverse_em
from spinor_em.canonical import (
    MomentumField,
    conjugate_momentum,
    divergence_residual,
    hamiltonian_density,
    isospin_currents,
    lagrangian_density,
)
from spinor_em.dynamics import coulomb_potential, potential_time_derivatives
from spinor_em.errors import NonPositiveMu0, ShapeMismatch
from spinor_em.fields import PotentialField, energy_density, spinor_from_eb, spinor_from_potential
from spinor_em.grid import GridSpec

GRID = GridSpec(8)


@given(st.integers(0, 1000), st.floats(0.2, 5.0))
def test_lagrangian_real_part_is_field_invariant(seed, mu0):
    f = random_transverse_em(GRID, seed=seed)
    s = spinor_from_eb(f, mu0)
    expected = (np.sum(f.e ** 2, axis=0) - np.sum(f.b ** 2, axis=0)) / (2 * mu0)
    assert np.allclose(lagrangian_density(s).real, expected, atol=1e-12)


def test_conjugated_lagrangian_is_minus_energy_density():
    s = spinor_from_eb(random_transverse_em(GRID, seed=1))
    assert np.allclose(lagrangian_density(s, conjugated=True).real, -energy_density(s), atol=1e-12)


def test_momentum_round_trip():
    s = spinor_from_eb(random_transverse_em(GRID, seed=2), 2.0)
    pi = conjugate_momentum(s, 2.0)
    assert np.allclose(pi.to_spinor(2.0).phi, s.phi)
    with pytest.raises(ShapeMismatch):
        MomentumField(GRID, np.zeros((4, 4, 4, 4)))
    with pytest.raises(NonPositiveMu0):
        conjugate_momentum(s, 0.0)


@pytest.mark.parametrize("mu0", [0.5, 1.0, 3.0])
def test_hamiltonian_matches_legendre_form(mu0):
    p, da, dv = random_potential_data(GRID, seed=3)
    s = spinor_from_potential(p, da, dv, mu0)
    h, hl = hamiltonian_density(s, p, da, dv, mu0)
    assert np.max(np.abs(h - hl)) / np.max(np.abs(hl)) < 1e-10


def test_hamiltonian_is_energy_for_transverse_coulomb_data():
    s = spinor_from_eb(random_transverse_em(GRID, seed=4))
    p = coulomb_potential(s)
    da, dv = potential_time_derivatives(s, p)
    h, _ = hamiltonian_density(s, p, da, dv)
    # u = (E^2 + B^2) / (2 mu0) and H = -(E^2 - B^2)/(2 mu0) + E^2/mu0 agree pointwise
    assert np.allclose(h.real, energy_density(s), atol=1e-12)


def test_hamiltonian_shape_errors():
    p, da, dv = random_potential_data(GRID, seed=5)
    s = spinor_from_potential(p, da, dv)
    with pytest.raises(ShapeMismatch):
        hamiltonian_density(s, p, da[:2], dv)
    with pytest.raises(ShapeMismatch):
        hamiltonian_density(s, PotentialField.zeros(GridSpec(4)), da, dv)


def test_isospin_charges_conserved_and_imaginary():
    history = isospin_history(n=8, periods=2, samples=10)
    q = np.array([c for _, c in history])
    assert np.max(np.abs(q - q[0])) < 1e-9
    assert np.max(np.abs(q.real)) < 1e-10


def test_isospin_charges_zero_without_potential():
    s = spinor_from_eb(random_transverse_em(GRID, seed=6))
    cur = isospin_currents(conjugate_momentum(s), PotentialField.zeros(GRID))
    assert not np.any(cur.charges)


def test_divergence_residual_needs_three_snapshots():
    s = spinor_from_eb(random_transverse_em(GRID, seed=7))
    c = isospin_currents(conjugate_momentum(s), coulomb_potential(s))
    with pytest.raises(ShapeMismatch):
        divergence_residual([c, c], 0.1)
    assert divergence_residual([c, c, c], 0.1) == pytest.approx(
        divergence_residual([c, c, c], 0.2))
