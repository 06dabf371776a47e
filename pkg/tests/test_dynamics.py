import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinor_em.dynamics import (
    CurrentSeries,
    EvolutionConfig,
    OscillatingDipole,
    StaticCharge,
    check_continuity,
    coulomb_potential,
    evolve,
    evolve_exact,
    evolve_potential_exact,
    kg_residual,
    maxwell_gauss_residual,
    maxwell_reference_step,
    potential_time_derivatives,
    spectral_rhs,
    step_exact,
    step_fd,
)
from spinor_em.errors import CflViolation, ContinuityViolation, ShapeMismatch
from spinor_em.fields import CurrentField, EMField, PotentialField, SpinorField, spinor_from_eb, spinor_from_potential
from spinor_em.grid import GridSpec, integrate
from spinor_em.fields import classical_energy_density
from spinor_em.spectral import Helicity, PlaneWaveSpec, forward_transform, inverse_transform, plane_wave
from spinor_em.audits import random_transverse_em

GRID = GridSpec(8)


def random_spinor(seed, grid=GRID):
    rng = np.random.default_rng(seed)
    return SpinorField(grid, rng.normal(size=(4, *grid.shape)) + 1j * rng.normal(size=(4, *grid.shape)))


def test_step_exact_zero_dt_is_identity():
    m = forward_transform(random_spinor(0))
    assert np.array_equal(step_exact(m, 0.0).amplitudes, m.amplitudes)


def test_plane_wave_returns_after_one_period():
    spec = PlaneWaveSpec((1, 2, 0), 1, Helicity.MINUS)
    s = plane_wave(spec, GRID)
    period = 2 * np.pi / np.sqrt(5)
    assert np.max(np.abs(evolve_exact(s, period).phi - s.phi)) < 1e-12


def test_norm_conserved_over_many_steps():
    m = forward_transform(random_spinor(1))
    n0 = m.norm2()
    for _ in range(1000):
        m = step_exact(m, 0.05)
    assert abs(m.norm2() - n0) / n0 < 1e-12


@given(st.integers(0, 500), st.floats(0.01, 3.0))
def test_exact_evolution_solves_equation(seed, t):
    # d/dt exp(-Kt) phi = -K exp(-Kt) phi, compared through the spectral rhs;
    # the Nyquist planes are dropped since odd spectral derivatives zero them
    m = forward_transform(random_spinor(seed))
    amp = m.amplitudes.copy()
    h = GRID.n // 2
    amp[:, h], amp[:, :, h], amp[:, :, :, h] = 0, 0, 0
    s = inverse_transform(type(m)(GRID, amp))
    later = evolve_exact(s, t)
    d = 1e-4
    dphi = (evolve_exact(s, t + d).phi - evolve_exact(s, t - d).phi) / (2 * d)
    assert np.max(np.abs(dphi - spectral_rhs(later.phi, GRID, 1.0))) < 1e-5 * max(1.0, np.max(np.abs(s.phi)))


def test_step_fd_zero_field():
    s = step_fd(SpinorField.zeros(GRID), None, 0.1)
    assert not np.any(s.phi)


def test_cfl_violation():
    with pytest.raises(CflViolation):
        step_fd(SpinorField.zeros(GRID), None, GRID.spacing)
    with pytest.raises(CflViolation):
        maxwell_reference_step(EMField(GRID, np.zeros((3, 8, 8, 8)), np.zeros((3, 8, 8, 8))), None, 1.0)


def test_fd_plane_wave_converges_to_exact():
    errs = []
    for n in (16, 32):
        grid = GridSpec(n)
        spec = PlaneWaveSpec((1, 0, 1), 1, Helicity.MINUS)
        s = plane_wave(spec, grid)
        dt = 0.25 * grid.spacing
        steps = int(round(1.0 / dt))
        for i in range(steps):
            s = step_fd(s, None, dt, t=i * dt)
        ref = plane_wave(spec, grid, steps * dt)
        errs.append(np.linalg.norm(s.phi - ref.phi) / np.linalg.norm(ref.phi))
    assert 1.8 < np.log2(errs[0] / errs[1]) < 2.2


def test_maxwell_oracle_zero():
    z = np.zeros((3, *GRID.shape))
    f = maxwell_reference_step(EMField(GRID, z, z), None, 0.1)
    assert not np.any(f.e) and not np.any(f.b)


def test_maxwell_standing_wave_energy():
    # RK4 energy error scales as dt^5 per unit time; at cfl 0.02 it is below 1e-10 over 10 periods
    grid = GridSpec(16)
    _, _, z = grid.coords()
    e = np.zeros((3, *grid.shape))
    e[0] = np.cos(z)
    f = EMField(grid, e, np.zeros_like(e))
    cfl = 0.02
    dt = cfl * grid.spacing
    e0 = integrate(classical_energy_density(f), grid)
    for i in range(int(round(20 * np.pi / dt))):
        f = maxwell_reference_step(f, None, dt, 1.0, i * dt, cfl)
    assert abs(integrate(classical_energy_density(f), grid) - e0) / e0 < 1e-10


def test_fd_and_maxwell_agree_on_coarse_grid():
    grid = GridSpec(16)
    f = random_transverse_em(grid, seed=3)
    s = spinor_from_eb(f)
    dt = 0.5 * grid.spacing
    for i in range(20):
        s = step_fd(s, None, dt, t=i * dt)
        f = maxwell_reference_step(f, None, dt, t=i * dt)
    gap = np.linalg.norm(s.phi - spinor_from_eb(f).phi) / np.linalg.norm(s.phi)
    assert gap < 0.05


def test_static_charge_gauss_law_matches_oracle():
    # zero-mean static charge with Gauss-consistent initial E: spinor and Maxwell paths agree
    grid = GridSpec(16)
    x, y, z = grid.coords()
    h = grid.spacing
    pot = np.cos(x) * np.cos(2 * y) * np.ones(grid.shape)
    e = -np.stack([(np.roll(pot, -1, axis=a) - np.roll(pot, 1, axis=a)) / (2 * h) for a in (-1, -2, -3)])
    div_e = sum((np.roll(e[j], -1, axis=-1 - j) - np.roll(e[j], 1, axis=-1 - j)) / (2 * h) for j in range(3))
    rho = div_e
    src = StaticCharge(grid, rho)
    f = EMField(grid, e, np.zeros_like(e))
    s = spinor_from_eb(f)
    dt = 0.5 * h
    for i in range(20):
        s = step_fd(s, src, dt, t=i * dt)
        f = maxwell_reference_step(f, src, dt, t=i * dt)
    assert maxwell_gauss_residual(f, rho) < 1e-12
    assert np.max(np.abs(s.phi - spinor_from_eb(f).phi)) < 1e-12
    assert np.max(np.abs(s.xi)) < 1e-12


def test_continuity_validation():
    grid = GridSpec(8)
    dip = OscillatingDipole(grid, amplitude=0.3, omega=2.0)
    assert check_continuity(dip, np.linspace(0, 3, 7)) < 1e-12
    rng = np.random.default_rng(0)
    bad = CurrentField(grid, rng.normal(size=(3, *grid.shape)), np.zeros(grid.shape))
    series = CurrentSeries([0.0, 1.0], [bad, bad])
    with pytest.raises(ContinuityViolation):
        check_continuity(series, [0.5])
    with pytest.raises(ContinuityViolation):
        EvolutionConfig(grid, 0.1, 3, method="rk4_centered", source=series).validate()


def test_kg_residual_cases():
    z = np.zeros((4, 4, 4))
    assert kg_residual(z, z, z, 0.1, 0.5) == 0.0
    with pytest.raises(ShapeMismatch):
        kg_residual(z, z, np.zeros((4, 4, 5)), 0.1, 0.5)


def test_potentials_follow_wave_equation_and_match_spinor():
    grid = GridSpec(8)
    s0 = spinor_from_eb(random_transverse_em(grid, seed=2))
    pot = coulomb_potential(s0)
    da, dv = potential_time_derivatives(s0, pot)
    assert np.allclose(spinor_from_potential(pot, da, dv).phi, s0.phi, atol=1e-12)
    t = 0.8
    pot_t, da_t, dv_t = evolve_potential_exact(pot, da, dv, t)
    assert np.allclose(spinor_from_potential(pot_t, da_t, dv_t).phi, evolve_exact(s0, t).phi, atol=1e-12)


def test_evolve_zero_steps():
    s = spinor_from_eb(random_transverse_em(GRID, seed=1))
    final, rows = evolve(EvolutionConfig(GRID, 0.1, 0), s)
    assert np.array_equal(final.phi, s.phi) and len(rows) == 1


def test_evolve_exact_diagnostics():
    s = spinor_from_eb(random_transverse_em(GRID, seed=1))
    _, rows = evolve(EvolutionConfig(GRID, 0.2, 10, interval=5), s)
    assert [r.time for r in rows] == pytest.approx([0.0, 1.0, 2.0])
    e = [r.total_energy for r in rows]
    assert max(abs(v - e[0]) for v in e) / e[0] < 1e-12
    assert max(r.transversality_residual for r in rows) < 1e-12
    assert max(r.free_equation_residual for r in rows) < 1e-6
    q = np.array([r.isospin_charges for r in rows])
    assert np.max(np.abs(q - q[0])) < 1e-9


def test_evolve_is_deterministic():
    s = spinor_from_eb(random_transverse_em(GRID, seed=4))
    cfg = EvolutionConfig(GRID, 0.5 * GRID.spacing, 4, method="rk4_centered", interval=2)
    a = [r.csv_line() for r in evolve(cfg, s)[1]]
    b = [r.csv_line() for r in evolve(cfg, s)[1]]
    assert a == b


def test_evolve_config_validation():
    with pytest.raises(ValueError):
        EvolutionConfig(GRID, -0.1, 3).validate()
    with pytest.raises(ValueError):
        EvolutionConfig(GRID, 0.1, 3, method="leapfrog").validate()
    with pytest.raises(ValueError):
        EvolutionConfig(GRID, 0.1, 3, source=OscillatingDipole(GRID)).validate()


def test_mode_transform_inverse_of_exact_step():
    m = forward_transform(random_spinor(5))
    back = step_exact(step_exact(m, 0.7), -0.7)
    assert np.allclose(inverse_transform(back).phi, inverse_transform(m).phi)
