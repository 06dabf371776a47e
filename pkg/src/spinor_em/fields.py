"""Classical field containers and conversions among phi, (E, B), (A, V), currents.

Conventions: ``c = 1``, ``x_4 = i t`` so ``d_4 = -i d/dt``, ``j_4 = i rho`` and
``A_4 = i V``. Physical fields are stored real; the imaginary fourth components
only appear inside conversion formulas.
"""
from dataclasses import dataclass

import numpy as np

from . import grid as g
from .algebra import lambda_matrices, lambda_inverses
from .errors import NonPositiveMu0, ShapeMismatch, TransversalityViolation
from .grid import GridSpec

DEFAULT_MU0 = 1.0


def _field_array(value, grid, ncomp, dtype, name):
    arr = np.asarray(value, dtype=dtype)
    expected = (ncomp, *grid.shape) if ncomp else grid.shape
    if arr.shape != expected:
        raise ShapeMismatch(f"{name} has shape {arr.shape}, expected {expected}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_mu0(mu0):
    if not mu0 > 0:
        raise NonPositiveMu0(f"mu0 must be positive, got {mu0}")
    return float(mu0)


@dataclass(frozen=True, eq=False)
class EMField:
    grid: GridSpec
    e: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "e", _field_array(self.e, self.grid, 3, float, "e"))
        object.__setattr__(self, "b", _field_array(self.b, self.grid, 3, float, "b"))


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Four-component complex field ``(phi_1, phi_2, phi_3, xi)`` per site."""

    grid: GridSpec
    phi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phi", _field_array(self.phi, self.grid, 4, complex, "phi"))

    @property
    def xi(self):
        return self.phi[3]

    @property
    def vector(self):
        return self.phi[:3]

    def __add__(self, other):
        return SpinorField(self.grid, self.phi + other.phi)

    def __sub__(self, other):
        return SpinorField(self.grid, self.phi - other.phi)

    def norm(self):
        """L2 norm ``sqrt(sum |phi|^2 dV)``."""
        return float(np.sqrt(g.integrate(np.sum(np.abs(self.phi) ** 2, axis=0), self.grid)))

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros((4, *grid.shape), dtype=complex))


@dataclass(frozen=True, eq=False)
class PotentialField:
    grid: GridSpec
    a: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", _field_array(self.a, self.grid, 3, float, "a"))
        object.__setattr__(self, "v", _field_array(self.v, self.grid, 0, float, "v"))

    def four_vector(self):
        """Complex column ``(A_1, A_2, A_3, i V)`` per site."""
        return np.concatenate([self.a, 1j * self.v[None]]).astype(complex)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros((3, *grid.shape)), np.zeros(grid.shape))


@dataclass(frozen=True, eq=False)
class CurrentField:
    grid: GridSpec
    j: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "j", _field_array(self.j, self.grid, 3, float, "j"))
        object.__setattr__(self, "rho", _field_array(self.rho, self.grid, 0, float, "rho"))

    def four_vector(self):
        """Complex column ``(j_1, j_2, j_3, i rho)`` per site."""
        return np.concatenate([self.j, 1j * self.rho[None]]).astype(complex)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros((3, *grid.shape)), np.zeros(grid.shape))


@dataclass(frozen=True, eq=False)
class FourVectorField:
    grid: GridSpec
    spatial: np.ndarray
    fourth: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "spatial", _field_array(self.spatial, self.grid, 3, float, "spatial"))
        object.__setattr__(self, "fourth", _field_array(self.fourth, self.grid, 0, complex, "fourth"))


def spinor_from_eb(f, mu0=DEFAULT_MU0):
    """``phi = (B + iE) / sqrt(2 mu0)`` with ``xi = 0``."""
    mu0 = check_mu0(mu0)
    vec = (f.b + 1j * f.e) / np.sqrt(2 * mu0)
    return SpinorField(f.grid, np.concatenate([vec, np.zeros((1, *f.grid.shape))]))


def eb_from_spinor(s, mu0=DEFAULT_MU0, tol=1e-9):
    """Inverse of :func:`spinor_from_eb`; refuses spinors with nonzero ``xi``."""
    mu0 = check_mu0(mu0)
    resid = transversality_residual(s)
    if resid > tol:
        raise TransversalityViolation(
            f"max |xi| = {resid:.3g} exceeds tol {tol:.3g}; the spinor is not a pure electromagnetic field"
        )
    scale = np.sqrt(2 * mu0)
    return EMField(s.grid, e=scale * s.vector.imag, b=scale * s.vector.real)


def spinor_from_potential(p, da_dt, dv_dt, mu0=DEFAULT_MU0, scheme="spectral"):
    """Evaluate ``phi = -(1/sqrt(2 mu0)) sum_mu Lambda_mu^{-1} d_mu A``.

    ``A = (A_vec, i V)`` and ``d_4 = -i d/dt``; the time derivatives of the
    potentials at this slice are supplied by the caller.
    """
    mu0 = check_mu0(mu0)
    grid = p.grid
    da_dt = _field_array(da_dt, grid, 3, float, "da_dt")
    dv_dt = _field_array(dv_dt, grid, 0, float, "dv_dt")
    a4 = p.four_vector()
    d4 = -1j * np.concatenate([da_dt, 1j * dv_dt[None]])
    grads = [g.derivative(a4, j, grid, scheme) for j in range(3)] + [d4]
    inv = lambda_inverses()
    phi = np.zeros((4, *grid.shape), dtype=complex)
    for mu in range(4):
        phi -= np.einsum("ab,b...->a...", inv[mu], grads[mu])
    return SpinorField(grid, phi / np.sqrt(2 * mu0))


def four_current_flux(s):
    """``j_mu = -i phi^+ Lambda_mu phi``.

    The spatial part is the Poynting vector and ``-i * fourth`` the energy
    density for transverse fields.
    """
    lam = lambda_matrices()
    conj = s.phi.conj()
    spatial = np.stack([(-1j * np.einsum("a...,ab,b...->...", conj, lam[j], s.phi)).real for j in range(3)])
    fourth = -1j * np.einsum("a...,ab,b...->...", conj, lam[3], s.phi)
    return FourVectorField(s.grid, spatial, fourth)


def energy_density(s):
    return (-1j * four_current_flux(s).fourth).real


def total_energy(s):
    return float(g.integrate(energy_density(s), s.grid))


def total_momentum(s):
    return g.integrate(four_current_flux(s).spatial, s.grid)


def transversality_residual(s):
    """``max |xi|`` over sites."""
    return float(np.max(np.abs(s.xi)))


def classical_energy_density(f, mu0=DEFAULT_MU0):
    return (np.sum(f.e ** 2, axis=0) + np.sum(f.b ** 2, axis=0)) / (2 * mu0)


def classical_poynting(f, mu0=DEFAULT_MU0):
    return np.cross(f.e, f.b, axis=0) / mu0
