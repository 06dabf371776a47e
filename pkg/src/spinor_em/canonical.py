"""Lagrangian layer: Lagrangian and Hamiltonian densities, conjugate momenta, isospin currents.

Conventions:
  * ``L = -phi^T phi`` (unconjugated); for transverse fields
    ``Re L = (E^2 - B^2) / (2 mu0)``. ``conjugated=True`` gives ``-phi^+ phi``.
  * The leading ``phi`` in the Hamiltonian density is a row vector.
  * Currents ``j_mu^i = pi^T Lambda_mu^{-1} Delta_i A`` with ``A = (A_vec, i V)``.
"""
from dataclasses import dataclass

import numpy as np

from . import grid as g
from .algebra import isospin_matrices, lambda_inverses, lambda_matrices
from .errors import ShapeMismatch
from .fields import FourVectorField, SpinorField, check_mu0


@dataclass(frozen=True, eq=False)
class MomentumField:
    grid: g.GridSpec
    pi: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pi, dtype=complex)
        if arr.shape != (4, *self.grid.shape):
            raise ShapeMismatch(f"pi has shape {arr.shape}, expected {(4, *self.grid.shape)}")
        object.__setattr__(self, "pi", arr)

    def to_spinor(self, mu0=1.0):
        return SpinorField(self.grid, self.pi / (1j * np.sqrt(2 / check_mu0(mu0))))


@dataclass(frozen=True, eq=False)
class IsospinCurrentSet:
    currents: tuple
    charge_densities: np.ndarray
    charges: np.ndarray


def _check_grid(*fields):
    grids = {f.grid for f in fields}
    if len(grids) != 1:
        raise ShapeMismatch("fields live on different grids")


def lagrangian_density(s, conjugated=False):
    """``-phi^T phi`` per site (``-phi^+ phi`` if ``conjugated``)."""
    if conjugated:
        return -np.sum(np.abs(s.phi) ** 2, axis=0).astype(complex)
    return -np.sum(s.phi * s.phi, axis=0)


def conjugate_momentum(s, mu0=1.0):
    """``pi_mu = i sqrt(2/mu0) phi_mu``."""
    return MomentumField(s.grid, 1j * np.sqrt(2 / check_mu0(mu0)) * s.phi)


def hamiltonian_density(s, p, da_dt, dv_dt, mu0=1.0, scheme="spectral"):
    """Return ``(H, H_legendre)`` per site.

    ``H = phi^T (sum_mu Lambda_mu d_mu A) / sqrt(2 mu0)`` and
    ``H_legendre = pi_mu dA_mu/dt - L`` with ``dA_4/dt = i dV/dt``.
    """
    _check_grid(s, p)
    mu0 = check_mu0(mu0)
    grid = s.grid
    da_dt = np.asarray(da_dt, dtype=float)
    dv_dt = np.asarray(dv_dt, dtype=float)
    if da_dt.shape != (3, *grid.shape) or dv_dt.shape != grid.shape:
        raise ShapeMismatch("time-derivative fields do not match the grid")
    a4 = p.four_vector()
    dt_a4 = np.concatenate([da_dt, 1j * dv_dt[None]])
    grads = [g.derivative(a4, j, grid, scheme) for j in range(3)] + [-1j * dt_a4]
    lam = lambda_matrices()
    lam_da = sum(np.einsum("ab,b...->a...", lam[mu], grads[mu]) for mu in range(4))
    h = np.sum(s.phi * lam_da, axis=0) / np.sqrt(2 * mu0)
    pi = conjugate_momentum(s, mu0).pi
    h_legendre = np.sum(pi * dt_a4, axis=0) - lagrangian_density(s)
    return h, h_legendre


def isospin_currents(pi, p):
    """Currents ``j_mu^i = pi^T Lambda_mu^{-1} Delta_i A`` and charges ``Q_i = int -i j_4^i``."""
    _check_grid(pi, p)
    grid = p.grid
    a4 = p.four_vector()
    inv = lambda_inverses()
    delta = isospin_matrices()
    currents, densities = [], []
    for i in range(3):
        d_a = np.einsum("ab,b...->a...", delta[i], a4)
        comps = [np.einsum("a...,ab,b...->...", pi.pi, inv[mu], d_a) for mu in range(4)]
        spatial = np.stack(comps[:3])
        # keep the complex spatial part available through charge/flux helpers
        currents.append(_IsospinCurrent(grid, spatial, comps[3]))
        densities.append(-1j * comps[3])
    densities = np.array(densities)
    charges = g.integrate(densities, grid)
    return IsospinCurrentSet(currents=tuple(currents), charge_densities=densities, charges=charges)


@dataclass(frozen=True, eq=False)
class _IsospinCurrent:
    """Complex-valued four-current (the spatial part need not be real)."""

    grid: g.GridSpec
    spatial: np.ndarray
    fourth: np.ndarray

    @property
    def density(self):
        return -1j * self.fourth

    def as_four_vector_field(self):
        return FourVectorField(self.grid, self.spatial.real, self.fourth)


def divergence_residual(history, dt, scheme="centered2"):
    """Max-norm four-divergence ``div j^i + d(-i j_4^i)/dt`` at the middle snapshot.

    ``history`` is three IsospinCurrentSets equally spaced by ``dt``.
    """
    if len(history) != 3:
        raise ShapeMismatch("divergence_residual needs exactly three snapshots")
    prev, mid, nxt = history
    grid = mid.currents[0].grid
    out = []
    for i in range(3):
        div = g.divergence(mid.currents[i].spatial, grid, scheme)
        drho = (nxt.charge_densities[i] - prev.charge_densities[i]) / (2 * dt)
        out.append(float(np.max(np.abs(div + drho))))
    return tuple(out)
