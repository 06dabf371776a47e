"""Time evolution of the spinor field and an independent Maxwell solver.

Under ``d_4 = -i d/dt`` and ``Lambda_4 = -I`` the field equation becomes

    d phi / dt = i sum_j Lambda_j d_j phi - i sqrt(mu0/2) J,   J = (j, i rho)

which per Fourier mode is ``d phi_hat / dt = -K phi_hat`` with
``K = sum_j k_j Lambda_j``. The Maxwell oracle integrates real (E, B) with its
own curl kernel and RK4 loop and never touches the Lambda matrices.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import grid as g
from .algebra import lambda_matrices
from .canonical import conjugate_momentum, isospin_currents
from .errors import CflViolation, ContinuityViolation, ShapeMismatch
from .fields import (
    CurrentField,
    EMField,
    PotentialField,
    SpinorField,
    check_mu0,
    four_current_flux,
    transversality_residual,
)
from .grid import GridSpec
from .kernels import curl_centered, lambda_grad_centered
from .spectral import ModeAmplitudes, forward_transform, inverse_transform

METHODS = ("exact_spectral", "rk4_centered")
DEFAULT_CFL = 0.5


# ---------------------------------------------------------------- sources

class Source:
    """Prescribed external current; subclasses give ``at(t)`` and ``drho_dt(t)``."""

    grid: GridSpec

    def at(self, t):
        raise NotImplementedError

    def drho_dt(self, t):
        raise NotImplementedError


def centered_divergence(v, h):
    """Periodic 2nd-order divergence, the one the finite-difference path conserves."""
    return sum((np.roll(v[j], -1, axis=g.axis_of(j)) - np.roll(v[j], 1, axis=g.axis_of(j))) / (2 * h)
               for j in range(3))


class StaticCharge(Source):
    """Time-independent charge density with no current."""

    def __init__(self, grid, rho):
        self.grid = grid
        self._field = CurrentField(grid, np.zeros((3, *grid.shape)), rho)

    def at(self, t):
        return self._field

    def drho_dt(self, t):
        return np.zeros(self.grid.shape)


class OscillatingDipole(Source):
    """Polarization source ``P(x) sin(w t)``: ``j = dP/dt``, ``rho = -div P``.

    The divergence is the discrete centered one, so charge continuity holds
    exactly at the discrete level.
    """

    def __init__(self, grid, amplitude=1.0, direction=(0.0, 0.0, 1.0), omega=1.0,
                 center=None, sharpness=2.0):
        self.grid = grid
        self.omega = float(omega)
        center = np.full(3, grid.box_length / 2) if center is None else np.asarray(center, float)
        x, y, z = grid.coords()
        two_pi_l = 2 * np.pi / grid.box_length
        bump = np.exp(sharpness * (np.cos(two_pi_l * (x - center[0])) + np.cos(two_pi_l * (y - center[1]))
                                   + np.cos(two_pi_l * (z - center[2])) - 3))
        d = np.asarray(direction, dtype=float)
        self.polarization = amplitude * d[:, None, None, None] * bump[None]
        self._div = centered_divergence(self.polarization, grid.spacing)

    def at(self, t):
        return CurrentField(self.grid, self.polarization * self.omega * np.cos(self.omega * t),
                            -self._div * np.sin(self.omega * t))

    def drho_dt(self, t):
        return -self._div * self.omega * np.cos(self.omega * t)


class CurrentSeries(Source):
    """Sampled source; values between samples are linearly interpolated."""

    def __init__(self, times, fields):
        if len(times) != len(fields) or len(times) < 2:
            raise ValueError("CurrentSeries needs at least two (time, CurrentField) samples")
        self.times = np.asarray(times, dtype=float)
        self.fields = list(fields)
        self.grid = fields[0].grid

    def _bracket(self, t):
        i = int(np.clip(np.searchsorted(self.times, t) - 1, 0, len(self.times) - 2))
        w = (t - self.times[i]) / (self.times[i + 1] - self.times[i])
        return i, w

    def at(self, t):
        i, w = self._bracket(t)
        a, b = self.fields[i], self.fields[i + 1]
        return CurrentField(self.grid, (1 - w) * a.j + w * b.j, (1 - w) * a.rho + w * b.rho)

    def drho_dt(self, t):
        i, _ = self._bracket(t)
        return (self.fields[i + 1].rho - self.fields[i].rho) / (self.times[i + 1] - self.times[i])


def continuity_residual(source, t):
    """``max |d rho/dt + div j|`` with the centered divergence."""
    cur = source.at(t)
    return float(np.max(np.abs(source.drho_dt(t) + centered_divergence(cur.j, source.grid.spacing))))


def check_continuity(source, times, tol=1e-10):
    worst = max(continuity_residual(source, t) for t in times)
    if worst > tol:
        raise ContinuityViolation(f"source violates charge continuity: residual {worst:.3g} > {tol:.3g}")
    return worst


def _current_at(j, t):
    if j is None:
        return None
    if isinstance(j, CurrentField):
        return j
    return j.at(t)


# ---------------------------------------------------------------- spinor path

def step_exact(m, dt):
    """Advance mode amplitudes by ``exp(-K dt)`` (free field, exact in time).

    ``K^2 = -|k|^2`` gives the closed form ``cos(|k| dt) - sin(|k| dt) K / |k|``,
    an orthogonal matrix per mode.
    """
    k = m.grid.wavevectors
    kn = np.sqrt(np.sum(k ** 2, axis=0))
    lam = lambda_matrices()[:3].real
    kphi = np.einsum("jab,j...,b...->a...", lam, k, m.amplitudes)
    sinc = np.where(kn == 0, dt, np.sin(kn * dt) / np.where(kn == 0, 1.0, kn))
    return ModeAmplitudes(m.grid, np.cos(kn * dt) * m.amplitudes - sinc * kphi)


def evolve_exact(s, t):
    return inverse_transform(step_exact(forward_transform(s), t))


def check_cfl(dt, grid, cfl=DEFAULT_CFL):
    if not abs(dt) <= cfl * grid.spacing * (1 + 1e-12):
        raise CflViolation(f"dt = {dt:.4g} exceeds cfl * spacing = {cfl * grid.spacing:.4g}")


def spinor_rhs(phi, grid, mu0, current=None):
    """Centered-difference right-hand side ``i sum_j Lambda_j D_j phi - i sqrt(mu0/2) J``."""
    out = 1j * lambda_grad_centered(phi, lambda_matrices()[:3], grid.spacing)
    if current is not None:
        out -= 1j * np.sqrt(mu0 / 2) * current.four_vector()
    return out


def spectral_rhs(phi, grid, mu0, current=None):
    """Same operator with spectral derivatives (used for residual diagnostics)."""
    lam = lambda_matrices()
    out = np.zeros_like(phi, dtype=complex)
    for j in range(3):
        out += 1j * np.einsum("ab,b...->a...", lam[j], g.derivative(phi, j, grid, "spectral"))
    if current is not None:
        out -= 1j * np.sqrt(mu0 / 2) * current.four_vector()
    return out


def _rk4(y, t, dt, rhs):
    k1 = rhs(y, t)
    k2 = rhs(y + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = rhs(y + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = rhs(y + dt * k3, t + dt)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def step_fd(s, j, dt, mu0=1.0, t=0.0, cfl=DEFAULT_CFL):
    """One RK4 step of the spinor equation with 2nd-order centered differences.

    ``j`` is a CurrentField (held fixed over the step), a :class:`Source`, or None.
    """
    mu0 = check_mu0(mu0)
    check_cfl(dt, s.grid, cfl)
    grid = s.grid
    rhs = lambda y, tt: spinor_rhs(y, grid, mu0, _current_at(j, tt))
    return SpinorField(grid, _rk4(s.phi, t, dt, rhs))


# ---------------------------------------------------------------- Maxwell oracle

def maxwell_reference_step(f, j, dt, mu0=1.0, t=0.0, cfl=DEFAULT_CFL):
    """One RK4 step of ``dE/dt = curl B - mu0 j``, ``dB/dt = -curl E`` (c = 1, eps0 = 1/mu0)."""
    mu0 = check_mu0(mu0)
    check_cfl(dt, f.grid, cfl)
    h = f.grid.spacing

    def deriv(e, b, tt):
        cur = _current_at(j, tt)
        de = curl_centered(b, h)
        if cur is not None:
            de = de - mu0 * cur.j
        return de, -curl_centered(e, h)

    e0, b0 = f.e, f.b
    ke1, kb1 = deriv(e0, b0, t)
    ke2, kb2 = deriv(e0 + 0.5 * dt * ke1, b0 + 0.5 * dt * kb1, t + 0.5 * dt)
    ke3, kb3 = deriv(e0 + 0.5 * dt * ke2, b0 + 0.5 * dt * kb2, t + 0.5 * dt)
    ke4, kb4 = deriv(e0 + dt * ke3, b0 + dt * kb3, t + dt)
    e1 = e0 + dt / 6 * (ke1 + 2 * ke2 + 2 * ke3 + ke4)
    b1 = b0 + dt / 6 * (kb1 + 2 * kb2 + 2 * kb3 + kb4)
    return EMField(f.grid, e1, b1)


def maxwell_gauss_residual(f, rho, mu0=1.0):
    """``max |div E - mu0 rho|`` with the oracle's own centered divergence."""
    h = f.grid.spacing
    div = sum((np.roll(f.e[j], -1, axis=-1 - j) - np.roll(f.e[j], 1, axis=-1 - j)) / (2 * h) for j in range(3))
    return float(np.max(np.abs(div - mu0 * rho)))


# ---------------------------------------------------------------- potentials

def potential_time_derivatives(s, p, mu0=1.0, scheme="spectral"):
    """Time derivatives of ``(A, V)`` implied by a spinor consistent with them.

    ``dA/dt = -sqrt(2 mu0) Im phi_vec - grad V`` and
    ``dV/dt = sqrt(2 mu0) Re xi - div A``.
    """
    scale = np.sqrt(2 * check_mu0(mu0))
    da = -scale * s.vector.imag - g.gradient(p.v, p.grid, scheme)
    dv = scale * s.xi.real - g.divergence(p.a, p.grid, scheme)
    return da, dv


def coulomb_potential(s, mu0=1.0):
    """Divergence-free ``A`` with ``curl A = sqrt(2 mu0) Re phi_vec`` (nonzero modes), ``V = 0``.

    Uniform and longitudinal magnetic content has no periodic vector
    potential and is dropped.
    """
    grid = s.grid
    b_hat = g.fftn(np.sqrt(2 * check_mu0(mu0)) * s.vector.real)
    k = grid.wavevectors
    k2 = np.sum(k ** 2, axis=0)
    a_hat = 1j * np.cross(k, b_hat, axis=0) / np.where(k2 == 0, 1.0, k2)
    a_hat[:, k2 == 0] = 0
    return PotentialField(grid, g.ifftn(a_hat).real, np.zeros(grid.shape))


def evolve_potential_exact(p, da_dt, dv_dt, t):
    """Free-field ``(A, V)`` at time ``t``: every component solves the wave equation.

    Returns ``(PotentialField, dA/dt, dV/dt)``.
    """
    grid = p.grid
    kn = np.sqrt(np.sum(grid.wavevectors ** 2, axis=0))
    safe = np.where(kn == 0, 1.0, kn)
    c = np.cos(kn * t)
    s_over = np.where(kn == 0, t, np.sin(kn * t) / safe)
    ks = kn * np.sin(kn * t)
    x0 = g.fftn(np.concatenate([p.a, p.v[None]]))
    v0 = g.fftn(np.concatenate([da_dt, dv_dt[None]]))
    x = g.ifftn(c * x0 + s_over * v0).real
    v = g.ifftn(-ks * x0 + c * v0).real
    return PotentialField(grid, x[:3], x[3]), v[:3], v[3]


# ---------------------------------------------------------------- residuals

def kg_residual(xi_prev, xi, xi_next, dt, spacing):
    """Max norm of the discrete ``(laplacian - d_t^2) xi`` at the middle snapshot.

    ``d_mu d_mu = laplacian + d_4^2 = laplacian - d_t^2`` under ``x_4 = i t``.
    """
    xi_prev, xi, xi_next = (np.asarray(a) for a in (xi_prev, xi, xi_next))
    if not (xi_prev.shape == xi.shape == xi_next.shape) or xi.ndim != 3:
        raise ShapeMismatch("kg_residual needs three equally shaped 3-D snapshots")
    lap = -6.0 * xi
    for ax in (0, 1, 2):
        lap = lap + np.roll(xi, 1, axis=ax) + np.roll(xi, -1, axis=ax)
    lap = lap / spacing ** 2
    dtt = (xi_next - 2 * xi + xi_prev) / dt ** 2
    return float(np.max(np.abs(lap - dtt)))


def _stencil_dt(advance, phi, delta):
    fm2, fm1, fp1, fp2 = (advance(phi, c * delta) for c in (-2, -1, 1, 2))
    return (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * delta)


def free_equation_residual(advance, s, mu0=1.0, current=None, delta=1e-3):
    """Residual of the field equation with spectral spatial derivatives.

    ``advance(phi, tau)`` returns the state advanced by ``tau``; its time
    derivative is taken with a 5-point stencil of width ``delta``.
    """
    dphi = _stencil_dt(advance, s.phi, delta)
    return float(np.max(np.abs(dphi - spectral_rhs(s.phi, s.grid, mu0, current))))


def spectral_equation_residual(phi_t, dphi_dt, grid, mu0=1.0, current=None):
    """Residual given an explicit time derivative (e.g. from a closed form)."""
    return float(np.max(np.abs(dphi_dt - spectral_rhs(phi_t, grid, mu0, current))))


# ---------------------------------------------------------------- evolve

@dataclass
class EvolutionConfig:
    grid: GridSpec
    dt: float
    steps: int
    mu0: float = 1.0
    method: str = "exact_spectral"
    source: Optional[Source] = None
    cfl: float = DEFAULT_CFL
    interval: int = 1
    continuity_tol: float = 1e-10
    residual_delta: float = 1e-3

    def validate(self):
        check_mu0(self.mu0)
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ValueError(f"steps must be a nonnegative integer, got {self.steps}")
        if self.interval < 1:
            raise ValueError("interval must be >= 1")
        if self.method == "rk4_centered":
            check_cfl(self.dt, self.grid, self.cfl)
        if self.source is not None:
            if self.method == "exact_spectral":
                raise ValueError("exact_spectral evolves the free field only; use rk4_centered with a source")
            times = np.linspace(0.0, self.dt * max(self.steps, 1), 5)
            check_continuity(self.source, times, self.continuity_tol)


@dataclass
class DiagnosticsRow:
    time: float
    total_energy: float
    total_poynting: tuple
    transversality_residual: float
    free_equation_residual: float
    kg_residual_xi: float
    isospin_charges: tuple = field(default=(0.0, 0.0, 0.0))

    CSV_HEADER = "time,total_energy,Sx,Sy,Sz,transversality,eq_residual,kg_residual,Q1,Q2,Q3"

    def csv_line(self):
        # Q columns hold Im Q: Re Q vanishes identically for Coulomb-gauge potentials
        vals = (self.time, self.total_energy, *self.total_poynting, self.transversality_residual,
                self.free_equation_residual, self.kg_residual_xi, *np.imag(self.isospin_charges))
        return ",".join(repr(float(v)) for v in vals)


class _Integrator:
    """Joint (phi, A, V) state with the configured stepper."""

    def __init__(self, config, initial, potential):
        self.cfg = config
        self.grid = initial.grid
        mu0 = config.mu0
        if potential is None:
            potential = coulomb_potential(initial, mu0)
        da, dv = potential_time_derivatives(initial, potential, mu0,
                                            "spectral" if config.method == "exact_spectral" else "centered2")
        self.phi0, self.a0, self.v0, self.da0, self.dv0 = initial.phi, potential.a, potential.v, da, dv
        self.phi, self.a, self.v = initial.phi, potential.a, potential.v
        self.t = 0.0
        if config.method == "exact_spectral":
            self._hat0 = forward_transform(initial)

    def current(self, t):
        return _current_at(self.cfg.source, t)

    def advance_phi(self, phi, tau, t):
        """Advance a bare spinor array from time ``t`` by ``tau`` (used by diagnostics)."""
        if self.cfg.method == "exact_spectral":
            return evolve_exact(SpinorField(self.grid, phi), tau).phi
        rhs = lambda y, tt: spinor_rhs(y, self.grid, self.cfg.mu0, self.current(tt))
        return _rk4(phi, t, tau, rhs)

    def step(self, n_done):
        cfg = self.cfg
        if cfg.method == "exact_spectral":
            t = (n_done + 1) * cfg.dt
            self.phi = inverse_transform(step_exact(self._hat0, t)).phi
            pot, _, _ = evolve_potential_exact(PotentialField(self.grid, self.a0, self.v0), self.da0, self.dv0, t)
            self.a, self.v = pot.a, pot.v
            self.t = t
            return
        grid, mu0, scale = self.grid, cfg.mu0, np.sqrt(2 * cfg.mu0)
        h = grid.spacing

        def rhs(y, tt):
            phi, a, v = y
            dphi = spinor_rhs(phi, grid, mu0, self.current(tt))
            grad_v = np.stack([(np.roll(v, -1, axis=g.axis_of(j)) - np.roll(v, 1, axis=g.axis_of(j))) / (2 * h)
                               for j in range(3)])
            da = -scale * phi[:3].imag - grad_v
            dv = scale * phi[3].real - centered_divergence(a, h)
            return _Tup((dphi, da, dv))

        y = _rk4(_Tup((self.phi, self.a, self.v)), self.t, cfg.dt, rhs)
        self.phi, self.a, self.v = y
        # exact multiples of dt, no accumulated drift
        self.t = (n_done + 1) * cfg.dt

    def diagnostics(self):
        cfg, grid = self.cfg, self.grid
        s = SpinorField(grid, self.phi)
        flux = four_current_flux(s)
        energy = float(g.integrate((-1j * flux.fourth).real, grid))
        poynting = tuple(float(v) for v in g.integrate(flux.spatial, grid))
        cur = self.current(self.t)
        t0 = self.t
        eq_res = free_equation_residual(lambda phi, tau: self.advance_phi(phi, tau, t0), s, cfg.mu0, cur,
                                        cfg.residual_delta)
        xi_prev = self.advance_phi(self.phi, -cfg.dt, t0)[3]
        xi_next = self.advance_phi(self.phi, cfg.dt, t0)[3]
        kg = kg_residual(xi_prev, self.phi[3], xi_next, cfg.dt, grid.spacing)
        pi = conjugate_momentum(s, cfg.mu0)
        charges = isospin_currents(pi, PotentialField(grid, self.a, self.v)).charges
        return DiagnosticsRow(
            time=float(self.t),
            total_energy=energy,
            total_poynting=poynting,
            transversality_residual=transversality_residual(s),
            free_equation_residual=eq_res,
            kg_residual_xi=kg,
            isospin_charges=tuple(complex(q) for q in charges),
        )


class _Tup(tuple):
    """Tuple of arrays supporting the linear combinations used by RK4."""

    def __add__(self, other):
        return _Tup(a + b for a, b in zip(self, other))

    def __mul__(self, c):
        return _Tup(a * c for a in self)

    __rmul__ = __mul__


def evolve(config, initial, potential=None):
    """Run the configured stepper; return ``(final SpinorField, [DiagnosticsRow])``.

    Rows are emitted at step 0 and every ``config.interval`` steps (and at the
    final step). Isospin charges use ``potential`` (or a Coulomb-gauge
    reconstruction from ``initial``) carried along with the spinor.
    """
    config.validate()
    if initial.grid != config.grid:
        raise ShapeMismatch("initial field grid differs from config grid")
    integ = _Integrator(config, initial, potential)
    rows = [integ.diagnostics()]
    for n in range(config.steps):
        integ.step(n)
        if (n + 1) % config.interval == 0 or n + 1 == config.steps:
            rows.append(integ.diagnostics())
    return SpinorField(config.grid, integ.phi), rows
