"""Rotation and boost covariance of the free spinor equation.

Fields are handled in closed form (finite plane-wave superpositions) so that
transformed fields can be evaluated at arbitrary points without interpolation.
A closed-form field is any callable ``fn(points, t) -> (4, N)`` with
``points`` of shape ``(3, N)``; residuals are measured with high-order
finite differences of such callables, independently of how they were built.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import (
    lambda_matrices,
    lorentz_boost,
    lorentz_rotation,
    rotation_matrix3,
    rotation_rep,
    spinor_rep,
    _unit,
)
from .errors import UnsupportedInput
from .fields import EMField, SpinorField, eb_from_spinor, spinor_from_eb
from .spectral import forward_transform, polarization_column, Helicity


@dataclass(frozen=True)
class PlaneWave:
    k: np.ndarray
    omega: float
    column: np.ndarray


class PlaneWaveSuperposition:
    """Sum of ``column * exp(i (k.x - omega t))`` terms.

    ``t`` may be a scalar or an array with one time per point.
    """

    def __init__(self, waves):
        self.waves = list(waves)

    def __call__(self, points, t):
        return self.evaluate_points(points, t)

    def evaluate_points(self, points, t):
        points = np.asarray(points, dtype=float)
        out = np.zeros((4, points.shape[1]), dtype=complex)
        for w in self.waves:
            phase = np.exp(1j * (w.k @ points - w.omega * t))
            out += w.column[:, None] * phase[None]
        return out

    def evaluate(self, grid, t=0.0):
        pts = grid.position_vectors().reshape(3, -1)
        return SpinorField(grid, self.evaluate_points(pts, t).reshape(4, *grid.shape))

    @classmethod
    def from_plane_waves(cls, specs, box_length=2 * np.pi):
        waves = []
        for spec in specs:
            k = spec.mode.k(box_length)
            if not spec.helicity.sign:
                raise UnsupportedInput("only helicity +-1 plane waves have closed-form frequencies")
            if spec.helicity.sign != -spec.alpha:
                raise ValueError("helicity must equal -alpha for a transverse solution")
            col = spec.amplitude * polarization_column(k, spec.helicity)
            waves.append(PlaneWave(k, spec.alpha * float(np.linalg.norm(k)), col))
        return cls(waves)

    @classmethod
    def from_spinor_field(cls, s, tol=1e-10):
        """Decompose a transverse grid field into helicity plane waves.

        Raises UnsupportedInput when longitudinal or scalar content is present.
        """
        grid = s.grid
        amp = forward_transform(s).amplitudes / np.sqrt(grid.volume)
        scale = max(1.0, float(np.max(np.abs(amp))))
        waves = []
        mx, my, mz = (np.broadcast_to(m, grid.shape) for m in grid.mode_indices)
        for idx in zip(*np.nonzero(np.max(np.abs(amp), axis=0) > tol * scale)):
            col = amp[(slice(None), *idx)]
            if abs(col[3]) > tol * scale:
                raise UnsupportedInput("field has scalar (fourth-component) content")
            m = (mx[idx], my[idx], mz[idx])
            k = grid.kvector(m)
            if not np.any(k):
                waves.append(PlaneWave(k, 0.0, col.copy()))
                continue
            lon = np.vdot(polarization_column(k, Helicity.LONGITUDINAL), col)
            if abs(lon) > tol * scale:
                raise UnsupportedInput("field has longitudinal content")
            kn = float(np.linalg.norm(k))
            for hel in (Helicity.PLUS, Helicity.MINUS):
                u = polarization_column(k, hel)
                c = np.vdot(u, col)
                if abs(c) > tol * scale:
                    waves.append(PlaneWave(k, -hel.sign * kn, c * u))
        return cls(waves)


def pointwise_residual(fn, points, t=0.0, delta=1e-3):
    """Max ``|d_t phi - i sum_j Lambda_j d_j phi|`` via 5-point central stencils.

    Returns the absolute residual; derivatives never use the plane-wave
    structure of ``fn``.
    """
    points = np.asarray(points, dtype=float)
    w = np.array([1.0, -8.0, 8.0, -1.0]) / (12 * delta)
    offs = (-2, -1, 1, 2)
    dt = sum(c * fn(points, t + o * delta) for c, o in zip(w, offs))
    lam = lambda_matrices()
    rhs = np.zeros_like(dt)
    for j in range(3):
        e = np.zeros((3, 1))
        e[j] = 1.0
        dj = sum(c * fn(points + o * delta * e, t) for c, o in zip(w, offs))
        rhs += 1j * lam[j] @ dj
    return float(np.max(np.abs(dt - rhs)))


def rotated(fn, axis, angle):
    """Rotated solution ``R_spinor phi(R^{-1} x, t)`` with ``R_spinor = rotation_rep``."""
    rot = rotation_matrix3(axis, angle)
    rep = rotation_rep(axis, angle)

    def out(points, t):
        return rep @ fn(rot.T @ np.asarray(points, dtype=float), t)

    return out


def field_boost_matrix(velocity):
    """Complex-linear action of a boost on ``B + iE`` (c = 1).

    From ``E' = g(E + v x B) - g^2/(g+1) v (v.E)`` and
    ``B' = g(B - v x E) - g^2/(g+1) v (v.B)``.
    """
    v = np.asarray(velocity, dtype=float)
    gamma = 1.0 / np.sqrt(1.0 - v @ v)
    cross = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    m = np.eye(4, dtype=complex)
    m[:3, :3] = gamma * (np.eye(3) + 1j * cross) - gamma ** 2 / (gamma + 1) * np.outer(v, v)
    return m


def boosted_classical(fn, direction, rapidity):
    """Field seen in a frame moving with velocity ``tanh(rapidity) * direction``.

    Coordinates and E, B follow the standard Lorentz transformation; the
    fourth component is passed through unchanged (it is zero for EM fields).
    """
    n = _unit(direction)
    v = np.tanh(rapidity) * n
    gamma = np.cosh(rapidity)
    mat = field_boost_matrix(v)

    def out(points, t):
        p = np.asarray(points, dtype=float)
        par = n @ p
        t_orig = gamma * (t + v @ p)
        x_orig = p + ((gamma - 1) * par + gamma * np.tanh(rapidity) * t)[None] * n[:, None]
        return mat @ fn(x_orig, t_orig)

    return out


def boosted_eb(fn, direction, rapidity, mu0=1.0):
    """Boost through real (E, B): split ``phi``, transform each field, recombine.

    ``E' = g(E + v x B) - g^2/(g+1) v (v.E)``, ``B' = g(B - v x E) - g^2/(g+1) v (v.B)``.
    """
    n = _unit(direction)
    beta = np.tanh(rapidity)
    v = beta * n
    gamma = np.cosh(rapidity)
    scale = np.sqrt(2 * mu0)

    def out(points, t):
        p = np.asarray(points, dtype=float)
        t_orig = gamma * (t + v @ p)
        x_orig = p + ((gamma - 1) * (n @ p) + gamma * beta * t)[None] * n[:, None]
        phi = fn(x_orig, t_orig)
        e, b = scale * phi[:3].imag, scale * phi[:3].real
        e2 = gamma * (e + np.cross(v, b, axis=0)) - gamma ** 2 / (gamma + 1) * v[:, None] * (v @ e)
        b2 = gamma * (b - np.cross(v, e, axis=0)) - gamma ** 2 / (gamma + 1) * v[:, None] * (v @ b)
        return np.concatenate([(b2 + 1j * e2) / scale, phi[3:]])

    return out


def transformed_literal(fn, a):
    """``T phi(a^{-1} x)`` with the literal ``T`` and four-vector ``x = (x, i t)``."""
    t_mat = spinor_rep(a)
    a_inv = np.asarray(a).T

    def out(points, t):
        p = np.asarray(points, dtype=float)
        x4 = np.concatenate([p.astype(complex), np.full((1, p.shape[1]), 1j * t)])
        y = a_inv @ x4
        # y[3] = i t_orig; real rotations and boosts leave only roundoff in the other parts
        return t_mat @ fn(y[:3].real, y[3].imag)

    return out


def boost_superposition(sup, direction, rapidity):
    """Transform each wave's ``(omega, k)`` and column; used as a cross-check."""
    n = _unit(direction)
    beta = np.tanh(rapidity)
    gamma = np.cosh(rapidity)
    v = beta * n
    mat = field_boost_matrix(v)
    waves = []
    for w in sup.waves:
        kpar = n @ w.k
        omega = gamma * (w.omega - v @ w.k)
        k = w.k + ((gamma - 1) * kpar - gamma * beta * w.omega) * n
        waves.append(PlaneWave(k, float(omega), mat @ w.column))
    return PlaneWaveSuperposition(waves)


def boost_eb_oracle(f, direction, rapidity, mu0=1.0, time=0.0):
    """Classically boosted field sampled on the original grid at ``t' = time``.

    ``f`` is decomposed into helicity plane waves; longitudinal content, or
    anything that is not an EMField, raises UnsupportedInput. For closed-form
    superpositions use :func:`boosted_classical` directly.
    """
    _unit(direction)
    if not isinstance(f, EMField):
        raise UnsupportedInput(f"cannot boost {type(f).__name__}: an EMField of plane-wave data is required")
    grid = f.grid
    sup = PlaneWaveSuperposition.from_spinor_field(spinor_from_eb(f, mu0))
    fn = boosted_classical(sup, direction, rapidity)
    pts = grid.position_vectors().reshape(3, -1)
    s = SpinorField(grid, fn(pts, time).reshape(4, *grid.shape))
    return eb_from_spinor(s, mu0)


def measured_frequency(fn, point, t=0.0, delta=1e-4):
    """``omega = i (d_t phi) / phi`` at one point (single plane wave input)."""
    p = np.asarray(point, dtype=float).reshape(3, 1)
    val = fn(p, t)[:, 0]
    d = (fn(p, t - 2 * delta) - 8 * fn(p, t - delta) + 8 * fn(p, t + delta) - fn(p, t + 2 * delta))[:, 0] / (12 * delta)
    c = int(np.argmax(np.abs(val)))
    return complex(1j * d[c] / val[c])


def literal_t_report(sup, points, rapidity=0.3, angle=0.7, axis=(0.0, 0.0, 1.0),
                     direction=(0.0, 0.0, 1.0)):
    """Compare the literal spinor representation against the independent oracles.

    Informational: reports matrix discrepancies and free-equation residuals of
    ``T phi(a^{-1} x)`` for one rotation and one boost.
    """
    rot_a = lorentz_rotation(axis, angle)
    t_rot = spinor_rep(rot_a)
    rep = rotation_rep(axis, angle)
    boost_a = lorentz_boost(direction, rapidity)
    t_boost = spinor_rep(boost_a)
    oracle = field_boost_matrix(np.tanh(rapidity) * np.asarray(direction, float))
    lit_rot = transformed_literal(sup, rot_a)
    lit_boost = transformed_literal(sup, boost_a)
    orc_rot = rotated(sup, axis, angle)
    orc_boost = boosted_classical(sup, direction, rapidity)
    field_scale = max(1e-300, float(np.max(np.abs(orc_boost(points, 0.0)))))
    return {
        "rotation_matrix_discrepancy": float(np.max(np.abs(t_rot[:3, :3] - rep[:3, :3]))),
        "rotation_field_discrepancy": float(np.max(np.abs(lit_rot(points, 0.0) - orc_rot(points, 0.0)))),
        "rotation_literal_residual": pointwise_residual(lit_rot, points),
        "boost_matrix_discrepancy": float(np.max(np.abs(t_boost[:3, :3] - oracle[:3, :3]))),
        "boost_field_relative_discrepancy": float(
            np.max(np.abs(lit_boost(points, 0.0) - orc_boost(points, 0.0))) / field_scale),
        "boost_literal_residual": pointwise_residual(lit_boost, points),
        "boost_oracle_residual": pointwise_residual(orc_boost, points),
        "T_rotation": _cplx(t_rot),
        "T_boost": _cplx(t_boost),
    }


def _cplx(m):
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m)]
