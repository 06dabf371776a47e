"""Fourier analysis of spinor fields: plane waves, helicity buckets, mode bases.

Amplitudes use box normalization ``phi(x) = V^{-1/2} sum_k phi_hat(k) e^{i k.x}``,
which makes the transform unitary (Parseval holds with unit weight).
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import grid as g
from .algebra import generator_matrix, lambda_inverses, rotation_matrix3
from .errors import ShapeMismatch, ZeroWavevector
from .fields import SpinorField
from .grid import GridSpec


class Helicity(str, Enum):
    PLUS = "+1"
    MINUS = "-1"
    LONGITUDINAL = "0_long"
    SCALAR = "0_scalar"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, np.integer)) and value in (1, -1):
            return cls.PLUS if value == 1 else cls.MINUS
        aliases = {"+1": cls.PLUS, "1": cls.PLUS, "-1": cls.MINUS,
                   "0_long": cls.LONGITUDINAL, "long": cls.LONGITUDINAL,
                   "0_scalar": cls.SCALAR, "scalar": cls.SCALAR}
        try:
            return aliases[str(value)]
        except KeyError:
            raise ValueError(f"unknown helicity {value!r}") from None

    @property
    def sign(self):
        return {"+1": 1, "-1": -1}.get(self.value, 0)


@dataclass(frozen=True)
class ModeIndex:
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.m) != 3:
            raise ValueError(f"mode index needs 3 components, got {self.m}")

    def k(self, box_length=2 * np.pi):
        return 2 * np.pi * np.asarray(self.m, dtype=float) / box_length

    def is_zero(self):
        return self.m == (0, 0, 0)

    def check_on(self, grid):
        grid.fft_slot(self.m)
        return self


@dataclass(frozen=True)
class PlaneWaveSpec:
    mode: ModeIndex
    alpha: int = 1
    helicity: Helicity = Helicity.MINUS
    amplitude: complex = 1.0

    def __post_init__(self):
        if not isinstance(self.mode, ModeIndex):
            object.__setattr__(self, "mode", ModeIndex(self.mode))
        if self.alpha not in (1, -1):
            raise ValueError(f"alpha must be +1 or -1, got {self.alpha}")
        object.__setattr__(self, "helicity", Helicity.parse(self.helicity))
        object.__setattr__(self, "amplitude", complex(self.amplitude))


@dataclass(frozen=True, eq=False)
class ModeAmplitudes:
    grid: GridSpec
    amplitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.shape != (4, *self.grid.shape):
            raise ShapeMismatch(f"amplitudes shape {arr.shape} does not match grid")
        object.__setattr__(self, "amplitudes", arr)

    def at(self, m):
        return self.amplitudes[(slice(None), *self.grid.fft_slot(m))]

    def norm2(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True, eq=False)
class ModeBasis:
    """Polarization columns for one wavevector; column ``lam - 1`` holds index ``lam``."""

    k: np.ndarray
    eps: np.ndarray
    eps_bar: np.ndarray
    v: np.ndarray
    v_bar: np.ndarray


def forward_transform(s):
    n3 = s.grid.n ** 3
    return ModeAmplitudes(s.grid, g.fftn(s.phi) * np.sqrt(s.grid.volume) / n3)


def inverse_transform(m):
    n3 = m.grid.n ** 3
    return SpinorField(m.grid, g.ifftn(m.amplitudes) * n3 / np.sqrt(m.grid.volume))


def frame_rotation(khat):
    """Rotation taking z to ``khat`` about ``z x khat`` (about x for the antipode)."""
    khat = np.asarray(khat, dtype=float)
    z = np.array([0.0, 0.0, 1.0])
    axis = np.cross(z, khat)
    s = np.linalg.norm(axis)
    if s < 1e-14:
        return np.eye(3) if khat[2] > 0 else rotation_matrix3([1.0, 0.0, 0.0], np.pi)
    return rotation_matrix3(axis / s, np.arctan2(s, khat[2]))


def _khat(k):
    k = np.asarray(k, dtype=float)
    norm = np.linalg.norm(k)
    if norm == 0:
        raise ZeroWavevector("wavevector is zero; helicity structure undefined")
    return k / norm


def transverse_unit_vectors(k):
    """Helicity +1 and -1 columns ``(u_plus, u_minus)`` for wavevector ``k``.

    For ``khat = z`` these are ``(1, +-i, 0, 0)/sqrt(2)``; other directions
    are reached by :func:`frame_rotation`. ``k`` may be a ModeIndex (box 2 pi)
    or a 3-vector.
    """
    if isinstance(k, ModeIndex):
        k = k.k()
    r = frame_rotation(_khat(k))
    cols = []
    for sign in (1, -1):
        u = np.zeros(4, dtype=complex)
        u[:3] = r @ (np.array([1.0, sign * 1j, 0.0]) / np.sqrt(2))
        cols.append(u)
    return cols[0], cols[1]


def polarization_column(k, helicity):
    helicity = Helicity.parse(helicity)
    if helicity is Helicity.SCALAR:
        return np.array([0, 0, 0, 1], dtype=complex)
    khat = _khat(k)
    if helicity is Helicity.LONGITUDINAL:
        return np.concatenate([khat, [0.0]]).astype(complex)
    plus, minus = transverse_unit_vectors(k)
    return plus if helicity is Helicity.PLUS else minus


def propagator(k, t):
    """``exp(-K t)`` for ``K = sum_j k_j Lambda_j``, using ``K^2 = -|k|^2``."""
    kmat = generator_matrix(k)
    kn = np.linalg.norm(k)
    if kn == 0:
        return np.eye(4, dtype=complex)
    return np.cos(kn * t) * np.eye(4) - np.sin(kn * t) / kn * kmat


def plane_wave(spec, grid, time=0.0):
    """Evaluate a plane-wave solution of the free equation on ``grid``.

    Helicity +-1 columns require the pairing ``helicity = -alpha`` and give
    ``C u exp(i(k.x - w t))`` with ``w = alpha |k|``. Zero-helicity columns are
    not eigenvectors of the propagator; they are evolved exactly with
    ``exp(-K t)`` so the result solves the free equation at every time.
    """
    spec.mode.check_on(grid)
    k = spec.mode.k(grid.box_length)
    hel = spec.helicity
    if hel is not Helicity.SCALAR and spec.mode.is_zero():
        raise ZeroWavevector(f"helicity {hel.value} needs a nonzero wavevector")
    u = polarization_column(k, hel)
    if hel.sign:
        if hel.sign != -spec.alpha:
            raise ValueError(
                f"helicity {hel.value} pairs with alpha = {-hel.sign}, got alpha = {spec.alpha}"
            )
        col = u * np.exp(-1j * spec.alpha * np.linalg.norm(k) * time)
    else:
        col = propagator(k, time) @ u
    x, y, z = grid.coords()
    phase = np.exp(1j * (k[0] * x + k[1] * y + k[2] * z))
    return SpinorField(grid, spec.amplitude * col[:, None, None, None] * phase[None])


def _unit_k(grid):
    k = grid.wavevectors
    kn = np.sqrt(np.sum(k ** 2, axis=0))
    safe = np.where(kn == 0, 1.0, kn)
    return k / safe, kn == 0


@dataclass(frozen=True, eq=False)
class HelicityParts:
    plus: SpinorField
    minus: SpinorField
    longitudinal: SpinorField
    scalar: SpinorField

    def total(self):
        return self.plus + self.minus + self.longitudinal + self.scalar

    def norms(self):
        return {"plus": self.plus.norm(), "minus": self.minus.norm(),
                "longitudinal": self.longitudinal.norm(), "scalar": self.scalar.norm()}


def helicity_decompose(s):
    """Split a spinor field into helicity +1, -1, longitudinal and scalar parts.

    Per mode ``P_+- = (T +- h)/2`` on the vector part, where ``T`` is the
    transverse projector and ``h u = i khat x u``; the k = 0 vector content
    is longitudinal by convention.
    """
    grid = s.grid
    amp = forward_transform(s).amplitudes
    khat, zero = _unit_k(grid)
    vec = amp[:3]
    par = np.sum(khat * vec, axis=0)
    longitudinal = khat * par
    longitudinal = np.where(zero[None], vec, longitudinal)
    transverse = vec - longitudinal
    hel = 1j * np.cross(khat, transverse, axis=0)
    zeros1 = np.zeros((1, *grid.shape), dtype=complex)
    zeros3 = np.zeros((3, *grid.shape), dtype=complex)

    def back(vec3, fourth):
        return inverse_transform(ModeAmplitudes(grid, np.concatenate([vec3, fourth])))

    return HelicityParts(
        plus=back((transverse + hel) / 2, zeros1),
        minus=back((transverse - hel) / 2, zeros1),
        longitudinal=back(longitudinal, zeros1),
        scalar=back(zeros3, amp[3:4]),
    )


def transverse_project(s):
    """Remove the longitudinal and scalar buckets (projector, idempotent)."""
    parts = helicity_decompose(s)
    return parts.plus + parts.minus


def transversality_per_mode(s):
    """Max over modes of ``|k . phi_hat|`` and ``|xi_hat|`` (the plane-wave transversality)."""
    amp = forward_transform(s).amplitudes
    kdot = np.sum(s.grid.wavevectors * amp[:3], axis=0)
    return float(max(np.max(np.abs(kdot)), np.max(np.abs(amp[3]))))


def mode_basis(k, box_length=2 * np.pi):
    """Polarization bases eps, eps_bar, v, v_bar for one nonzero wavevector.

    ``eps_1, eps_2`` are the real transverse frame vectors, ``eps_3 = (khat, 0)``,
    ``eps_4 = (0, 0, 0, 1)``; ``eps_bar`` flips the sign of ``eps_4``.
    ``v = -(1/(sqrt2 |k|)) k_mu Lambda_mu^{-1} eps`` with ``k_4 = i |k|``.
    """
    if isinstance(k, ModeIndex):
        k = k.k(box_length)
    k = np.asarray(k, dtype=float)
    khat = _khat(k)
    r = frame_rotation(khat)
    eps = np.zeros((4, 4), dtype=complex)
    eps[:3, 0] = r[:, 0]
    eps[:3, 1] = r[:, 1]
    eps[:3, 2] = khat
    eps[3, 3] = 1.0
    eps_bar = eps.copy()
    eps_bar[:, 3] *= -1
    kn = np.linalg.norm(k)
    k4 = np.concatenate([k, [1j * kn]])
    kl = np.einsum("m,mab->ab", k4, lambda_inverses())
    pref = -1.0 / (np.sqrt(2) * kn)
    return ModeBasis(k=k, eps=eps, eps_bar=eps_bar, v=pref * kl @ eps, v_bar=pref * kl @ eps_bar)


def dump_modes(s, tol=1e-12):
    """Plane-wave content of a field as JSON-ready records.

    Each nonzero mode contributes up to four records (helicity +1, -1,
    longitudinal, scalar) whose plane waves at ``t = 0`` sum back to ``s``.
    Transverse records carry ``alpha = -helicity``; zero-helicity records
    carry ``alpha = 1`` (unused by :func:`plane_wave`).
    """
    grid = s.grid
    amp = forward_transform(s).amplitudes / np.sqrt(grid.volume)
    mx, my, mz = (np.broadcast_to(m, grid.shape) for m in grid.mode_indices)
    records = []
    order = np.lexsort((mz.ravel(), my.ravel(), mx.ravel()))
    for flat in order:
        idx = np.unravel_index(flat, grid.shape)
        col = amp[(slice(None), *idx)]
        if np.max(np.abs(col)) <= tol:
            continue
        m = (int(mx[idx]), int(my[idx]), int(mz[idx]))
        k = grid.kvector(m)
        entries = []
        if m == (0, 0, 0):
            for c in range(3):
                if abs(col[c]) > tol:
                    # k = 0: no helicity frame; store Cartesian content as a
                    # longitudinal record per axis
                    entries.append(({"m": list(m), "axis": c}, 1, Helicity.LONGITUDINAL, col[c]))
        else:
            for hel in (Helicity.PLUS, Helicity.MINUS, Helicity.LONGITUDINAL):
                c = np.vdot(polarization_column(k, hel), col)
                if abs(c) > tol:
                    entries.append(({"m": list(m)}, -hel.sign if hel.sign else 1, hel, c))
        if abs(col[3]) > tol:
            entries.append(({"m": list(m)}, 1, Helicity.SCALAR, col[3]))
        for base, alpha, hel, c in entries:
            rec = dict(base)
            rec.update(alpha=alpha, helicity=hel.value,
                       amplitude_re=float(np.real(c)), amplitude_im=float(np.imag(c)))
            records.append(rec)
    return records


def field_from_modes(records, grid):
    """Inverse of :func:`dump_modes`: sum the recorded plane waves at ``t = 0``."""
    amp = np.zeros((4, *grid.shape), dtype=complex)
    for rec in records:
        m = tuple(rec["m"])
        slot = (slice(None), *grid.fft_slot(m))
        c = complex(rec["amplitude_re"], rec["amplitude_im"])
        hel = Helicity.parse(rec["helicity"])
        if "axis" in rec:
            col = np.zeros(4, dtype=complex)
            col[rec["axis"]] = 1.0
        else:
            col = polarization_column(grid.kvector(m), hel)
        amp[slot] += c * col
    return inverse_transform(ModeAmplitudes(grid, amp * np.sqrt(grid.volume)))
