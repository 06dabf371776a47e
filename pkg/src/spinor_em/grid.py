"""Periodic cubic grid and derivative operators.

Field arrays are stored component-major as ``[component, z, y, x]`` so the
spatial direction ``j = 0, 1, 2`` (x, y, z) lives on array axis ``-1, -2, -3``.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft

from .kernels import fft_workers

SCHEMES = ("spectral", "centered2")


def axis_of(j):
    """Array axis (negative) holding spatial direction ``j``."""
    return -1 - j


@dataclass(frozen=True)
class GridSpec:
    n: int
    box_length: float = 2 * np.pi

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 4 or self.n % 2:
            raise ValueError(f"grid size must be an even integer >= 4, got {self.n}")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")

    @property
    def spacing(self):
        return self.box_length / self.n

    @property
    def shape(self):
        return (self.n, self.n, self.n)

    @property
    def volume(self):
        return self.box_length ** 3

    @property
    def cell_volume(self):
        return self.spacing ** 3

    def coords(self):
        """Site coordinates ``(x, y, z)``, each broadcastable to ``shape``."""
        r = np.arange(self.n) * self.spacing
        return r[None, None, :], r[None, :, None], r[:, None, None]

    def position_vectors(self):
        """``(3, n, n, n)`` array of site positions."""
        x, y, z = self.coords()
        return np.stack(np.broadcast_arrays(x, y, z))

    @cached_property
    def mode_indices(self):
        """Integer mode numbers ``(mx, my, mz)`` in FFT order, range (-n/2, n/2]."""
        m = np.fft.fftfreq(self.n, d=1.0 / self.n).round().astype(int)
        m[m == -self.n // 2] = self.n // 2
        return m[None, None, :], m[None, :, None], m[:, None, None]

    @cached_property
    def wavevectors(self):
        """``(3, n, n, n)`` physical wavevectors ``2 pi m / L`` in FFT order."""
        scale = 2 * np.pi / self.box_length
        mx, my, mz = self.mode_indices
        return np.stack(np.broadcast_arrays(mx * scale, my * scale, mz * scale)).astype(float)

    @cached_property
    def derivative_wavevectors(self):
        """Wavevectors with the Nyquist plane zeroed, for odd-order derivatives."""
        k = self.wavevectors.copy()
        mx, my, mz = self.mode_indices
        for j, m in enumerate((mx, my, mz)):
            k[j] = np.where(np.broadcast_to(m, self.shape) == self.n // 2, 0.0, k[j])
        return k

    def kvector(self, m):
        return 2 * np.pi * np.asarray(m, dtype=float) / self.box_length

    def fft_slot(self, m):
        """Array index ``(iz, iy, ix)`` of mode ``m = (mx, my, mz)``."""
        mx, my, mz = (int(v) for v in m)
        half = self.n // 2
        for v in (mx, my, mz):
            if not -half < v <= half:
                raise ValueError(f"mode component {v} outside (-{half}, {half}]")
        return (mz % self.n, my % self.n, mx % self.n)


def fftn(f):
    return sfft.fftn(f, axes=(-3, -2, -1), workers=fft_workers())


def ifftn(f):
    return sfft.ifftn(f, axes=(-3, -2, -1), workers=fft_workers())


def derivative(f, j, grid, scheme="spectral"):
    """First derivative along direction ``j`` of a periodic field (any leading axes)."""
    if scheme == "spectral":
        k = grid.derivative_wavevectors[j]
        out = ifftn(1j * k * fftn(f))
        return out if np.iscomplexobj(f) else out.real
    if scheme == "centered2":
        ax = axis_of(j)
        return (np.roll(f, -1, axis=ax) - np.roll(f, 1, axis=ax)) / (2 * grid.spacing)
    raise ValueError(f"unknown derivative scheme {scheme!r}; expected one of {SCHEMES}")


def gradient(f, grid, scheme="spectral"):
    return np.stack([derivative(f, j, grid, scheme) for j in range(3)])


def divergence(v, grid, scheme="spectral"):
    return sum(derivative(v[j], j, grid, scheme) for j in range(3))


def curl(v, grid, scheme="spectral"):
    d = lambda c, j: derivative(v[c], j, grid, scheme)
    return np.stack([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)])


def laplacian(f, grid, scheme="spectral"):
    """Second derivative sum; ``centered2`` uses the compact 3-point stencil."""
    if scheme == "spectral":
        k2 = np.sum(grid.wavevectors ** 2, axis=0)
        out = ifftn(-k2 * fftn(f))
        return out if np.iscomplexobj(f) else out.real
    if scheme == "centered2":
        h2 = grid.spacing ** 2
        out = -6.0 * f
        for j in range(3):
            ax = axis_of(j)
            out = out + np.roll(f, -1, axis=ax) + np.roll(f, 1, axis=ax)
        return out / h2
    raise ValueError(f"unknown derivative scheme {scheme!r}; expected one of {SCHEMES}")


def integrate(f, grid):
    """Riemann sum over the box (exact for band-limited periodic integrands)."""
    return np.sum(f, axis=(-3, -2, -1)) * grid.cell_volume
