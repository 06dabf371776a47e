"""Pure-numpy versions of the stencil kernels (fallback backend)."""
import numpy as np

# array axis holding spatial direction j = 0 (x), 1 (y), 2 (z)
_AXIS = (3, 2, 1)


def _cdiff(f, j, h):
    ax = _AXIS[j]
    return (np.roll(f, -1, axis=ax) - np.roll(f, 1, axis=ax)) / (2.0 * h)


def lambda_grad_centered(phi, lam, h):
    phi = np.asarray(phi, dtype=np.complex128)
    out = np.zeros_like(phi)
    for j in range(3):
        out += np.einsum("ab,b...->a...", lam[j], _cdiff(phi, j, h))
    return out


def curl_centered(f, h):
    f = np.asarray(f, dtype=np.float64)
    d = lambda c, j: (np.roll(f[c], -1, axis=_AXIS[j] - 1)
                      - np.roll(f[c], 1, axis=_AXIS[j] - 1)) / (2.0 * h)
    return np.stack([
        d(2, 1) - d(1, 2),
        d(0, 2) - d(2, 0),
        d(1, 0) - d(0, 1),
    ])
