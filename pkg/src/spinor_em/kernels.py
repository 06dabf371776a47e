"""Backend selection for the hot stencil kernels.

The compiled extension is used when it was built; otherwise the numpy
fallback is used. Set ``SPINOR_EM_BACKEND=python`` to force the fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("SPINOR_EM_BACKEND", "").lower() != "python":
    try:
        from . import _kernels_ext as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py


def lambda_grad_centered(phi, lam, h):
    """Apply ``sum_j lam[j] D_j`` to a ``(4, n, n, n)`` complex field.

    ``lam`` is a real ``(3, 4, 4)`` stack; ``D_j`` is the periodic 2nd-order
    centered difference along x, y, z.
    """
    phi = np.ascontiguousarray(phi, dtype=np.complex128)
    lam = np.ascontiguousarray(np.real(lam), dtype=np.float64)
    return _impl.lambda_grad_centered(phi, lam, float(h))


def curl_centered(f, h):
    """Periodic centered-difference curl of a real ``(3, n, n, n)`` field."""
    f = np.ascontiguousarray(f, dtype=np.float64)
    return _impl.curl_centered(f, float(h))


def fft_workers():
    """Worker count for scipy.fft, capped by ``SPINOR_EM_THREADS``."""
    value = os.environ.get("SPINOR_EM_THREADS")
    if value is None:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        return 1
