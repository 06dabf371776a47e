# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled periodic centered-difference stencils.

Arrays are laid out component-major, ``[component, z, y, x]``. Both kernels
match :mod:`spinor_em._kernels_py` to roundoff.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def lambda_grad_centered(double complex[:, :, :, ::1] phi,
                         double[:, :, ::1] lam,
                         double h):
    """Return sum_j lam[j] @ D_j phi with 2nd-order periodic differences.

    Zero entries of ``lam`` are skipped; each Lambda_j has one nonzero per row.
    """
    cdef Py_ssize_t nc = phi.shape[0]
    cdef Py_ssize_t nz = phi.shape[1], ny = phi.shape[2], nx = phi.shape[3]
    cdef Py_ssize_t a, b, j, t, z, y, x, zp, zm, yp, ym, xp, xm
    cdef double inv2h = 0.5 / h
    cdef double complex acc
    # sparse terms: (a, b, j, coefficient)
    terms = [(a_, b_, j_, lam[j_, a_, b_]) for a_ in range(nc) for j_ in range(3)
             for b_ in range(nc) if lam[j_, a_, b_] != 0.0]
    cdef Py_ssize_t nt = len(terms)
    cdef Py_ssize_t[:, ::1] idx = np.array([[t_[0], t_[1], t_[2]] for t_ in terms] or [[0, 0, 0]],
                                           dtype=np.intp)
    cdef double[::1] coef = np.array([t_[3] for t_ in terms] or [0.0], dtype=np.float64)
    out_arr = np.zeros((nc, nz, ny, nx), dtype=np.complex128)
    cdef double complex[:, :, :, ::1] out = out_arr
    for z in range(nz):
        zp = z + 1 if z + 1 < nz else 0
        zm = z - 1 if z > 0 else nz - 1
        for y in range(ny):
            yp = y + 1 if y + 1 < ny else 0
            ym = y - 1 if y > 0 else ny - 1
            for x in range(nx):
                xp = x + 1 if x + 1 < nx else 0
                xm = x - 1 if x > 0 else nx - 1
                for t in range(nt):
                    a = idx[t, 0]
                    b = idx[t, 1]
                    j = idx[t, 2]
                    if j == 0:
                        acc = phi[b, z, y, xp] - phi[b, z, y, xm]
                    elif j == 1:
                        acc = phi[b, z, yp, x] - phi[b, z, ym, x]
                    else:
                        acc = phi[b, zp, y, x] - phi[b, zm, y, x]
                    out[a, z, y, x] = out[a, z, y, x] + coef[t] * inv2h * acc
    return out_arr


def curl_centered(double[:, :, :, ::1] f, double h):
    """Return the periodic centered-difference curl of a real 3-vector field."""
    cdef Py_ssize_t nz = f.shape[1], ny = f.shape[2], nx = f.shape[3]
    cdef Py_ssize_t z, y, x, zp, zm, yp, ym, xp, xm
    cdef double inv2h = 0.5 / h
    out_arr = np.empty((3, nz, ny, nx), dtype=np.float64)
    cdef double[:, :, :, ::1] out = out_arr
    for z in range(nz):
        zp = z + 1 if z + 1 < nz else 0
        zm = z - 1 if z > 0 else nz - 1
        for y in range(ny):
            yp = y + 1 if y + 1 < ny else 0
            ym = y - 1 if y > 0 else ny - 1
            for x in range(nx):
                xp = x + 1 if x + 1 < nx else 0
                xm = x - 1 if x > 0 else nx - 1
                out[0, z, y, x] = ((f[2, z, yp, x] - f[2, z, ym, x])
                                   - (f[1, zp, y, x] - f[1, zm, y, x])) * inv2h
                out[1, z, y, x] = ((f[0, zp, y, x] - f[0, zm, y, x])
                                   - (f[2, z, y, xp] - f[2, z, y, xm])) * inv2h
                out[2, z, y, x] = ((f[1, z, y, xp] - f[1, z, y, xm])
                                   - (f[0, z, yp, x] - f[0, z, ym, x])) * inv2h
    return out_arr
