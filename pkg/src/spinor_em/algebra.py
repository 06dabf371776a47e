"""Fixed 4x4 matrices of the spinor field equation and their identities.

Index conventions: matrix rows/columns 0..3 correspond to spinor components
``(phi_1, phi_2, phi_3, xi)``. Four-vectors use ``x_4 = i t`` so the fourth
component of a Lorentz matrix row/column carries the factors of ``i``.
"""
import numpy as np
from scipy.linalg import expm

from .errors import InvalidLorentz, ZeroDirection

EXACT_TOL = 1e-14
EXP_TOL = 1e-12

_LAMBDA = np.array(
    [
        [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    ],
    dtype=complex,
)

_SPIN = np.array(
    [
        [[0, 0, 0, 0], [0, 0, -1j, 0], [0, 1j, 0, 0], [0, 0, 0, 0]],
        [[0, 0, 1j, 0], [0, 0, 0, 0], [-1j, 0, 0, 0], [0, 0, 0, 0]],
        [[0, -1j, 0, 0], [1j, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    ],
    dtype=complex,
)

_DELTA = np.array(
    [
        [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    ],
    dtype=complex,
)

for _m in (_LAMBDA, _SPIN, _DELTA):
    _m.setflags(write=False)

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0


def lambda_matrices():
    """Return the stack ``(4, 4, 4)`` of Lambda_1..Lambda_4 (a copy)."""
    return _LAMBDA.copy()


def lambda_inverses():
    return np.array([np.linalg.inv(m) for m in _LAMBDA])


def spin_matrices():
    """Return the stack ``(3, 4, 4)`` of spin-1 matrices s_1..s_3."""
    return _SPIN.copy()


def isospin_matrices():
    """Return the stack ``(3, 4, 4)`` of Delta_1..Delta_3.

    The isospin generators are ``(i/2) Delta_i``.
    """
    return _DELTA.copy()


def isospin_generators():
    return 0.5j * _DELTA


def _unit(v, name="direction"):
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > EXP_TOL:
        raise ZeroDirection(f"{name} must be a unit 3-vector, got {v!r}")
    return v


def helicity_operator(khat):
    """``h = khat . s`` for a unit propagation direction."""
    khat = _unit(khat, "khat")
    return np.einsum("i,iab->ab", khat, _SPIN)


def generator_matrix(k):
    """``K = sum_j k_j Lambda_j`` (real antisymmetric, ``K^2 = -|k|^2``)."""
    return np.einsum("j,jab->ab", np.asarray(k, dtype=float), _LAMBDA[:3])


def rotation_rep(axis, angle):
    """Spinor rotation ``exp(-i angle axis.s)``; trivial on the fourth component."""
    axis = _unit(axis, "axis")
    return expm(-1j * angle * np.einsum("i,iab->ab", axis, _SPIN))


def rotation_matrix3(axis, angle):
    """Classical active rotation (Rodrigues formula), used as an oracle."""
    n = _unit(axis, "axis")
    cross = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(angle) * cross + (1 - np.cos(angle)) * cross @ cross


def lorentz_rotation(axis, angle):
    """4x4 Lorentz matrix for a spatial rotation."""
    a = np.eye(4, dtype=complex)
    a[:3, :3] = rotation_matrix3(axis, angle)
    return a


def lorentz_boost(direction, rapidity):
    """4x4 Lorentz matrix (``x_4 = i t``) of a boost with velocity ``tanh(rapidity) * direction``.

    Along z this is ``a33 = cosh, a34 = i sinh, a43 = -i sinh, a44 = cosh``.
    """
    n = _unit(direction)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    a = np.eye(4, dtype=complex)
    a[:3, :3] += (ch - 1) * np.outer(n, n)
    a[:3, 3] = 1j * sh * n
    a[3, :3] = -1j * sh * n
    a[3, 3] = ch
    return a


def check_lorentz(a, tol=EXP_TOL):
    a = np.asarray(a, dtype=complex)
    if a.shape != (4, 4):
        raise InvalidLorentz(f"Lorentz matrix must be 4x4, got shape {a.shape}")
    dev = np.max(np.abs(a.T @ a - np.eye(4)))
    if not np.isfinite(dev) or dev > tol:
        raise InvalidLorentz(f"a^T a deviates from identity by {dev:.3g}")
    return a


def spinor_rep(a):
    """Literal evaluation of ``T = -(sum_mu a_{mu4} Lambda_mu^{-1}) a``.

    The trailing ``a`` acts as a 4x4 matrix on the spinor column. This is a
    hypothesis checked against :func:`rotation_rep` and the classical boost
    oracle, not ground truth.
    """
    a = check_lorentz(a)
    return -np.einsum("m,mab->ab", a[:, 3], lambda_inverses()) @ a


def _comm(x, y):
    return x @ y - y @ x


def algebra_report():
    """Max absolute deviation of every matrix identity, keyed by identity name."""
    lam, s, d = _LAMBDA, _SPIN, _DELTA
    eye = np.eye(4)
    iso = 0.5j * d
    report = {}

    report["lambda-unitary"] = max(np.max(np.abs(m.conj().T @ m - eye)) for m in lam)
    report["lambda-antisymmetric"] = max(np.max(np.abs(m + m.T)) for m in lam[:3])
    report["lambda-real"] = float(np.max(np.abs(lam.imag)))
    report["lambda4-minus-identity"] = float(np.max(np.abs(lam[3] + eye)))
    report["lambda-quaternion"] = max(
        max(np.max(np.abs(m @ m + eye)) for m in lam[:3]),
        max(np.max(np.abs(lam[i] @ lam[j] - lam[k])) for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1))),
    )

    report["spin-hermitian"] = max(np.max(np.abs(m - m.conj().T)) for m in s)
    report["spin-fourth-row-col-zero"] = float(np.max(np.abs(s[:, 3, :])) + np.max(np.abs(s[:, :, 3])))
    dev = 0.0
    for i in range(3):
        for j in range(3):
            expected = 1j * np.einsum("k,kab->ab", LEVI_CIVITA[i, j], s)
            dev = max(dev, np.max(np.abs(_comm(s[i], s[j]) - expected)))
    report["spin-commutator"] = dev
    casimir = np.einsum("iab,ibc->ac", s, s)
    report["spin-casimir"] = float(np.max(np.abs(np.sort(np.linalg.eigvalsh(casimir)) - [0, 2, 2, 2])))

    report["isospin-antisymmetric"] = max(np.max(np.abs(m + m.T)) for m in d)
    report["isospin-unitary"] = max(np.max(np.abs(m.conj().T @ m - eye)) for m in d)
    report["isospin-product"] = float(np.max(np.abs(d[0] @ d[1] - d[2])))
    dev = 0.0
    for i in range(3):
        for j in range(3):
            expected = 1j * np.einsum("k,kab->ab", LEVI_CIVITA[i, j], iso)
            dev = max(dev, np.max(np.abs(_comm(iso[i], iso[j]) - expected)))
    report["isospin-su2"] = dev
    report["isospin-lambda-commute"] = max(np.max(np.abs(_comm(x, y))) for x in lam for y in d)

    rng = np.random.default_rng(0)
    dev = 0.0
    for _ in range(16):
        k = rng.normal(size=3)
        khat = k / np.linalg.norm(k)
        dev = max(dev, np.max(np.abs(_comm(helicity_operator(khat), generator_matrix(k)))))
    report["helicity-commutes-generator"] = dev

    return {name: float(value) for name, value in report.items()}
