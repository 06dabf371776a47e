"""Truncated Fock space of the combined field: ladder operators, H, P, b, physical states.

Every (mode, polarization) pair is a bosonic slot. The basis holds all
occupation vectors with total occupation <= cutoff; creation out of the top
shell maps to zero, so bosonic commutators are exact only on the shell-safe
subspace (total occupation <= cutoff - 1).

Operators are dense ``ndarray`` up to dimension 64 and ``scipy.sparse`` CSR
above that.
"""
from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.sparse as sp
from scipy.linalg import null_space

from .errors import DimensionMismatch, EmptyModeSet, UnknownMode, ZeroNorm
from .spectral import ModeIndex, mode_basis

POLARIZATIONS = (1, 2, 3, 4)
SPARSE_ABOVE = 64


@dataclass(frozen=True)
class ModeSet:
    modes: tuple
    box_length: float = 2 * np.pi

    def __post_init__(self):
        modes = [m if isinstance(m, ModeIndex) else ModeIndex(m) for m in self.modes]
        if any(m.is_zero() for m in modes):
            raise ValueError("the zero mode carries no quanta")
        if len({m.m for m in modes}) != len(modes):
            raise ValueError("duplicate modes in mode set")
        object.__setattr__(self, "modes", tuple(sorted(modes, key=lambda m: m.m)))

    @property
    def volume(self):
        return self.box_length ** 3

    @property
    def slots(self):
        return [(m, lam) for m in self.modes for lam in POLARIZATIONS]

    def k(self, mode):
        return _as_mode(mode).k(self.box_length)

    def symmetric(self):
        keys = {m.m for m in self.modes}
        return all(tuple(-v for v in m) in keys for m in keys)


def _as_mode(mode):
    return mode if isinstance(mode, ModeIndex) else ModeIndex(mode)


def _compositions(total, parts):
    """Occupation vectors of ``parts`` slots summing to ``total``, lexicographically descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@dataclass(frozen=True, eq=False)
class FockBasis:
    mode_set: ModeSet
    cutoff: int
    states: np.ndarray
    _index: dict = field(repr=False)

    @property
    def dim(self):
        return len(self.states)

    @property
    def basis_id(self):
        modes = ";".join(",".join(str(v) for v in m.m) for m in self.mode_set.modes)
        return f"modes[{modes}]|L={self.mode_set.box_length!r}|cutoff={self.cutoff}"

    def index(self, occupations):
        return self._index[tuple(occupations)]

    def slot(self, mode, lam):
        mode = _as_mode(mode)
        if lam not in POLARIZATIONS:
            raise UnknownMode(f"polarization {lam} not in {POLARIZATIONS}")
        for i, m in enumerate(self.mode_set.modes):
            if m.m == mode.m:
                return 4 * i + (lam - 1)
        raise UnknownMode(f"mode {mode.m} not in basis")

    def vector(self, occupations=None, amplitudes=None):
        """State vector; ``occupations`` selects a single basis state."""
        out = np.zeros(self.dim, dtype=complex)
        if occupations is not None:
            out[self.index(occupations)] = 1.0
        if amplitudes is not None:
            for occ, c in amplitudes.items():
                out[self.index(occ)] += c
        return out

    def vacuum(self):
        out = np.zeros(self.dim, dtype=complex)
        out[0] = 1.0
        return out

    def totals(self):
        return self.states.sum(axis=1)

    def safe_mask(self):
        return self.totals() <= self.cutoff - 1


def build_basis(ms, cutoff):
    """Enumerate occupation vectors with total <= cutoff; the vacuum is index 0."""
    if not isinstance(ms, ModeSet):
        ms = ModeSet(tuple(ms))
    if not ms.modes:
        raise EmptyModeSet("mode set is empty")
    if int(cutoff) != cutoff or cutoff < 0:
        raise ValueError(f"cutoff must be a nonnegative integer, got {cutoff}")
    nslots = 4 * len(ms.modes)
    states = [occ for total in range(cutoff + 1) for occ in _compositions(total, nslots)]
    arr = np.array(states, dtype=np.int64).reshape(len(states), nslots)
    assert len(arr) == comb(cutoff + nslots, nslots)
    return FockBasis(ms, int(cutoff), arr, {occ: i for i, occ in enumerate(states)})


def _finish(rows, cols, vals, dim):
    mat = sp.coo_matrix((np.asarray(vals, dtype=complex), (rows, cols)), shape=(dim, dim)).tocsr()
    return mat if dim > SPARSE_ABOVE else mat.toarray()


def dense(op):
    return op.toarray() if sp.issparse(op) else np.asarray(op)


def identity(basis):
    return _finish(range(basis.dim), range(basis.dim), np.ones(basis.dim), basis.dim)


def ladder(basis, mode, lam, kind="annihilate"):
    """Bosonic ladder operator for slot ``(mode, lam)``; ``kind`` is annihilate or create."""
    s = basis.slot(mode, lam)
    rows, cols, vals = [], [], []
    for i, occ in enumerate(basis.states):
        n = occ[s]
        if n == 0:
            continue
        lower = occ.copy()
        lower[s] -= 1
        rows.append(basis.index(lower))
        cols.append(i)
        vals.append(np.sqrt(n))
    if kind == "annihilate":
        return _finish(rows, cols, vals, basis.dim)
    if kind == "create":
        return _finish(cols, rows, vals, basis.dim)
    raise ValueError(f"kind must be 'annihilate' or 'create', got {kind!r}")


def number(basis, mode, lam):
    s = basis.slot(mode, lam)
    return _finish(range(basis.dim), range(basis.dim), basis.states[:, s], basis.dim)


def _mode_weights(basis):
    """Per-state ``sum_lam=1,2 (n + 1/2) + n3 - n4`` for each mode, shape ``(dim, n_modes)``."""
    st = basis.states.reshape(basis.dim, -1, 4).astype(float)
    return st[:, :, 0] + st[:, :, 1] + 1.0 + st[:, :, 2] - st[:, :, 3]


def hamiltonian(basis):
    """``H = sum_k |k| [sum_{lam=1,2} (N + 1/2) + N_3 - N_4]`` (zero-point kept)."""
    knorm = np.array([np.linalg.norm(basis.mode_set.k(m)) for m in basis.mode_set.modes])
    diag = _mode_weights(basis) @ knorm
    return _finish(range(basis.dim), range(basis.dim), diag, basis.dim)


def momentum(basis):
    """Three diagonal operators ``P_j = sum_k k_j [...]`` with the same bracket as H."""
    kvec = np.array([basis.mode_set.k(m) for m in basis.mode_set.modes])
    weights = _mode_weights(basis)
    return tuple(_finish(range(basis.dim), range(basis.dim), weights @ kvec[:, j], basis.dim)
                 for j in range(3))


def vacuum_energy(basis):
    return float(sum(np.linalg.norm(basis.mode_set.k(m)) for m in basis.mode_set.modes))


def b_op(basis, mode):
    """``b_k = (a_k3 + i a_k4) / sqrt(2)``."""
    return (ladder(basis, mode, 3) + 1j * ladder(basis, mode, 4)) / np.sqrt(2)


def physical_states(basis, mode_subset=None, tol=1e-10):
    """Orthonormal basis (columns) of the common kernel of ``b_k`` for ``k`` in ``mode_subset``.

    The kernel projector is computed from a null-space solve and then
    re-orthonormalized against the occupation basis in order, so the output
    is deterministic and starts with the vacuum.
    """
    modes = basis.mode_set.modes if mode_subset is None else [_as_mode(m) for m in mode_subset]
    stacked = np.vstack([dense(b_op(basis, m)) for m in modes])
    kernel = null_space(stacked, rcond=tol)
    proj = kernel @ kernel.conj().T
    cols = []
    for i in range(basis.dim):
        v = proj[:, i].copy()
        for c in cols:
            v -= c * np.vdot(c, v)
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
        if len(cols) == kernel.shape[1]:
            break
    out = np.array(cols).T if cols else np.zeros((basis.dim, 0), dtype=complex)
    # tidy roundoff so dumped amplitudes are stable
    out[np.abs(out) < 1e-15] = 0
    return out


def expectation(op, psi):
    """``<psi|op|psi> / <psi|psi>``."""
    psi = np.asarray(psi, dtype=complex)
    if op.shape != (psi.size, psi.size):
        raise DimensionMismatch(f"operator shape {op.shape} vs state dimension {psi.size}")
    norm = np.vdot(psi, psi).real
    if norm == 0:
        raise ZeroNorm("state has zero norm")
    return complex(np.vdot(psi, op @ psi) / norm)


def _phase(basis, mode, x):
    return np.exp(1j * basis.mode_set.k(mode) @ np.asarray(x, dtype=float))


def xi_operator(basis, x):
    """``xi(x) = (i / sqrt(2V)) sum_k sqrt|k| [b_k e^{ik.x} - b_k^+ e^{-ik.x}]``."""
    ms = basis.mode_set
    out = 0
    for m in ms.modes:
        b = b_op(basis, m)
        ph = _phase(basis, m, x)
        out = out + np.sqrt(np.linalg.norm(ms.k(m))) * (b * ph - b.conj().T * np.conj(ph))
    return 1j / np.sqrt(2 * ms.volume) * out


def xi_operator_expectation(basis, psi, x):
    psi = np.asarray(psi, dtype=complex)
    if psi.size != basis.dim:
        raise DimensionMismatch(f"state dimension {psi.size} vs basis {basis.dim}")
    return expectation(xi_operator(basis, x), psi)


def potential_operator(basis, x, mu0=1.0):
    """Four matrices ``A_mu(x)`` from the mode expansion (``A_4 = i V`` is anti-Hermitian)."""
    ms = basis.mode_set
    out = [0, 0, 0, 0]
    for m in ms.modes:
        mb = mode_basis(ms.k(m))
        kn = np.linalg.norm(mb.k)
        ph = _phase(basis, m, x)
        for lam in POLARIZATIONS:
            a = ladder(basis, m, lam)
            ad = ladder(basis, m, lam, "create")
            for mu in range(4):
                out[mu] = out[mu] + (mb.eps[mu, lam - 1] * a * ph + mb.eps_bar[mu, lam - 1] * ad * np.conj(ph)) / np.sqrt(kn)
    pref = np.sqrt(mu0 / (2 * ms.volume))
    return [pref * o for o in out]


def spinor_operator(basis, x):
    """Four matrices ``phi_mu(x) = (i/sqrt(2V)) sum sqrt|k| [v a e^{ikx} - v_bar a^+ e^{-ikx}]``."""
    ms = basis.mode_set
    out = [0, 0, 0, 0]
    for m in ms.modes:
        mb = mode_basis(ms.k(m))
        kn = np.linalg.norm(mb.k)
        ph = _phase(basis, m, x)
        for lam in POLARIZATIONS:
            a = ladder(basis, m, lam)
            ad = ladder(basis, m, lam, "create")
            for mu in range(4):
                out[mu] = out[mu] + np.sqrt(kn) * (mb.v[mu, lam - 1] * a * ph - mb.v_bar[mu, lam - 1] * ad * np.conj(ph))
    return [1j / np.sqrt(2 * ms.volume) * o for o in out]


def field_commutator_mode_sum(ms, r):
    """c-number ``[A_mu(x), pi_nu(x')]`` for ``r = x - x'`` by direct mode summation.

    ``(1/(sqrt2 V)) sum_{k, lam} (eps_mu v_bar_nu e^{ik.r} + eps_bar_mu v_nu e^{-ik.r})``.
    """
    r = np.asarray(r, dtype=float)
    out = np.zeros((4, 4), dtype=complex)
    for m in ms.modes:
        mb = mode_basis(ms.k(m))
        ph = np.exp(1j * mb.k @ r)
        out += mb.eps @ mb.v_bar.T * ph + mb.eps_bar @ mb.v.T * np.conj(ph)
    return out / (np.sqrt(2) * ms.volume)


def discrete_delta(ms, r):
    """``(1/V) sum_k e^{ik.r}`` over the finite mode set."""
    r = np.asarray(r, dtype=float)
    return complex(sum(np.exp(1j * ms.k(m) @ r) for m in ms.modes) / ms.volume)


def commutator_check(basis, positions=None, mu0=1.0, tol=1e-14):
    """Ladder commutators on the shell-safe subspace plus the field-level relation.

    Returns a report dict. ``ladder_exact`` covers ``[a, a^+] = delta`` and
    ``[a, a] = 0`` up to ``tol`` (``sqrt(n)^2`` is not always exactly ``n``); the field-level block compares the
    operator commutator ``[A_mu(x), pi_nu(x')]`` (vacuum element) with direct
    mode summation and with ``i delta_{mu nu} Delta(x - x')``.
    """
    safe = basis.safe_mask()
    slots = basis.mode_set.slots
    ann = [dense(ladder(basis, m, lam)) for m, lam in slots]
    cre = [a.conj().T for a in ann]
    eye = np.eye(basis.dim)
    dev_cc, dev_aa = 0.0, 0.0
    for i in range(len(slots)):
        for j in range(len(slots)):
            c = ann[i] @ cre[j] - cre[j] @ ann[i]
            expected = eye if i == j else 0 * eye
            if safe.any():
                dev_cc = max(dev_cc, float(np.max(np.abs((c - expected)[:, safe]))))
            dev_aa = max(dev_aa, float(np.max(np.abs(ann[i] @ ann[j] - ann[j] @ ann[i]))))
    report = {
        "dim": basis.dim,
        "safe_dim": int(safe.sum()),
        "max_dev_a_adag": dev_cc,
        "max_dev_a_a": dev_aa,
        "ladder_exact": bool(dev_cc < tol and dev_aa < tol),
    }
    if positions is None or basis.cutoff < 1:
        return report
    ms = basis.mode_set
    pi_pref = 1j * np.sqrt(2 / mu0)
    rows = []
    dev_op, dev_delta, dev_eta = 0.0, 0.0, 0.0
    eta = np.diag([1.0, 1.0, 1.0, -1.0])
    for x, xp in positions:
        a_ops = [dense(o) for o in potential_operator(basis, x, mu0)]
        pi_ops = [pi_pref * dense(o) for o in spinor_operator(basis, xp)]
        op_level = np.array([[(a_ops[m] @ pi_ops[n] - pi_ops[n] @ a_ops[m])[0, 0] for n in range(4)]
                             for m in range(4)])
        r = np.asarray(x, float) - np.asarray(xp, float)
        msum = field_commutator_mode_sum(ms, r)
        delta = discrete_delta(ms, r)
        dev_op = max(dev_op, float(np.max(np.abs(op_level - msum))))
        dev_delta = max(dev_delta, float(np.max(np.abs(msum - 1j * delta * np.eye(4)))))
        dev_eta = max(dev_eta, float(np.max(np.abs(msum - 1j * delta * eta))))
        rows.append({"x": list(map(float, x)), "x_prime": list(map(float, xp)),
                     "delta": [delta.real, delta.imag],
                     "diagonal": [[complex(msum[m, m]).real, complex(msum[m, m]).imag] for m in range(4)]})
    report["field_level"] = {
        "mode_set_symmetric": ms.symmetric(),
        "operator_vs_mode_sum": dev_op,
        "max_dev_vs_i_delta": dev_delta,
        "max_dev_vs_i_eta": dev_eta,
        "samples": rows,
    }
    return report


def operator_dump(op, basis, tol=0.0):
    """JSON-ready ``{basis_id, dim, triplets: [[row, col, re, im], ...]}``."""
    coo = sp.coo_matrix(op)
    order = np.lexsort((coo.col, coo.row))
    trip = [[int(coo.row[i]), int(coo.col[i]), float(coo.data[i].real), float(coo.data[i].imag)]
            for i in order if abs(coo.data[i]) > tol]
    return {"basis_id": basis.basis_id, "dim": basis.dim, "triplets": trip}


def state_dump(psi, basis, tol=1e-14):
    """Occupation vectors with nonzero amplitude."""
    return [{"occupations": [int(v) for v in basis.states[i]], "re": float(psi[i].real), "im": float(psi[i].imag)}
            for i in range(basis.dim) if abs(psi[i]) > tol]
