"""Verification scenarios shared by the CLI and the acceptance tests.

Each ``audit_*`` function runs one self-contained check and returns an
:class:`AuditResult`: a pass flag, a flat dict of metrics, and optional
tables (header, rows) for CSV output. Randomized inputs come from seeded
generators, so results are reproducible.
"""
import time
from dataclasses import dataclass, field

import numpy as np

from . import covariance as cov
from . import fock
from .algebra import algebra_report, helicity_operator, rotation_rep
from .canonical import conjugate_momentum, divergence_residual, hamiltonian_density, isospin_currents
from .dynamics import (
    EvolutionConfig,
    OscillatingDipole,
    coulomb_potential,
    evolve,
    evolve_exact,
    evolve_potential_exact,
    kg_residual,
    maxwell_reference_step,
    potential_time_derivatives,
    step_fd,
)
from .fields import (
    EMField,
    PotentialField,
    classical_energy_density,
    classical_poynting,
    four_current_flux,
    spinor_from_eb,
    spinor_from_potential,
)
from .grid import GridSpec, integrate
from .spectral import Helicity, ModeIndex, PlaneWaveSpec, plane_wave, polarization_column


@dataclass
class AuditResult:
    name: str
    passed: bool
    metrics: dict
    tables: dict = field(default_factory=dict)
    seconds: float = 0.0

    def summary(self):
        return {"name": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "metrics": _jsonable(self.metrics)}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _order(coarse, fine):
    return float(np.log2(coarse / fine)) if fine > 0 and coarse > 0 else float("nan")


# ---------------------------------------------------------------- random data

def _band_modes(mmax):
    r = range(-mmax, mmax + 1)
    return [np.array((a, b, c)) for a in r for b in r for c in r if (a, b, c) != (0, 0, 0)]


def random_transverse_em(grid, seed=0, mmax=2, amplitude=1.0):
    """Band-limited real (E, B) with every Fourier mode transverse.

    Defined mode by mode in the continuum, so the same seed gives the same
    continuous field on every grid with ``n > 2 * mmax``.
    """
    rng = np.random.default_rng(seed)
    pts = grid.position_vectors()
    e = np.zeros((3, *grid.shape))
    b = np.zeros((3, *grid.shape))
    two_pi_l = 2 * np.pi / grid.box_length
    for m in _band_modes(mmax):
        k = two_pi_l * m
        khat = k / np.linalg.norm(k)
        phase = np.einsum("j,j...->...", k, pts)
        weight = amplitude / np.dot(m, m)
        for target in (e, b):
            c = rng.normal(size=3) + 1j * rng.normal(size=3)
            c -= khat * (khat @ c)
            target += weight * (c.real[:, None, None, None] * np.cos(phase)
                                - c.imag[:, None, None, None] * np.sin(phase))
    return EMField(grid, e, b)


def random_potential_data(grid, seed=0, mmax=2):
    """Random band-limited ``A, V, dA/dt, dV/dt`` (no constraints)."""
    rng = np.random.default_rng(seed)
    pts = grid.position_vectors()
    out = np.zeros((8, *grid.shape))
    two_pi_l = 2 * np.pi / grid.box_length
    for m in _band_modes(mmax):
        phase = np.einsum("j,j...->...", two_pi_l * m, pts)
        c = (rng.normal(size=8) + 1j * rng.normal(size=8)) / np.dot(m, m)
        out += c.real[:, None, None, None] * np.cos(phase) - c.imag[:, None, None, None] * np.sin(phase)
    out += rng.normal(size=8)[:, None, None, None] * 0.1
    return PotentialField(grid, out[:3], out[3]), out[4:7], out[7]


def _random_modes(rng, count, mmax):
    out = []
    while len(out) < count:
        m = tuple(int(v) for v in rng.integers(-mmax, mmax + 1, size=3))
        if m != (0, 0, 0):
            out.append(m)
    return out


def make_source(grid, spec):
    """Build a Source from a config descriptor (``None`` or ``{"type": "none"|"dipole", ...}``)."""
    if not spec or spec.get("type", "none") == "none":
        return None
    if spec["type"] == "dipole":
        return OscillatingDipole(grid, amplitude=spec.get("amplitude", 1.0),
                                 direction=tuple(spec.get("direction", (0.0, 0.0, 1.0))),
                                 omega=spec.get("omega", 1.0), sharpness=spec.get("sharpness", 2.0))
    raise ValueError(f"unknown source type {spec['type']!r}")


# ---------------------------------------------------------------- 1: algebra

@timed
def audit_algebra(tol=1e-14):
    report = algebra_report()
    worst = max(report.values())
    return AuditResult("algebra", bool(worst < tol), {"max_deviation": worst, "identities": report})


# ---------------------------------------------------------------- 2: equivalence

def fd_vs_maxwell(n, steps, cfl=0.5, seed=0, mmax=2, mu0=1.0, source=None, box_length=2 * np.pi):
    """Evolve identical transverse data with both solvers; relative L2 gap per step."""
    grid = GridSpec(n, box_length)
    f = random_transverse_em(grid, seed, mmax)
    s = spinor_from_eb(f, mu0)
    src = make_source(grid, source)
    dt = cfl * grid.spacing
    series = [(0.0, 0.0)]
    for i in range(steps):
        t = i * dt
        s = step_fd(s, src, dt, mu0, t, cfl)
        f = maxwell_reference_step(f, src, dt, mu0, t, cfl)
        ref = spinor_from_eb(f, mu0).phi
        series.append(((i + 1) * dt, float(np.linalg.norm(s.phi - ref) / np.linalg.norm(ref))))
    return series


def exact_vs_analytic(seed=0, n=16, count=6, times=(0.37, 1.9, 12.5)):
    """Max error of spectral evolution against closed-form plane waves."""
    rng = np.random.default_rng(seed)
    grid = GridSpec(n)
    worst = 0.0
    for m in _random_modes(rng, count, 4):
        for alpha in (1, -1):
            hel = Helicity.MINUS if alpha == 1 else Helicity.PLUS
            spec = PlaneWaveSpec(ModeIndex(m), alpha, hel, complex(rng.normal(), rng.normal()))
            start = plane_wave(spec, grid, 0.0)
            for t in times:
                diff = evolve_exact(start, t).phi - plane_wave(spec, grid, t).phi
                worst = max(worst, float(np.max(np.abs(diff))))
    return worst


@timed
def audit_equivalence(n=16, steps=100, cfl=0.5, seed=0, mmax=2, mu0=1.0, source=None,
                      order_band=(1.75, 2.25), analytic_tol=1e-10, symbolic=True, box_length=2 * np.pi):
    """Symbolic expansion, two-resolution FD-vs-Maxwell study, spectral-vs-analytic."""
    metrics, tables = {}, {}
    ok = True
    if symbolic:
        from .symbolic import maxwell_equivalence

        checks = maxwell_equivalence()
        metrics["symbolic"] = checks
        ok &= all(checks.values())
    gaps = []
    for nn, st in ((n, steps), (2 * n, 2 * steps)):
        series = fd_vs_maxwell(nn, st, cfl, seed, mmax, mu0, source, box_length)
        tables[f"equivalence_n{nn}"] = (("time", "relative_l2"), series)
        gaps.append(max(v for _, v in series))
        metrics[f"max_relative_l2_n{nn}"] = gaps[-1]
        metrics[f"final_relative_l2_n{nn}"] = series[-1][1]
    order = _order(*gaps)
    metrics["observed_order"] = order
    ok &= order_band[0] <= order <= order_band[1]
    err = exact_vs_analytic(seed)
    metrics["exact_vs_analytic"] = err
    ok &= err < analytic_tol
    return AuditResult("equivalence", bool(ok), metrics, tables)


# ---------------------------------------------------------------- 3: helicity

@timed
def audit_helicity(count=20, seed=0, mmax=5, tol=1e-12, n=16):
    rng = np.random.default_rng(seed)
    worst_t, worst_z, worst_grid = 0.0, 0.0, 0.0
    grid = GridSpec(n)
    for m in _random_modes(rng, count, mmax):
        k = ModeIndex(m).k()
        h = helicity_operator(k / np.linalg.norm(k))
        for alpha in (1, -1):
            hel = Helicity.MINUS if alpha == 1 else Helicity.PLUS
            u = polarization_column(k, hel)
            worst_t = max(worst_t, float(np.max(np.abs(h @ u + alpha * u))))
            if max(abs(v) for v in m) < n // 2:
                pw = plane_wave(PlaneWaveSpec(ModeIndex(m), alpha, hel), grid, 0.3).phi
                hp = np.einsum("ab,b...->a...", h, pw)
                worst_grid = max(worst_grid, float(np.max(np.abs(hp + alpha * pw))))
        for hel in (Helicity.LONGITUDINAL, Helicity.SCALAR):
            worst_z = max(worst_z, float(np.max(np.abs(h @ polarization_column(k, hel)))))
    metrics = {"transverse_max_deviation": worst_t, "zero_helicity_max": worst_z,
               "grid_plane_wave_max_deviation": worst_grid}
    return AuditResult("helicity", bool(max(metrics.values()) < tol), metrics)


# ---------------------------------------------------------------- 4: transversality

def lorentz_potential_xi(n, scheme, mu0=1.0):
    """``max |xi|`` from potentials obeying the continuum Lorentz condition."""
    grid = GridSpec(n)
    x, y, z = grid.coords()
    k = np.array([1.0, 2.0, -1.0])
    ph = k[0] * x + k[1] * y + k[2] * z
    amp = np.array([0.7, -0.2, 0.4])
    a = amp[:, None, None, None] * np.cos(ph)[None]
    v = 0.3 * np.sin(ph)
    div_a = -(amp @ k) * np.sin(ph)
    da = np.stack([0.5 * np.sin(ph), 0.1 * np.cos(ph), np.zeros_like(ph)])
    s = spinor_from_potential(PotentialField(grid, a, v), da, -div_a, mu0, scheme)
    return float(np.max(np.abs(s.xi)))


def kg_wave_residual(n, omega_factor=1.0, cfl=0.5):
    grid = GridSpec(n)
    x, y, z = grid.coords()
    k = np.array([1.0, 1.0, 0.0])
    w = omega_factor * np.linalg.norm(k)
    dt = cfl * grid.spacing
    snaps = [np.cos(k[0] * x + k[1] * y + k[2] * z - w * t) for t in (-dt, 0.0, dt)]
    return kg_residual(*snaps, dt, grid.spacing)


@timed
def audit_transversality(seed=0, n=16, steps=40, tol=1e-12, order_band=(1.75, 2.25)):
    metrics = {}
    xi_fd = [lorentz_potential_xi(nn, "centered2") for nn in (16, 32, 64)]
    metrics["lorentz_xi_centered2"] = xi_fd
    metrics["lorentz_xi_order"] = _order(xi_fd[1], xi_fd[2])
    metrics["lorentz_xi_spectral"] = lorentz_potential_xi(16, "spectral")
    grid = GridSpec(n)
    s0 = spinor_from_eb(random_transverse_em(grid, seed), 1.0)
    _, rows = evolve(EvolutionConfig(grid, dt=0.1, steps=steps), s0)
    metrics["free_xi_max"] = max(r.transversality_residual for r in rows)
    kg = [kg_wave_residual(nn) for nn in (16, 32, 64)]
    metrics["kg_residual"] = kg
    metrics["kg_order"] = _order(kg[1], kg[2])
    bad = [kg_wave_residual(nn, 1.2) for nn in (32, 64)]
    metrics["kg_wrong_dispersion"] = bad
    ok = (order_band[0] <= metrics["lorentz_xi_order"] <= order_band[1]
          and metrics["lorentz_xi_spectral"] < tol
          and metrics["free_xi_max"] < tol
          and order_band[0] <= metrics["kg_order"] <= order_band[1]
          and bad[1] > 0.5 * bad[0])
    return AuditResult("transversality", bool(ok), metrics)


# ---------------------------------------------------------------- 5: conservation

@timed
def audit_conservation(seed=0, n=16, steps=50, dt=0.25, tol=1e-12):
    grid = GridSpec(n)
    f = random_transverse_em(grid, seed)
    _, rows = evolve(EvolutionConfig(grid, dt=dt, steps=steps), spinor_from_eb(f))
    e = np.array([r.total_energy for r in rows])
    p = np.array([r.total_poynting for r in rows])
    drift_e = float(np.max(np.abs(e - e[0])) / abs(e[0]))
    drift_p = float(np.max(np.abs(p - p[0])) / max(np.max(np.abs(p[0])), abs(e[0])))
    # arbitrary (non-transverse) random fields, pointwise
    rng = np.random.default_rng(seed + 1)
    fr = EMField(grid, rng.normal(size=(3, *grid.shape)), rng.normal(size=(3, *grid.shape)))
    flux = four_current_flux(spinor_from_eb(fr))
    dens = float(np.max(np.abs((-1j * flux.fourth).real - classical_energy_density(fr))))
    dens_im = float(np.max(np.abs((-1j * flux.fourth).imag)))
    poy = float(np.max(np.abs(flux.spatial - classical_poynting(fr))))
    metrics = {"energy_relative_drift": drift_e, "momentum_relative_drift": drift_p,
               "pointwise_energy_density": dens, "energy_density_imag": dens_im,
               "pointwise_poynting": poy}
    rows_out = [(r.time, r.total_energy, *r.total_poynting) for r in rows]
    return AuditResult("conservation", bool(max(metrics.values()) < tol), metrics,
                       {"conservation": (("time", "total_energy", "Sx", "Sy", "Sz"), rows_out)})


# ---------------------------------------------------------------- 6: isospin

def _exact_state(s0, pot0, da0, dv0, t):
    s = evolve_exact(s0, t)
    pot, _, _ = evolve_potential_exact(pot0, da0, dv0, t)
    return s, pot


def isospin_history(n=16, seed=0, periods=10, samples=80, mu0=1.0):
    grid = GridSpec(n)
    s0 = spinor_from_eb(random_transverse_em(grid, seed), mu0)
    pot0 = coulomb_potential(s0, mu0)
    da0, dv0 = potential_time_derivatives(s0, pot0, mu0)
    period = grid.box_length  # slowest mode |k| = 2 pi / L, period L
    out = []
    for t in np.linspace(0.0, periods * period, samples + 1):
        s, pot = _exact_state(s0, pot0, da0, dv0, t)
        out.append((float(t), isospin_currents(conjugate_momentum(s, mu0), pot).charges))
    return out


def isospin_divergence(n, seed=0, t0=0.7, cfl=0.5, mu0=1.0):
    grid = GridSpec(n)
    s0 = spinor_from_eb(random_transverse_em(grid, seed), mu0)
    pot0 = coulomb_potential(s0, mu0)
    da0, dv0 = potential_time_derivatives(s0, pot0, mu0)
    dt = cfl * grid.spacing
    hist = []
    for t in (t0 - dt, t0, t0 + dt):
        s, pot = _exact_state(s0, pot0, da0, dv0, t)
        hist.append(isospin_currents(conjugate_momentum(s, mu0), pot))
    return max(divergence_residual(hist, dt, "centered2"))


@timed
def audit_isospin(n=16, seed=0, periods=10, drift_tol=1e-8, order_band=(1.75, 2.25)):
    hist = isospin_history(n, seed, periods)
    q = np.array([c for _, c in hist])
    drift = float(np.max(np.abs(q - q[0])))
    div = [isospin_divergence(nn, seed) for nn in (16, 32, 64)]
    order = _order(div[1], div[2])
    metrics = {"charge_drift": drift, "charges_initial": [complex(v) for v in q[0]],
               "divergence_residual": div, "divergence_order": order}
    table = (("time", "Q1_re", "Q1_im", "Q2_re", "Q2_im", "Q3_re", "Q3_im"),
             [(t, *[f(c) for c in qs for f in (np.real, np.imag)]) for t, qs in hist])
    ok = drift < drift_tol and order_band[0] <= order <= order_band[1]
    return AuditResult("isospin", bool(ok), metrics, {"isospin_charges": table})


# ---------------------------------------------------------------- 7: Hamiltonian

@timed
def audit_hamiltonian(n=16, seed=0, mu0=1.0, tol=1e-10):
    grid = GridSpec(n)
    pot, da, dv = random_potential_data(grid, seed)
    s = spinor_from_potential(pot, da, dv, mu0)
    h, hl = hamiltonian_density(s, pot, da, dv, mu0)
    total_h, total_l = integrate(h, grid), integrate(hl, grid)
    rel = float(abs(total_h - total_l) / max(abs(total_h), abs(total_l)))
    metrics = {"integral_H": complex(total_h), "integral_legendre": complex(total_l),
               "relative_difference": rel, "pointwise_max": float(np.max(np.abs(h - hl)))}
    return AuditResult("hamiltonian", bool(rel < tol), metrics)


# ---------------------------------------------------------------- 8: Fock

def _sample_points(rng, count, box_length):
    return [tuple(float(v) for v in rng.uniform(0, box_length, 3)) for _ in range(count)]


def fock_checks(modes=((0, 0, 1),), cutoff=2, seed=0, n_points=10, tol=1e-12):
    rng = np.random.default_rng(seed)
    basis = fock.build_basis(fock.ModeSet(tuple(modes)), cutoff)
    ms = basis.mode_set
    m0 = ms.modes[0]
    metrics = {"dim": basis.dim, "basis_id": basis.basis_id}
    comm = fock.commutator_check(basis, positions=[(p, q) for p, q in zip(
        _sample_points(rng, 3, ms.box_length), _sample_points(rng, 3, ms.box_length))])
    metrics["commutators"] = comm
    ok = comm["ladder_exact"]

    ham = fock.dense(fock.hamiltonian(basis)).diagonal().real
    mom = [fock.dense(p).diagonal().real for p in fock.momentum(basis)]
    kn = np.linalg.norm(ms.k(m0))
    nslot = 4 * len(ms.modes)
    named = {"vacuum": [0] * nslot}
    if cutoff >= 1:
        for lam, name in ((1, "transverse"), (3, "longitudinal"), (4, "scalar")):
            occ = [0] * nslot
            occ[basis.slot(m0, lam)] = 1
            named[name] = occ
    vac = fock.vacuum_energy(basis)
    energies = {k: float(ham[basis.index(v)]) for k, v in named.items()}
    expected = {"vacuum": vac, "transverse": vac + kn, "longitudinal": vac + kn, "scalar": vac - kn}
    metrics["energies"] = energies
    metrics["energies_vacuum_subtracted"] = {k: v - vac for k, v in energies.items()}
    ok &= all(energies[k] == expected[k] for k in energies)
    # arithmetic oracle over every enumerated state
    kvec = np.array([ms.k(m) for m in ms.modes])
    knorm = np.linalg.norm(kvec, axis=1)
    st = basis.states.reshape(basis.dim, -1, 4)
    bracket = st[:, :, 0] + st[:, :, 1] + 1.0 + st[:, :, 2] - st[:, :, 3]
    metrics["hamiltonian_arith_dev"] = float(np.max(np.abs(ham - bracket @ knorm)))
    metrics["momentum_arith_dev"] = float(max(np.max(np.abs(mom[j] - bracket @ kvec[:, j])) for j in range(3)))
    ok &= metrics["hamiltonian_arith_dev"] == 0 and metrics["momentum_arith_dev"] == 0

    phys = fock.physical_states(basis)
    metrics["physical_dim"] = phys.shape[1]
    b_dev = max(float(np.max(np.abs(fock.dense(fock.b_op(basis, m)) @ phys))) for m in ms.modes) if phys.size else 0.0
    n3n4 = sum(fock.dense(fock.number(basis, m, 3)) - fock.dense(fock.number(basis, m, 4)) for m in ms.modes)
    pts = _sample_points(rng, n_points, ms.box_length)
    xi_ops = [fock.dense(fock.xi_operator(basis, x)) for x in pts]
    n_dev = max(abs(fock.expectation(n3n4, phys[:, c])) for c in range(phys.shape[1]))
    xi_dev = max(abs(fock.expectation(op, phys[:, c])) for op in xi_ops for c in range(phys.shape[1]))
    metrics.update({"b_annihilates": b_dev, "n3_minus_n4": n_dev, "xi_expectation": xi_dev})
    ok &= b_dev < tol and n_dev < tol and xi_dev < tol

    # informational: dynamics of the physical subspace and the weaker expectation condition
    hd = fock.dense(fock.hamiltonian(basis))
    proj = phys @ phys.conj().T
    metrics["physical_energy_min_minus_vacuum"] = float(np.linalg.eigvalsh(phys.conj().T @ hd @ phys).min() - vac)
    metrics["hamiltonian_leak_from_physical"] = float(np.max(np.abs((np.eye(basis.dim) - proj) @ hd @ phys)))
    weaker = []
    for i in range(basis.dim):
        psi = np.zeros(basis.dim, dtype=complex)
        psi[i] = 1.0
        if np.linalg.norm(psi - proj @ psi) < 1e-12:
            continue
        if max(abs(fock.expectation(op, psi)) for op in xi_ops) < tol:
            weaker.append([int(v) for v in basis.states[i]])
    metrics["non_kernel_basis_states_with_zero_xi"] = weaker
    mixed = None
    if cutoff >= 1:
        psi = basis.vacuum().copy()
        psi[basis.index(named["longitudinal"])] = 1.0
        mixed = max(abs(fock.expectation(op, psi)) for op in xi_ops)
    metrics["xi_expectation_vacuum_plus_longitudinal"] = mixed
    states = [fock.state_dump(phys[:, c], basis) for c in range(phys.shape[1])]
    return bool(ok), metrics, basis, phys, states


@timed
def audit_fock(modes=((0, 0, 1),), cutoffs=(1, 2, 3), seed=0, tol=1e-12):
    ok_all = True
    metrics = {}
    for cutoff in cutoffs:
        ok, m, _, _, _ = fock_checks(modes, cutoff, seed, tol=tol)
        metrics[f"cutoff_{cutoff}"] = m
        ok_all &= ok
    # informational: field-level commutator on a mode set closed under k -> -k
    m0 = tuple(modes[0])
    sym = fock.build_basis(fock.ModeSet((m0, tuple(-v for v in m0))), 1)
    rng = np.random.default_rng(seed)
    pairs = list(zip(_sample_points(rng, 3, sym.mode_set.box_length), _sample_points(rng, 3, sym.mode_set.box_length)))
    metrics["field_commutator_symmetric_set"] = fock.commutator_check(sym, positions=pairs)["field_level"]
    return AuditResult("fock", bool(ok_all), metrics)


# ---------------------------------------------------------------- 9: covariance

def random_superposition(seed=0, count=4, mmax=1):
    rng = np.random.default_rng(seed)
    specs = []
    for m in _random_modes(rng, count, mmax):
        alpha = int(rng.choice((1, -1)))
        hel = Helicity.MINUS if alpha == 1 else Helicity.PLUS
        specs.append(PlaneWaveSpec(ModeIndex(m), alpha, hel, complex(rng.normal(), rng.normal())))
    return cov.PlaneWaveSuperposition.from_plane_waves(specs)


@timed
def audit_covariance(seed=0, n_points=24, rapidity=0.3, tol=1e-10, mu0=1.0):
    rng = np.random.default_rng(seed)
    sup = random_superposition(seed)
    pts = rng.uniform(0, 2 * np.pi, size=(3, n_points))
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    angle = float(rng.uniform(0, 2 * np.pi))
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    metrics = {"base_residual": cov.pointwise_residual(sup, pts)}
    metrics["rotation_residual"] = cov.pointwise_residual(cov.rotated(sup, axis, angle), pts)
    boosted = cov.boosted_eb(sup, direction, rapidity, mu0)
    metrics["boost_residual"] = cov.pointwise_residual(boosted, pts)
    metrics["boost_eb_vs_matrix"] = float(np.max(np.abs(
        boosted(pts, 0.4) - cov.boosted_classical(sup, direction, rapidity)(pts, 0.4))))
    # Doppler along k for a single wave
    k = np.array([0.0, 0.0, 1.0])
    single = cov.PlaneWaveSuperposition([cov.PlaneWave(k, -1.0, polarization_column(k, Helicity.PLUS))])
    w_b = cov.measured_frequency(cov.boosted_eb(single, k, rapidity, mu0), (0.1, 0.2, 0.3))
    metrics["doppler_ratio"] = float(abs(w_b))
    metrics["doppler_expected"] = float(np.exp(rapidity))
    rot_spinor = rotation_rep(axis, angle)
    metrics["rotation_rep_unitary"] = float(np.max(np.abs(rot_spinor.conj().T @ rot_spinor - np.eye(4))))
    metrics["literal_T"] = cov.literal_t_report(sup, pts, rapidity=rapidity, angle=angle,
                                                axis=tuple(axis),
                                                direction=tuple(direction))
    ok = (metrics["rotation_residual"] < tol and metrics["boost_residual"] < tol
          and abs(metrics["doppler_ratio"] - metrics["doppler_expected"]) < 1e-8)
    return AuditResult("covariance", bool(ok), metrics)


ACCEPTANCE = (
    (1, "matrix identities", audit_algebra, 1.0),
    (2, "Maxwell equivalence", audit_equivalence, 120.0),
    (3, "helicity", audit_helicity, 5.0),
    (4, "transversality and Lorentz condition", audit_transversality, None),
    (5, "conservation", audit_conservation, None),
    (6, "isospin currents", audit_isospin, 60.0),
    (7, "Hamiltonian and Legendre form", audit_hamiltonian, None),
    (8, "Fock layer", audit_fock, 10.0),
    (9, "covariance", audit_covariance, None),
)
