"""Command-line scenario runner.

    spinor-em run --config scenario.json --out results/
    spinor-em verify [--only 1,3] [--out results/]

Configs are strict JSON objects. Every scenario accepts ``scenario``,
``seed`` (0), ``mu0`` (1.0), ``output_dir`` and ``tolerances``; the rest is
listed in :data:`SCHEMA`. Reports contain no timings, so a fixed config
gives byte-identical files. Exit status: 0 when every check passes, 1 when
a check fails, 2 for usage errors, 9 for other invalid arguments, and the
error's ``exit_code`` for library errors.
"""
import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import audits, fock
from .dynamics import EvolutionConfig, evolve
from .errors import InvalidValue, ParseError, SpinorEMError, UnknownKey
from .fields import spinor_from_eb
from .grid import GridSpec
from .io import write_diagnostics, write_json, write_snapshot

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INVALID_ARGUMENT = 9


# ---------------------------------------------------------------- validators

def _int(minimum=None, even=False):
    def check(name, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidValue(f"{name} must be an integer, got {v!r}")
        if minimum is not None and v < minimum:
            raise InvalidValue(f"{name} must be >= {minimum}, got {v}")
        if even and v % 2:
            raise InvalidValue(f"{name} must be even, got {v}")
        return v
    return check


def _float(positive=False, nonneg=False):
    def check(name, v):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
            raise InvalidValue(f"{name} must be a finite number, got {v!r}")
        if positive and not v > 0:
            raise InvalidValue(f"{name} must be positive, got {v}")
        if nonneg and v < 0:
            raise InvalidValue(f"{name} must be nonnegative, got {v}")
        return float(v)
    return check


def _bool(name, v):
    if not isinstance(v, bool):
        raise InvalidValue(f"{name} must be true or false, got {v!r}")
    return v


def _string(name, v):
    if not isinstance(v, str) or not v:
        raise InvalidValue(f"{name} must be a nonempty string, got {v!r}")
    return v


def _modes(name, v):
    if not isinstance(v, list) or not v:
        raise InvalidValue(f"{name} must be a nonempty list of integer triples")
    out = []
    for m in v:
        if (not isinstance(m, list) or len(m) != 3
                or any(isinstance(c, bool) or not isinstance(c, int) for c in m)):
            raise InvalidValue(f"{name} entries must be integer triples, got {m!r}")
        if m == [0, 0, 0]:
            raise InvalidValue(f"{name} must not contain the zero mode")
        out.append(tuple(m))
    return out


_SOURCE_KEYS = {"type": _string, "amplitude": _float(), "omega": _float(positive=True),
                "sharpness": _float(positive=True), "direction": None}


def _source(name, v):
    if not isinstance(v, dict):
        raise InvalidValue(f"{name} must be an object")
    for key in v:
        if key not in _SOURCE_KEYS:
            raise UnknownKey(f"unknown key {name}.{key}")
    kind = _string(f"{name}.type", v.get("type", "none"))
    if kind not in ("none", "dipole"):
        raise InvalidValue(f"{name}.type must be 'none' or 'dipole', got {kind!r}")
    out = {"type": kind}
    for key, check in _SOURCE_KEYS.items():
        if key in v and key not in ("type", "direction"):
            out[key] = check(f"{name}.{key}", v[key])
    if "direction" in v:
        d = v["direction"]
        if not isinstance(d, list) or len(d) != 3:
            raise InvalidValue(f"{name}.direction must be a 3-vector")
        out["direction"] = [_float()(f"{name}.direction", c) for c in d]
    return out


COMMON = {"scenario": None, "seed": (_int(0), 0), "mu0": (_float(positive=True), 1.0),
          "output_dir": (_string, None), "tolerances": None, "snapshots": (_bool, False)}

SCHEMA = {
    "algebra_report": ({}, {"identity": 1e-14}),
    "equivalence_run": (
        {"n": (_int(4, even=True), 16), "box_length": (_float(positive=True), 2 * np.pi),
         "steps": (_int(1), 100), "dt": (_float(positive=True), None), "cfl": (_float(positive=True), 0.5),
         "mmax": (_int(1), 2), "source": (_source, None), "interval": (_int(1), 10)},
        {"order_min": 1.75, "order_max": 2.25, "analytic": 1e-10, "transversality": 1e-12,
         "conservation": 1e-12},
    ),
    "helicity_audit": ({"count": (_int(1), 20), "mmax": (_int(1), 5), "n": (_int(4, even=True), 16)},
                       {"helicity": 1e-12}),
    "covariance_check": ({"rapidity": (_float(), 0.3), "points": (_int(1), 24)}, {"residual": 1e-10}),
    "canonical_audit": ({"n": (_int(4, even=True), 16), "periods": (_int(1), 10)},
                        {"charge_drift": 1e-8, "hamiltonian": 1e-10, "order_min": 1.75, "order_max": 2.25}),
    "fock_audit": ({"mode_set": (_modes, [(0, 0, 1)]), "cutoff": (_int(0), 2), "points": (_int(1), 10)},
                   {"fock": 1e-12}),
}


@dataclass
class ScenarioConfig:
    scenario: str
    seed: int = 0
    mu0: float = 1.0
    output_dir: str = None
    snapshots: bool = False
    params: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)


def parse_config(text):
    """Strict parse of a JSON scenario config; defaults are filled in."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("config must be a JSON object", line=1)
    if "scenario" not in raw:
        raise ParseError("missing required key", field="scenario")
    scenario = raw["scenario"]
    if not isinstance(scenario, str):
        raise InvalidValue(f"scenario must be a string, got {scenario!r}")
    if scenario not in SCHEMA:
        raise UnknownKey(f"unknown scenario {scenario!r}; expected one of {sorted(SCHEMA)}")
    params_schema, tol_defaults = SCHEMA[scenario]
    for key in raw:
        if key not in COMMON and key not in params_schema:
            raise UnknownKey(f"unknown key {key!r} for scenario {scenario!r}")
    cfg = ScenarioConfig(scenario=scenario)
    for key in ("seed", "mu0", "output_dir", "snapshots"):
        check, default = COMMON[key]
        setattr(cfg, key, check(key, raw[key]) if key in raw else default)
    for key, (check, default) in params_schema.items():
        cfg.params[key] = check(key, raw[key]) if key in raw and raw[key] is not None else default
    tols = dict(tol_defaults)
    given = raw.get("tolerances", {})
    if not isinstance(given, dict):
        raise InvalidValue("tolerances must be an object")
    for key, value in given.items():
        if key not in tol_defaults:
            raise UnknownKey(f"unknown tolerance {key!r} for scenario {scenario!r}")
        tols[key] = _float(positive=True)(f"tolerances.{key}", value)
    cfg.tolerances = tols
    return cfg


# ---------------------------------------------------------------- scenarios

def _write_table(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _write_tables(out, result):
    for name, (header, rows) in sorted(result.tables.items()):
        _write_table(os.path.join(out, f"{name}.csv"), header, rows)


def _run_algebra(cfg, out):
    return [audits.audit_algebra(tol=cfg.tolerances["identity"])]


def _run_equivalence(cfg, out):
    p, tol = cfg.params, cfg.tolerances
    grid = GridSpec(p["n"], p["box_length"])
    cfl = p["cfl"]
    if p["dt"] is not None:
        if p["dt"] > cfl * grid.spacing * (1 + 1e-12):
            raise InvalidValue(f"dt = {p['dt']} exceeds cfl * spacing = {cfl * grid.spacing:.6g}")
        cfl = p["dt"] / grid.spacing
    eq = audits.audit_equivalence(n=p["n"], steps=p["steps"], cfl=cfl, seed=cfg.seed, mmax=p["mmax"],
                                  mu0=cfg.mu0, source=p["source"],
                                  order_band=(tol["order_min"], tol["order_max"]), analytic_tol=tol["analytic"],
                                  box_length=p["box_length"])
    trans = audits.audit_transversality(seed=cfg.seed, tol=tol["transversality"],
                                        order_band=(tol["order_min"], tol["order_max"]))
    cons = audits.audit_conservation(seed=cfg.seed, tol=tol["conservation"])
    # spinor finite-difference evolution with full diagnostics on the coarse grid
    src = audits.make_source(grid, p["source"])
    init = spinor_from_eb(audits.random_transverse_em(grid, cfg.seed, p["mmax"]), cfg.mu0)
    econf = EvolutionConfig(grid, dt=cfl * grid.spacing, steps=p["steps"], mu0=cfg.mu0, method="rk4_centered",
                            source=src, cfl=p["cfl"], interval=p["interval"])
    final, rows = evolve(econf, init)
    write_diagnostics(os.path.join(out, "diagnostics.csv"), rows)
    if cfg.snapshots:
        write_snapshot(os.path.join(out, "initial.snap"), init, cfg.mu0, 0.0)
        write_snapshot(os.path.join(out, "final.snap"), final, cfg.mu0, rows[-1].time)
    return [eq, trans, cons]


def _run_helicity(cfg, out):
    p = cfg.params
    return [audits.audit_helicity(count=p["count"], seed=cfg.seed, mmax=p["mmax"], n=p["n"],
                                  tol=cfg.tolerances["helicity"])]


def _run_covariance(cfg, out):
    p = cfg.params
    return [audits.audit_covariance(seed=cfg.seed, n_points=p["points"], rapidity=p["rapidity"],
                                    tol=cfg.tolerances["residual"], mu0=cfg.mu0)]


def _run_canonical(cfg, out):
    p, tol = cfg.params, cfg.tolerances
    iso = audits.audit_isospin(n=p["n"], seed=cfg.seed, periods=p["periods"], drift_tol=tol["charge_drift"],
                               order_band=(tol["order_min"], tol["order_max"]))
    ham = audits.audit_hamiltonian(n=p["n"], seed=cfg.seed, mu0=cfg.mu0, tol=tol["hamiltonian"])
    return [iso, ham]


def _run_fock(cfg, out):
    p = cfg.params
    ok, metrics, basis, phys, states = audits.fock_checks(p["mode_set"], p["cutoff"], cfg.seed, p["points"],
                                                          cfg.tolerances["fock"])
    write_json(os.path.join(out, "physical_states.json"),
               {"basis_id": basis.basis_id, "dim": basis.dim, "states": states})
    write_json(os.path.join(out, "hamiltonian.json"), fock.operator_dump(fock.hamiltonian(basis), basis))
    for i, m in enumerate(basis.mode_set.modes):
        write_json(os.path.join(out, f"b_mode{i}.json"), fock.operator_dump(fock.b_op(basis, m), basis))
    return [audits.AuditResult("fock", ok, metrics)]


RUNNERS = {
    "algebra_report": _run_algebra,
    "equivalence_run": _run_equivalence,
    "helicity_audit": _run_helicity,
    "covariance_check": _run_covariance,
    "canonical_audit": _run_canonical,
    "fock_audit": _run_fock,
}


def run_scenario(cfg, out=None):
    """Run one scenario, write its artifacts, return ``(exit_status, results)``."""
    out = out or cfg.output_dir
    if out is None:
        raise InvalidValue("no output directory: pass --out or set output_dir")
    os.makedirs(out, exist_ok=True)
    results = RUNNERS[cfg.scenario](cfg, out)
    for r in results:
        _write_tables(out, r)
    report = {
        "scenario": cfg.scenario,
        "seed": cfg.seed,
        "mu0": cfg.mu0,
        "params": audits._jsonable(cfg.params),
        "tolerances": cfg.tolerances,
        "passed": all(r.passed for r in results),
        "checks": [{k: v for k, v in r.summary().items() if k != "seconds"} for r in results],
    }
    write_json(os.path.join(out, "report.json"), report)
    return (0 if report["passed"] else EXIT_FAILED), results


def verify(only=None, out=None, stream=None):
    """Run the acceptance suite with built-in settings; one line per criterion."""
    stream = stream or sys.stdout
    ok = True
    for num, name, fn, limit in audits.ACCEPTANCE:
        if only and num not in only:
            continue
        res = fn()
        within = limit is None or res.seconds < limit
        status = "PASS" if res.passed and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        print(f"criterion {num} [{name}]: {status}  {res.seconds:.2f}s{budget}", file=stream)
        ok &= res.passed and within
        if out:
            os.makedirs(out, exist_ok=True)
            write_json(os.path.join(out, f"criterion_{num}.json"),
                       {k: v for k, v in res.summary().items() if k != "seconds"})
            _write_tables(out, res)
    return 0 if ok else EXIT_FAILED


def build_parser():
    parser = argparse.ArgumentParser(prog="spinor-em", description="Four-component spinor electrodynamics toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one scenario from a JSON config")
    run.add_argument("--config", required=True, help="path to the JSON config")
    run.add_argument("--out", help="output directory (overrides output_dir)")
    ver = sub.add_parser("verify", help="run the built-in acceptance suite")
    ver.add_argument("--only", help="comma-separated criterion numbers")
    ver.add_argument("--out", help="optional directory for per-criterion reports")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                with open(args.config, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: cannot read config: {exc}", file=sys.stderr)
                return EXIT_USAGE
            cfg = parse_config(text)
            status, results = run_scenario(cfg, args.out)
            for r in results:
                print(f"{r.name}: {'PASS' if r.passed else 'FAIL'}")
            return status
        only = None
        if args.only:
            try:
                only = {int(v) for v in args.only.split(",")}
            except ValueError:
                print(f"error: --only expects integers, got {args.only!r}", file=sys.stderr)
                return EXIT_USAGE
        return verify(only, args.out)
    except SpinorEMError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_INVALID_ARGUMENT


if __name__ == "__main__":
    sys.exit(main())
