"""Serialization: field snapshots, diagnostics CSV, JSON reports.

Snapshot layout: one JSON header line
``{type, n, box_length, mu0, time, components}`` then raw little-endian
float64 data, component-major and row-major over (z, y, x) within a
component. Complex components are stored as interleaved (re, im) pairs.
"""
import json

import numpy as np

from .dynamics import DiagnosticsRow
from .errors import ShapeMismatch, UnsupportedInput
from .fields import EMField, PotentialField, SpinorField
from .grid import GridSpec

_LAYOUTS = {
    "spinor": (("phi1", "phi2", "phi3", "xi"), True),
    "em": (("Ex", "Ey", "Ez", "Bx", "By", "Bz"), False),
    "potential": (("Ax", "Ay", "Az", "V"), False),
}


def dumps_json(obj):
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(obj))


def _kind_and_data(f):
    if isinstance(f, SpinorField):
        return "spinor", f.phi
    if isinstance(f, EMField):
        return "em", np.concatenate([f.e, f.b])
    if isinstance(f, PotentialField):
        return "potential", np.concatenate([f.a, f.v[None]])
    raise UnsupportedInput(f"cannot snapshot {type(f).__name__}")


def write_snapshot(path, f, mu0=1.0, time=0.0):
    kind, data = _kind_and_data(f)
    names, is_complex = _LAYOUTS[kind]
    header = {"type": kind, "n": f.grid.n, "box_length": f.grid.box_length, "mu0": float(mu0),
              "time": float(time), "components": list(names)}
    if is_complex:
        raw = np.ascontiguousarray(data, dtype="<c16").view("<f8")
    else:
        raw = np.ascontiguousarray(data, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("utf-8"))
        fh.write(raw.tobytes())


def read_snapshot(path):
    """Return ``(header, field)``."""
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("utf-8"))
        payload = fh.read()
    kind = header.get("type")
    if kind not in _LAYOUTS:
        raise UnsupportedInput(f"unknown snapshot type {kind!r}")
    names, is_complex = _LAYOUTS[kind]
    grid = GridSpec(int(header["n"]), float(header["box_length"]))
    shape = (len(names), *grid.shape)
    flat = np.frombuffer(payload, dtype="<f8")
    expected = int(np.prod(shape)) * (2 if is_complex else 1)
    if flat.size != expected:
        raise ShapeMismatch(f"snapshot holds {flat.size} floats, expected {expected}")
    if is_complex:
        data = flat.view("<c16").reshape(shape).astype(complex)
    else:
        data = flat.reshape(shape).astype(float)
    if kind == "spinor":
        return header, SpinorField(grid, data)
    if kind == "em":
        return header, EMField(grid, data[:3], data[3:])
    return header, PotentialField(grid, data[:3], data[3])


def diagnostics_csv(rows):
    return "\n".join([DiagnosticsRow.CSV_HEADER, *(r.csv_line() for r in rows)]) + "\n"


def write_diagnostics(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(diagnostics_csv(rows))


def read_diagnostics(path):
    """Parse a diagnostics CSV back into a dict of float arrays keyed by column."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln]
    cols = lines[0].split(",")
    vals = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]]).reshape(-1, len(cols))
    return {c: vals[:, i] for i, c in enumerate(cols)}


def write_modes(path, records):
    write_json(path, records)


def read_modes(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
