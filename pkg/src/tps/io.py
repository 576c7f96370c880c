"""File formats: sequence and spectrum CSVs, JSON sidecars and configs.

Every float is written with 17 significant digits so a read-back gives
the identical double.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import DomainError
from .excitation import PulseShape
from .sequence import PeriodicSequence, WSpectrum
from .waveguide import DEFAULT_Q, ModeIndex, WaveguideSpec


def fmt(x: float) -> str:
    return f"{float(x):.17g}"


def sidecar_path(path) -> Path:
    """``run/seq.csv`` -> ``run/seq.json``."""
    return Path(path).with_suffix(".json")


def write_sequence_csv(path, seq: PeriodicSequence) -> None:
    with open(path, "w", newline="") as f:
        f.write("n,value\n")
        for n, v in enumerate(seq.samples, start=1):
            f.write(f"{n},{fmt(v)}\n")


def read_sequence_values(path) -> np.ndarray:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["n", "value"]:
            raise DomainError(f"{path}: expected header 'n,value'")
        rows = [r for r in reader if r]
    n = [int(r[0]) for r in rows]
    if n != list(range(1, len(rows) + 1)):
        raise DomainError(f"{path}: rows must be numbered 1..N in order")
    return np.array([float(r[1]) for r in rows])


def read_sequence_csv(path, dt: float | None = None) -> PeriodicSequence:
    """Load samples; ``dt`` defaults to the sidecar's ``dt_seconds``."""
    values = read_sequence_values(path)
    if dt is None:
        meta = read_metadata(sidecar_path(path))
        if meta is None or "dt_seconds" not in meta:
            raise DomainError(f"{path}: no dt given and no sidecar with dt_seconds")
        dt = meta["dt_seconds"]
        if meta.get("N", values.size) != values.size:
            raise DomainError(f"{path}: sidecar N={meta['N']} but {values.size} rows")
    return PeriodicSequence(values, dt)


def write_metadata(path, seq: PeriodicSequence, q: int | None = None, **extra) -> None:
    meta = {"N": seq.N, "dt_seconds": seq.dt, "q": q}
    meta.update(extra)
    write_json(path, meta)


def read_metadata(path) -> dict | None:
    path = Path(path)
    if not path.exists():
        return None
    return json.loads(path.read_text())


def write_spectrum_csv(path, spec: WSpectrum) -> None:
    with open(path, "w", newline="") as f:
        f.write("k,re,im\n")
        for k, c in enumerate(spec.coefficients, start=1):
            f.write(f"{k},{fmt(c.real)},{fmt(c.imag)}\n")


def read_spectrum_csv(path, kind: str, dt: float) -> WSpectrum:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["k", "re", "im"]:
            raise DomainError(f"{path}: expected header 'k,re,im'")
        rows = [r for r in reader if r]
    if [int(r[0]) for r in rows] != list(range(1, len(rows) + 1)):
        raise DomainError(f"{path}: rows must be numbered 1..N in order")
    c = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
    return WSpectrum(c, kind, dt)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def write_json(path, obj) -> None:
    # json writes floats with repr(), which round-trips exactly
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True, default=_default)
                          + "\n")


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None


def shape_from_config(d: dict):
    """``(PulseShape, Ns, K)`` from a shape record; Ns/K may be absent."""
    return PulseShape.from_dict(d), d.get("Ns"), d.get("K")


def waveguide_from_config(d: dict):
    """``(WaveguideSpec, ModeIndex, q)`` from a waveguide record."""
    try:
        spec = WaveguideSpec(a=float(d["a_m"]), b=float(d["b_m"]),
                             length=float(d.get("L_m", 0.0)),
                             sigma=float(d.get("sigma", 0.0)),
                             **{k: float(d[k]) for k in ("eps", "mu") if k in d})
    except KeyError as exc:
        raise DomainError(f"waveguide record is missing {exc}") from None
    m, l = d.get("mode", [1, 0])
    return spec, ModeIndex(int(m), int(l)), int(d.get("q", DEFAULT_Q))
