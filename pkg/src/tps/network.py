"""Port networks: Touchstone ingestion, w-grid resampling and periodic
response.

Touchstone phasors follow the engineering ``exp(+j w t)`` convention while
w-domain coefficients pair with ``exp(-i w t)``, so a measured ``S(f)``
becomes ``conj(S(f))`` on a positive quantized frequency.  With that
mapping a delay line ``S21 = exp(-j 2 pi f tau)`` delays the sequence.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._parallel import map_blocks
from .errors import DomainError, ExtrapolationError, ParseError, SymmetryError
from .sequence import (FrequencyGrid, PeriodicSequence, forward_e_array,
                       half_length, symmetry_residual, SYMMETRY_RTOL)

_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
_FORMATS = ("RI", "MA", "DB")


@dataclass(frozen=True)
class PortNetwork:
    """Frequency-sampled S-parameters, ``s[f, out, in]``, frequencies in Hz."""

    freqs: np.ndarray
    s: np.ndarray
    z0: float = 50.0

    def __post_init__(self):
        f = np.array(self.freqs, dtype=float).reshape(-1)
        s = np.array(self.s, dtype=complex)
        if s.ndim != 3 or s.shape[0] != f.size or s.shape[1] != s.shape[2]:
            raise DomainError(f"s must be (n_freq, P, P), got {s.shape}")
        if f.size == 0:
            raise DomainError("network has no frequency samples")
        if np.any(np.diff(f) <= 0):
            raise DomainError("frequencies must be strictly ascending")
        if not np.all(np.isfinite(s)):
            raise DomainError("S-parameters must be finite")
        f.setflags(write=False)
        s.setflags(write=False)
        object.__setattr__(self, "freqs", f)
        object.__setattr__(self, "s", s)

    @property
    def n_ports(self) -> int:
        return self.s.shape[1]


# ---------------------------------------------------------------------------
# Touchstone v1


def _parse_option_line(line, lineno):
    tokens = line[1:].upper().split()
    unit, fmt, z0 = "GHZ", "MA", 50.0
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t in _UNITS:
            unit = t
        elif t in _FORMATS:
            fmt = t
        elif t == "S":
            pass
        elif t in ("Y", "Z", "H", "G"):
            raise ParseError(f"only S-parameters are supported, got {t}", lineno)
        elif t == "R":
            if i + 1 >= len(tokens):
                raise ParseError("option 'R' needs a reference impedance", lineno)
            try:
                z0 = float(tokens[i + 1])
            except ValueError:
                raise ParseError(f"bad reference impedance {tokens[i + 1]!r}",
                                 lineno) from None
            i += 1
        else:
            raise ParseError(f"unknown option {t!r}", lineno)
        i += 1
    return unit, fmt, z0


def _to_complex(a, b, fmt):
    if fmt == "RI":
        return a + 1j * b
    mag = a if fmt == "MA" else 10.0 ** (a / 20.0)
    return mag * np.exp(1j * np.deg2rad(b))


def _ports_from_extension(name):
    m = re.search(r"\.s(\d+)p$", str(name), re.IGNORECASE)
    return int(m.group(1)) if m else None


def parse_touchstone(text: str, n_ports: int | None = None) -> PortNetwork:
    """Parse Touchstone v1 text into a network in Hz with complex entries.

    ``n_ports`` is normally implied by the ``.sNp`` extension (see
    :func:`read_touchstone`).  When omitted it is inferred from the first
    data line, which is unambiguous for one- and two-port files and for
    files with more ports only if each matrix row sits on its own line.
    Two-port records are ordered S11 S21 S12 S22; larger networks are row
    major.
    """
    option = None
    rows = []  # (lineno, tokens)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            if option is not None:
                raise ParseError("second option line", lineno)
            option = _parse_option_line(line, lineno)
            continue
        if line.startswith("["):
            raise ParseError("Touchstone v2 keywords are not supported", lineno)
        try:
            values = [float(t) for t in line.split()]
        except ValueError as exc:
            raise ParseError(f"non-numeric data ({exc})", lineno) from None
        rows.append((lineno, values))
    if option is None:
        raise ParseError("missing option line")
    if not rows:
        raise ParseError("no data lines")
    unit, fmt, z0 = option

    if n_ports is None:
        pairs = (len(rows[0][1]) - 1) // 2
        if (len(rows[0][1]) - 1) % 2:
            raise ParseError("odd number of values after the frequency", rows[0][0])
        root = math.isqrt(pairs)
        n_ports = root if root * root == pairs and root <= 2 else pairs
    if n_ports < 1:
        raise ParseError("could not determine the number of ports", rows[0][0])

    per_record = 1 + 2 * n_ports * n_ports
    records, current, start = [], [], None
    for lineno, values in rows:
        if not current:
            start = lineno
        current.extend(values)
        if len(current) > per_record:
            raise ParseError(f"expected {per_record} values per frequency for "
                             f"{n_ports} ports, got {len(current)}", lineno)
        if n_ports <= 2 and len(current) != per_record:
            raise ParseError(f"expected {per_record} values, got {len(current)}",
                             lineno)
        if len(current) == per_record:
            records.append((start, current))
            current = []
    if current:
        raise ParseError(f"incomplete record: {len(current)} of {per_record} values",
                         start)

    freqs = np.empty(len(records))
    s = np.empty((len(records), n_ports, n_ports), dtype=complex)
    prev = -np.inf
    for i, (lineno, vals) in enumerate(records):
        f = vals[0] * _UNITS[unit]
        if f <= prev:
            raise ParseError("frequencies must be strictly ascending", lineno)
        prev = f
        freqs[i] = f
        data = np.asarray(vals[1:]).reshape(-1, 2)
        c = _to_complex(data[:, 0], data[:, 1], fmt).reshape(n_ports, n_ports)
        if n_ports == 2:
            c = c.T  # stored as S11 S21 S12 S22
        s[i] = c
    return PortNetwork(freqs, s, z0)


def read_touchstone(path) -> PortNetwork:
    path = Path(path)
    return parse_touchstone(path.read_text(), _ports_from_extension(path.name))


def format_touchstone(net: PortNetwork, unit: str = "Hz") -> str:
    """Touchstone v1 text in RI format, 17 significant digits."""
    scale = _UNITS[unit.upper()]
    lines = [f"# {unit} S RI R {net.z0:.17g}"]
    P = net.n_ports
    for f, m in zip(net.freqs, net.s):
        c = m.T if P == 2 else m
        vals = []
        for v in c.reshape(-1):
            vals += [f"{v.real:.17g}", f"{v.imag:.17g}"]
        if P <= 2:
            lines.append(" ".join([f"{f / scale:.17g}"] + vals))
        else:
            for r in range(P):
                row = vals[2 * P * r:2 * P * (r + 1)]
                head = [f"{f / scale:.17g}"] if r == 0 else []
                lines.append(" ".join(head + row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transfer on the quantized grid


@dataclass(frozen=True)
class WTransfer:
    """Transfer values on the positive-index half of a grid.

    ``h[0]`` is the DC value and must be real; so must the last entry for
    even ``N``.  :meth:`full` mirrors the rest by conjugate symmetry.
    """

    grid: FrequencyGrid
    h: np.ndarray
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        h = np.array(self.h, dtype=complex).reshape(-1)
        if h.size != self.grid.half:
            raise DomainError(f"expected {self.grid.half} transfer values, got {h.size}")
        h.setflags(write=False)
        object.__setattr__(self, "h", h)

    def full(self) -> np.ndarray:
        N = self.grid.N
        half = self.grid.half
        out = np.empty(N, dtype=complex)
        out[:half] = self.h
        out[half:] = np.conj(self.h[1:N - half + 1][::-1])
        res = symmetry_residual(out)
        if res > SYMMETRY_RTOL:
            raise SymmetryError(f"transfer extension is not conjugate-symmetric "
                                f"(DC or N/2+1 bin not real, residual {res:.3g})")
        return out

    @classmethod
    def from_impulse_response(cls, h: PeriodicSequence, grid: FrequencyGrid):
        """Transfer whose product form equals circular convolution with ``h``."""
        if h.N != grid.N:
            raise DomainError("impulse response and grid lengths differ")
        spec = np.sqrt(h.N) * forward_e_array(h.samples)
        half = spec[:grid.half].copy()
        half[0] = half[0].real
        if grid.N % 2 == 0:
            half[-1] = half[-1].real
        return cls(grid, half)

    @classmethod
    def from_function(cls, grid: FrequencyGrid, fn):
        """Transfer ``fn(w)`` evaluated on the positive quantized frequencies.

        DC and, for even ``N``, index ``N/2 + 1`` keep only their real parts.
        """
        h = np.array(fn(np.asarray(grid.w[:grid.half])), dtype=complex)
        h[0] = h[0].real
        if grid.N % 2 == 0:
            h[-1] = h[-1].real
        return cls(grid, h)


def resample(net: PortNetwork, grid: FrequencyGrid, out_port: int, in_port: int,
             k_used: int | None = None, remove_delay: float = 0.0,
             workers: int | None = 1) -> WTransfer:
    """Interpolate ``S[out_port, in_port]`` (1-based ports) onto the grid.

    Real and imaginary parts are interpolated linearly and separately.
    Indices above ``k_used`` (default: the whole positive half) get zero
    transfer.  DC takes the real part of the lowest sample; for even ``N``
    index ``N/2 + 1`` keeps only its real part.  ``remove_delay`` (seconds)
    de-embeds a fixture delay before resampling.
    """
    P = net.n_ports
    for name, p in (("out_port", out_port), ("in_port", in_port)):
        if not 1 <= p <= P:
            raise DomainError(f"{name}={p} outside 1..{P}")
    half = grid.half
    k_used = half if k_used is None else int(k_used)
    if not 1 <= k_used <= half:
        raise DomainError(f"k_used must lie in 1..{half}")

    sij = net.s[:, out_port - 1, in_port - 1]
    if remove_delay:
        sij = sij * np.exp(2j * np.pi * net.freqs * remove_delay)
    fk = np.asarray(grid.w[:k_used]) / (2 * np.pi)
    lo, hi = net.freqs[0], net.freqs[-1]
    for k in range(2, k_used + 1):
        if not lo <= fk[k - 1] <= hi:
            raise ExtrapolationError(
                f"index k={k} at {fk[k - 1]:.6g} Hz lies outside the sampled band "
                f"[{lo:.6g}, {hi:.6g}] Hz", k=k)

    def block(j):
        re_ = np.interp(fk[j], net.freqs, sij.real)
        im_ = np.interp(fk[j], net.freqs, sij.imag)
        return re_ - 1j * im_  # conjugate: engineering -> w-domain convention

    h = np.zeros(half, dtype=complex)
    if k_used > 1:
        h[1:k_used] = map_blocks(lambda j: block(j + 1), k_used - 1, workers)
    h[0] = sij[0].real
    notes = ["DC transfer taken as the real part of the lowest-frequency sample"]
    if grid.N % 2 == 0 and k_used == half:
        h[-1] = h[-1].real
        notes.append("index N/2+1 restricted to its real part")
    return WTransfer(grid, h, tuple(notes))


def respond(exc, transfer: WTransfer, workers: int | None = 1) -> PeriodicSequence:
    """Periodic output of a network: per-index product in the w domain.

    ``exc`` may be a :class:`PeriodicSequence` or anything with a
    ``sequence`` attribute, such as a periodic excitation.
    """
    seq = getattr(exc, "sequence", exc)
    if seq.N != transfer.grid.N:
        raise DomainError(f"sequence has {seq.N} samples, transfer {transfer.grid.N}")
    e = forward_e_array(seq.samples)
    t = transfer.full()
    y = map_blocks(lambda j: e[j] * t[j], seq.N, workers)
    if symmetry_residual(y) > SYMMETRY_RTOL:
        raise SymmetryError("response spectrum lost conjugate symmetry")
    return seq.with_samples(np.fft.fft(y).real / np.sqrt(seq.N))


def circular_convolve(p: PeriodicSequence, h: PeriodicSequence) -> PeriodicSequence:
    """Direct N-point circular convolution ``sum_m p[m] h[n-m]``."""
    if p.N != h.N:
        raise DomainError(f"lengths differ: {p.N} vs {h.N}")
    N = p.N
    x, g = p.samples, h.samples
    out = np.empty(N)
    idx = np.arange(N)
    for n in range(N):
        out[n] = np.dot(x, g[(n - idx) % N])
    return p.with_samples(out)


# ---------------------------------------------------------------------------
# figure of merit

KL_EPS = 1e-12


def generalized_kl(u, v) -> float:
    """``sum(u ln(u/v) - u + v)`` for positive vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DomainError("u and v differ in shape")
    if np.any(u <= 0) or np.any(v <= 0):
        raise DomainError("generalized KL needs strictly positive entries")
    return float(np.sum(u * (np.log(u) - np.log(v)) - u + v))


def _norm(x):
    # scaled so tiny magnitudes do not underflow when squared
    m = np.max(x)
    return 0.0 if m == 0 else float(m * np.linalg.norm(x / m))


def kl_divergence(q1: PeriodicSequence, q2: PeriodicSequence,
                  eps: float = KL_EPS) -> float:
    """Deviation of two responses; each magnitude is scaled by the other
    sequence's L2 norm before the generalized KL sum.  Not symmetric."""
    a = np.abs(np.asarray(getattr(q1, "samples", q1), dtype=float))
    b = np.abs(np.asarray(getattr(q2, "samples", q2), dtype=float))
    if a.shape != b.shape:
        raise DomainError("sequences differ in length")
    na, nb = _norm(a), _norm(b)
    if na == 0 or nb == 0:
        raise DomainError("KL divergence undefined for an all-zero sequence")
    return generalized_kl(a / nb + eps, b / na + eps)
