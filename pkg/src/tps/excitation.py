"""Periodic excitations built from transient pulse prototypes.

A period holds ``K`` unit intervals (UI) of ``Ns`` samples each.  One pulse
occupies the first UI, centred at ``Ts/2``; the rest of the period is the
quiet tail that the periodic wrap joins to the next pulse.  Shape
parameters are dimensionless, so the number of occupied w-domain indices
depends only on the shape and ``K``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .sequence import PeriodicSequence, build_grid, half_length

ShapeKind = Literal["raised-cosine", "trapezoid", "gaussian", "modulated-gaussian"]

# slack for floor() on products such as (1/r) * K that should be integers
_FLOOR_SLACK = 1e-9


@dataclass(frozen=True)
class PulseShape:
    """Waveform prototype and its cut-off parameters.

    Only the fields belonging to ``kind`` are meaningful: ``alpha`` for the
    raised cosine, ``r`` for the trapezoid, ``tp``/``fp`` for the Gaussian and
    additionally ``carrier_cycles_per_ui`` for the modulated Gaussian.
    """

    kind: ShapeKind
    alpha: float | None = None
    r: float | None = None
    tp: float | None = None
    fp: float | None = None
    carrier_cycles_per_ui: float | None = None

    def __post_init__(self):
        k = self.kind
        if k == "raised-cosine":
            _need(self.alpha, "alpha")
            if not 0.0 <= self.alpha <= 1.0:
                raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")
        elif k == "trapezoid":
            _need(self.r, "r")
            if not 0.0 < self.r <= 0.5:
                raise DomainError(f"r must lie in (0, 0.5], got {self.r}")
        elif k in ("gaussian", "modulated-gaussian"):
            _need(self.tp, "tp")
            _need(self.fp, "fp")
            for name in ("tp", "fp"):
                v = getattr(self, name)
                if not 0.0 < v < 1.0:
                    raise DomainError(f"{name} must lie in (0, 1), got {v}")
            if k == "modulated-gaussian":
                _need(self.carrier_cycles_per_ui, "carrier_cycles_per_ui")
                if not self.carrier_cycles_per_ui > 0:
                    raise DomainError("carrier_cycles_per_ui must be positive, "
                                      f"got {self.carrier_cycles_per_ui}")
        else:
            raise DomainError(f"unknown pulse kind {k!r}")

    @classmethod
    def raised_cosine(cls, alpha):
        return cls("raised-cosine", alpha=alpha)

    @classmethod
    def trapezoid(cls, r):
        return cls("trapezoid", r=r)

    @classmethod
    def gaussian(cls, tp, fp):
        return cls("gaussian", tp=tp, fp=fp)

    @classmethod
    def modulated_gaussian(cls, tp, fp, carrier_cycles_per_ui):
        return cls("modulated-gaussian", tp=tp, fp=fp,
                   carrier_cycles_per_ui=carrier_cycles_per_ui)

    @classmethod
    def from_dict(cls, d: dict) -> "PulseShape":
        """Build from the JSON shape record; ``bt`` may replace ``tp``."""
        kind = d.get("kind")
        if kind is None:
            raise DomainError("shape record needs a 'kind' field")
        tp = d.get("tp")
        if tp is None and "bt" in d:
            tp = tp_from_bt(d["bt"])
        return cls(kind, alpha=d.get("alpha"), r=d.get("r"), tp=tp,
                   fp=d.get("fp"),
                   carrier_cycles_per_ui=d.get("carrier_cycles_per_ui"))

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in ("alpha", "r", "tp", "fp", "carrier_cycles_per_ui"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        return out


def _need(value, name):
    if value is None:
        raise DomainError(f"missing shape parameter {name!r}")


@dataclass(frozen=True)
class PeriodicExcitation:
    sequence: PeriodicSequence
    shape: PulseShape
    Ns: int
    K: int
    kmax: int
    nbw: float
    cutoff_hz: float
    warnings: tuple[str, ...] = ()

    @property
    def N(self) -> int:
        return self.sequence.N

    def metadata(self) -> dict:
        return {
            "N": self.N, "Ns": self.Ns, "K": self.K,
            "dt_seconds": self.sequence.dt, "kmax": self.kmax, "nbw": self.nbw,
            "cutoff_hz": self.cutoff_hz, "shape": self.shape.to_dict(),
            "warnings": list(self.warnings),
        }


# ---------------------------------------------------------------------------
# frequency-independent scale


def tp_from_bt(bt: float) -> float:
    """Time truncation level of a Gaussian with time-bandwidth product ``bt``."""
    if not bt > 0:
        raise DomainError(f"BT must be positive, got {bt}")
    return math.exp(-(math.pi * bt / math.sqrt(2.0 * math.log(2.0))) ** 2)


def _baseband_gaussian_g(tp, fp):
    return (2.0 / math.pi) * math.sqrt(math.log(tp) * math.log(fp))


def g_factor(shape: PulseShape) -> float:
    """Cut-off frequency in units of the symbol rate, ``f_c * Ts``.

    raised cosine ``(1+alpha)/2`` (band edge), trapezoid ``1/r`` (first null
    of the ramp spectrum), Gaussian ``(2/pi) sqrt(ln tp ln fp)``.  The
    modulated Gaussian adds its carrier, in cycles per UI, to the baseband
    value.
    """
    if shape.kind == "raised-cosine":
        return (1.0 + shape.alpha) / 2.0
    if shape.kind == "trapezoid":
        return 1.0 / shape.r
    g = _baseband_gaussian_g(shape.tp, shape.fp)
    if shape.kind == "modulated-gaussian":
        g += shape.carrier_cycles_per_ui
    return g


def _floor(x):
    return math.floor(x * (1.0 + _FLOOR_SLACK))


def _kmax_explicit(shape, K):
    if shape.kind == "modulated-gaussian":
        k_carrier = round(shape.carrier_cycles_per_ui * K) + 1
        k_base = _floor(_baseband_gaussian_g(shape.tp, shape.fp) * K)
        return k_carrier + k_base - 1
    return _floor(g_factor(shape) * K)


def kmax_explicit(shape: PulseShape, K: int) -> int:
    """``floor(g K)``, the occupied index count in the limit of exact
    differencing.  Clamped to 1 (DC) with a warning when the floor is 0."""
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    k = _kmax_explicit(shape, K)
    if k < 1:
        warnings.warn(f"floor(g*K) = {k}; clamping kmax to 1", stacklevel=2)
        k = 1
    return k


def kmax_numeric(shape: PulseShape, K: int, Ns: int, q: int = 2) -> int:
    """Index count found by scanning the order-``q`` quantized grid.

    Counts the indices above DC whose quantized frequency does not exceed
    the cut-off, which is what ``floor(g K)`` counts when the grid is exact.
    The scan is done in units where ``Ts = 1``; the result does not depend
    on the physical time step.
    """
    if K < 1 or Ns < 1:
        raise DomainError("K and Ns must be >= 1")
    N = K * Ns
    grid = build_grid(N, 1.0 / Ns, q)
    f_scaled = grid.w[:grid.half] * K / (2 * np.pi)  # w T / (2 pi)
    limit = g_factor(shape) * K * (1.0 + _FLOOR_SLACK)
    inside = np.nonzero(f_scaled <= limit)[0]
    return max(int(inside[-1]), 1)


def check_sampling(kmax: int, T: float, fs: float) -> bool:
    """Anti-aliasing stipulation ``fs >= 2 (kmax - 1) / T``."""
    if not (T > 0 and fs > 0):
        raise DomainError("T and fs must be positive")
    return fs * T >= 2 * (kmax - 1) * (1.0 - 1e-12)


# ---------------------------------------------------------------------------
# waveform synthesis


def raised_cosine_spectrum(f, alpha):
    """Raised-cosine spectrum, 1 at DC; ``f`` in units of the symbol rate."""
    f = np.abs(np.asarray(f, dtype=float))
    lo, hi = (1 - alpha) / 2, (1 + alpha) / 2
    out = np.zeros_like(f)
    out[f <= lo] = 1.0
    if alpha > 0:
        band = (f > lo) & (f <= hi)
        out[band] = 0.5 * (1 + np.cos(np.pi / alpha * (f[band] - lo)))
    return out


def _raised_cosine_wave(alpha, Ns, K):
    # exact periodic summation: a band-limited pulse repeated every K UIs has
    # harmonics m/T with weights taken straight from its spectrum
    N = Ns * K
    m = np.arange(1, N // 2 + 1)
    H = raised_cosine_spectrum(m / K, alpha)
    used = np.nonzero(H)[0]
    n = np.arange(N)
    phase = 2 * np.pi * np.outer(n - Ns / 2.0, m[used]) / N
    x = 1.0 + 2.0 * np.cos(phase) @ H[used]
    peak = 1.0 + 2.0 * H[used].sum()
    return x / peak


def prototype(shape: PulseShape, tau):
    """Finite-support prototypes at ``tau = t / Ts``, support ``[0, 1]``."""
    tau = np.asarray(tau, dtype=float)
    if shape.kind == "trapezoid":
        return np.clip(np.minimum(tau, 1.0 - tau) / shape.r, 0.0, 1.0)
    if shape.kind in ("gaussian", "modulated-gaussian"):
        u = tau - 0.5
        # envelope equals tp at the UI edges
        env = np.where(np.abs(u) <= 0.5,
                       np.exp(4.0 * math.log(shape.tp) * u * u), 0.0)
        if shape.kind == "modulated-gaussian":
            env = env * np.cos(2 * np.pi * shape.carrier_cycles_per_ui * u)
        return env
    raise DomainError(f"{shape.kind} has no finite-support prototype")


def synth(shape: PulseShape, Ns: int, K: int, dt: float) -> PeriodicExcitation:
    """Sample one pulse per period of ``K`` UIs, ``Ns`` samples per UI."""
    if Ns < 2:
        raise DomainError(f"Ns must be >= 2, got {Ns}")
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    N = Ns * K
    notes = []
    if shape.kind == "raised-cosine":
        x = _raised_cosine_wave(shape.alpha, Ns, K)
    else:
        x = prototype(shape, np.arange(N) / Ns)

    kmax = _kmax_explicit(shape, K)
    if kmax < 1:
        notes.append(f"floor(g*K) = {kmax}; kmax clamped to 1")
        kmax = 1
    T = N * dt
    if not check_sampling(kmax, T, 1.0 / dt):
        notes.append(f"kmax={kmax} exceeds the {half_length(N)} indices resolvable "
                     f"at Ns={Ns}; the spectrum aliases")
    Ts = Ns * dt
    return PeriodicExcitation(
        sequence=PeriodicSequence(x, dt), shape=shape, Ns=Ns, K=K, kmax=kmax,
        nbw=2.0 * (kmax - 1) / N, cutoff_hz=g_factor(shape) / Ts,
        warnings=tuple(notes))
