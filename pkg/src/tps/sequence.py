"""Periodic sequences, circulant difference operators and the w-domain maps.

Index convention: public functions take the 1-based index ``k`` (DC is
``k = 1``); arrays are stored 0-based, so array position ``j`` holds
index ``k = j + 1``.  The conjugate partner of index ``k`` is ``N + 2 - k``,
i.e. array position ``N - j``.

Time-domain samples pair with ``exp(-i w t)``: the electric map is

    e[k] = 1/sqrt(N) * sum_n E[n] * exp(+i 2 pi (k-1)(n-1) / N)

and the magnetic map carries an extra half-sample phase and the sign
function, reflecting the leapfrog offset of the magnetic samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import DomainError, KindError, SymmetryError

Kind = Literal["electric", "magnetic"]

#: relative tolerance for conjugate symmetry in the inverse maps
SYMMETRY_RTOL = 1e-9


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def half_length(N: int) -> int:
    """Number of indices in the positive-sign half, ``ceil((N+1)/2)``."""
    return (N + 2) // 2


def sa(x):
    """Sampling function ``sin(x)/x`` with ``sa(0) = 1``."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x == 0.0, 1.0, x)
    return np.where(x == 0.0, 1.0, np.sin(safe) / safe)


def sgn(k: int, N: int) -> int:
    """Sign function splitting ``1..N`` at ``ceil((N+1)/2)``."""
    if not 1 <= k <= N:
        raise IndexError(f"k={k} outside 1..{N}")
    return 1 if k <= half_length(N) else -1


def sgn_vector(N: int) -> np.ndarray:
    s = np.ones(N)
    s[half_length(N):] = -1.0
    return s


def partner_positions(N: int) -> np.ndarray:
    """0-based position of the conjugate partner of every position."""
    j = np.arange(N)
    return (N - j) % N


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class PeriodicSequence:
    """Real samples of one period, spaced ``dt`` seconds apart."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        x = np.array(self.samples, dtype=float).reshape(-1)
        if x.size < 1:
            raise DomainError("a periodic sequence needs at least one sample")
        if not np.all(np.isfinite(x)):
            raise DomainError("samples must be finite")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f"dt must be positive, got {self.dt}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def N(self) -> int:
        return self.samples.size

    @property
    def T(self) -> float:
        return self.N * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N) * self.dt

    def __len__(self):
        return self.N

    def with_samples(self, samples) -> "PeriodicSequence":
        return PeriodicSequence(samples, self.dt)


@dataclass(frozen=True)
class WSpectrum:
    """Complex w-domain coefficients; ``kind`` names the map that made them."""

    coefficients: np.ndarray
    kind: Kind
    dt: float

    def __post_init__(self):
        c = _frozen(np.asarray(self.coefficients).reshape(-1), complex)
        if self.kind not in ("electric", "magnetic"):
            raise KindError(f"unknown spectrum kind {self.kind!r}")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def N(self) -> int:
        return self.coefficients.size

    def __len__(self):
        return self.N

    def coefficient(self, k: int) -> complex:
        if not 1 <= k <= self.N:
            raise IndexError(f"k={k} outside 1..{self.N}")
        return complex(self.coefficients[k - 1])

    def with_coefficients(self, coefficients) -> "WSpectrum":
        return WSpectrum(coefficients, self.kind, self.dt)


@dataclass(frozen=True)
class FrequencyGrid:
    """Quantized spectrum of order ``q`` next to the ideal circular
    frequencies.

    ``w`` is anti-symmetric (``w[k] = -w[N+2-k]``) while ``omega`` is the
    plain ``2 pi (k-1) / T``.  ``omega_limit`` is the signed limit that
    ``w`` approaches as ``q`` grows.
    """

    N: int
    dt: float
    q: int
    w: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)
    sgn: np.ndarray = field(repr=False)

    @property
    def T(self) -> float:
        return self.N * self.dt

    @property
    def half(self) -> int:
        return half_length(self.N)

    @property
    def omega_limit(self) -> np.ndarray:
        lim = self.omega.copy()
        pos = np.arange(self.N)
        second = pos >= self.half
        lim[second] = -self.omega[self.N - pos[second]]
        return lim

    def frequency(self, k: int) -> float:
        """Quantized frequency of index ``k`` in Hz."""
        return float(self.w[k - 1] / (2 * np.pi))


@dataclass(frozen=True)
class OhmicGrid:
    """Per-index conductivity factor of the lossy w-domain equations."""

    o: np.ndarray
    sigma: float

    @property
    def N(self) -> int:
        return self.o.size


# ---------------------------------------------------------------------------
# quantized spectrum


def _quantized_half(N: int, dt: float, q: int) -> np.ndarray:
    theta = np.pi * np.arange(half_length(N)) / N
    w0 = (2.0 / dt) * np.sin(theta)
    w = w0
    for _ in range(q):
        w = w0 / sa(w * dt / 2.0)
    return w


def _check_grid_args(N, dt, q):
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if int(q) != q or q < 0:
        raise DomainError(f"q must be a non-negative integer, got {q}")


def quantized_frequency(k: int, N: int, dt: float, q: int = 0) -> float:
    """Quantized circular frequency ``w_k`` after ``q`` recurrences (rad/s).

    ``q = 0`` gives the eigen-frequency of the first-order difference,
    ``(2/dt) sin(pi (k-1)/N) SGN(k)``.  Each recurrence divides that value by
    ``Sa(w dt/2)`` of the previous iterate, which converges to the ideal
    frequency ``2 pi (k-1) / T``.
    """
    _check_grid_args(N, dt, q)
    if not 1 <= k <= N:
        raise IndexError(f"k={k} outside 1..{N}")
    half = half_length(N)
    if k <= half:
        j = k - 1
        sign = 1.0
    else:
        j = N + 1 - k
        sign = -1.0
    theta = np.pi * j / N
    w0 = (2.0 / dt) * np.sin(theta)
    w = w0
    for _ in range(q):
        w = w0 / float(sa(w * dt / 2.0))
    return sign * float(w)


def build_grid(N: int, dt: float, q: int = 0) -> FrequencyGrid:
    """Quantized frequencies for every index of a length-``N`` sequence.

    Only the positive half is iterated; the rest follows by
    anti-symmetry so that ``w[k] == -w[N+2-k]`` holds exactly.
    """
    _check_grid_args(N, dt, q)
    N, q = int(N), int(q)
    half = half_length(N)
    w_half = _quantized_half(N, dt, q)
    w = np.empty(N)
    w[:half] = w_half
    w[half:] = -w_half[1:N - half + 1][::-1]
    omega = 2 * np.pi * np.arange(N) / (N * dt)
    return FrequencyGrid(N=N, dt=float(dt), q=q, w=_frozen(w),
                         omega=_frozen(omega), sgn=_frozen(sgn_vector(N)))


def ohmic_grid(sigma: float, N: int) -> OhmicGrid:
    """Conductivity weights ``o_k = sigma cos(pi (k-1)/N) SGN(k)``."""
    if sigma < 0:
        raise DomainError("negative conductivity describes gain, not loss")
    j = np.arange(N)
    # fold onto the positive half: cos(pi j/N) SGN = cos(pi (N-j)/N) there
    m = np.where(j < half_length(N), j, N - j)
    o = np.maximum(sigma * np.cos(np.pi * m / N), 0.0)
    return OhmicGrid(o=_frozen(o), sigma=float(sigma))


# ---------------------------------------------------------------------------
# transforms


def _half_shift(N: int) -> np.ndarray:
    """``SGN(k) exp(i pi (k-1)/N)``: magnetic coefficient per electric one."""
    return sgn_vector(N) * np.exp(1j * np.pi * np.arange(N) / N)


def forward_e_array(x, axis=-1):
    """Electric map of real samples along ``axis`` (no validation).

    Built from the real-input FFT and mirrored, so the result is exactly
    conjugate-symmetric rather than symmetric up to round-off.
    """
    x = np.moveaxis(np.asarray(x, dtype=float), axis, -1)
    N = x.shape[-1]
    h = half_length(N)
    e = np.empty(x.shape, dtype=complex)
    e[..., :h] = np.conj(np.fft.rfft(x, axis=-1)) / np.sqrt(N)
    e[..., h:] = np.conj(e[..., 1:N - h + 1][..., ::-1])
    return np.moveaxis(e, -1, axis)


def forward_h_array(x, axis=-1):
    x = np.asarray(x, dtype=float)
    N = x.shape[axis]
    e = forward_e_array(x, axis=axis)
    shape = [1] * x.ndim
    shape[axis] = N
    return e * _half_shift(N).reshape(shape)


def forward_e(seq: PeriodicSequence) -> WSpectrum:
    """Map electric-field samples to the w domain."""
    return WSpectrum(forward_e_array(seq.samples), "electric", seq.dt)


def forward_h(seq: PeriodicSequence) -> WSpectrum:
    """Map magnetic-field samples (taken half a step late) to the w domain."""
    return WSpectrum(forward_h_array(seq.samples), "magnetic", seq.dt)


def symmetry_residual(coefficients) -> float:
    """Largest departure from conjugate symmetry, relative to the largest
    coefficient.  Covers the partner pairs, the DC bin and, for even ``N``,
    the bin at ``N/2 + 1``, all of which must be real."""
    c = np.asarray(coefficients, dtype=complex)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return 0.0
    pair = c[partner_positions(c.size)]
    return float(np.max(np.abs(pair - np.conj(c))) / scale)


def _electric_equivalent(spec: WSpectrum) -> np.ndarray:
    if spec.kind == "electric":
        return np.asarray(spec.coefficients)
    return spec.coefficients * np.conj(_half_shift(spec.N))


def is_conjugate_symmetric(spec: WSpectrum, rtol: float = SYMMETRY_RTOL) -> bool:
    """Whether ``spec`` is the image of a real sequence under its map.

    A magnetic spectrum is tested through its electric equivalent; that
    matters only at the even-``N`` bin ``N/2 + 1``, where the half-sample
    phase makes the magnetic coefficient purely imaginary.
    """
    return symmetry_residual(_electric_equivalent(spec)) <= rtol


def _inverse(e: np.ndarray, rtol: float) -> np.ndarray:
    res = symmetry_residual(e)
    if res > rtol:
        raise SymmetryError(
            f"spectrum is not conjugate-symmetric (relative residual {res:.3g})")
    N = e.size
    return np.fft.fft(e).real / np.sqrt(N)


def inverse_e(spec: WSpectrum, rtol: float = SYMMETRY_RTOL) -> PeriodicSequence:
    """Real samples whose electric map is ``spec``."""
    if spec.kind != "electric":
        raise KindError("inverse_e needs an electric spectrum")
    return PeriodicSequence(_inverse(np.asarray(spec.coefficients), rtol), spec.dt)


def inverse_h(spec: WSpectrum, rtol: float = SYMMETRY_RTOL) -> PeriodicSequence:
    """Real samples whose magnetic map is ``spec``."""
    if spec.kind != "magnetic":
        raise KindError("inverse_h needs a magnetic spectrum")
    return PeriodicSequence(_inverse(_electric_equivalent(spec), rtol), spec.dt)


def dt_eigenvalues(N: int) -> np.ndarray:
    """Diagonal of the first-order difference in the w domain,
    ``2i sin(pi (k-1)/N) SGN(k)``; equals ``i w_k dt`` at ``q = 0``."""
    return 2j * np.sin(np.pi * np.arange(N) / N) * sgn_vector(N)


def dtt_eigenvalues(N: int) -> np.ndarray:
    """Diagonal of ``D_t D_t^+`` in the electric basis, ``4 sin^2(pi (k-1)/N)``."""
    return 4.0 * np.sin(np.pi * np.arange(N) / N) ** 2


# ---------------------------------------------------------------------------
# circulant stencils


def _require_two(seq):
    if seq.N < 2:
        raise DomainError("difference operators need N >= 2")


def apply_dt(seq: PeriodicSequence,
             which: Literal["h-curl", "e-curl"] = "h-curl") -> PeriodicSequence:
    """Periodic first difference.

    ``"h-curl"`` applies ``D_t`` (``y[n] = x[n-1] - x[n]``), the operator
    acting on the magnetic samples; ``"e-curl"`` applies its transpose
    (``y[n] = x[n+1] - x[n]``), which acts on the electric samples.
    """
    _require_two(seq)
    x = seq.samples
    if which == "h-curl":
        y = np.roll(x, 1) - x
    elif which == "e-curl":
        y = np.roll(x, -1) - x
    else:
        raise ValueError(f"which must be 'h-curl' or 'e-curl', got {which!r}")
    return seq.with_samples(y)


def apply_dtt(seq: PeriodicSequence) -> PeriodicSequence:
    """``D_t D_t^+``: the periodic stencil ``{-1, 2, -1}``."""
    _require_two(seq)
    x = seq.samples
    return seq.with_samples(2.0 * x - np.roll(x, 1) - np.roll(x, -1))


def apply_avg(seq: PeriodicSequence) -> PeriodicSequence:
    """Two-point average ``(x[n-1] + x[n]) / 2`` with periodic wrap."""
    _require_two(seq)
    x = seq.samples
    return seq.with_samples(0.5 * (np.roll(x, 1) + x))
