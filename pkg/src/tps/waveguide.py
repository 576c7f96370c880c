"""Rectangular waveguide in the w domain: TE modes, dispersion and transfer.

Each index ``k`` is an independent time-harmonic-like problem at the
quantized frequency ``w_k``, so the guide acts on a spectrum bin by bin.
The axial wavenumber is ``kz = sqrt(kappa_k^2 - kc^2)`` with
``kappa_k = w_k sqrt(eps mu)``; the positive-index half is evaluated and
the other half follows as ``kz[N+2-k] = -conj(kz[k])``, which keeps the
transfer conjugate-symmetric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import epsilon_0, mu_0

from ._parallel import map_blocks
from .errors import DomainError, SymmetryError
from .sequence import (FrequencyGrid, OhmicGrid, PeriodicSequence, WSpectrum,
                       build_grid, forward_e, inverse_e, is_conjugate_symmetric,
                       ohmic_grid, sa)

#: recurrence order used for propagation unless stated otherwise
DEFAULT_Q = 2


@dataclass(frozen=True)
class WaveguideSpec:
    """Rectangular guide ``a x b`` (metres) of length ``length`` filled with a
    homogeneous medium.  ``sigma`` is the volumetric conductivity of the
    filling; wall losses are not modelled."""

    a: float
    b: float
    length: float = 0.0
    eps: float = epsilon_0
    mu: float = mu_0
    sigma: float = 0.0

    def __post_init__(self):
        if not self.a > self.b > 0:
            raise DomainError(f"need a > b > 0, got a={self.a}, b={self.b}")
        if self.length < 0:
            raise DomainError(f"length must be >= 0, got {self.length}")
        if not (self.eps > 0 and self.mu > 0):
            raise DomainError("eps and mu must be positive")
        if self.sigma < 0:
            raise DomainError("negative conductivity describes gain, not loss")

    @property
    def speed(self) -> float:
        return 1.0 / math.sqrt(self.eps * self.mu)

    def with_length(self, length: float) -> "WaveguideSpec":
        return WaveguideSpec(self.a, self.b, length, self.eps, self.mu, self.sigma)


@dataclass(frozen=True)
class ModeIndex:
    m: int
    l: int

    def __post_init__(self):
        if self.m < 0 or self.l < 0:
            raise DomainError("modal indices must be non-negative")
        if self.m == 0 and self.l == 0:
            raise DomainError("TE00 does not exist")


TE10 = ModeIndex(1, 0)


@dataclass(frozen=True)
class ModalFieldSample:
    position: tuple[float, float, float]
    ex: complex
    ey: complex
    hx: complex
    hy: complex
    hz: complex


def _transverse(mode: ModeIndex, spec: WaveguideSpec):
    return mode.m * math.pi / spec.a, mode.l * math.pi / spec.b


def cutoff(mode: ModeIndex, spec: WaveguideSpec) -> float:
    """Cut-off wavenumber ``sqrt((m pi/a)^2 + (l pi/b)^2)`` in rad/m."""
    if mode.m == 0 and mode.l == 0:
        raise DomainError("TE00 does not exist")
    kx, ky = _transverse(mode, spec)
    return math.hypot(kx, ky)


def cutoff_frequency(mode: ModeIndex, spec: WaveguideSpec) -> float:
    return cutoff(mode, spec) * spec.speed / (2 * math.pi)


def group_velocity(f: float, mode: ModeIndex, spec: WaveguideSpec) -> float:
    """Group velocity of the ideal (continuous-time) guide at ``f`` Hz."""
    fc = cutoff_frequency(mode, spec)
    if f <= fc:
        raise DomainError(f"{f} Hz is below the {fc} Hz cut-off")
    return spec.speed * math.sqrt(1.0 - (fc / f) ** 2)


# ---------------------------------------------------------------------------
# wavenumbers


def _csqrt(z):
    # real negative arguments must land on +i, never on -i from a -0.0 imag
    z = np.asarray(z, dtype=complex)
    z = np.where(z.imag == 0.0, z.real + 0j, z)
    return np.sqrt(z)


def _extend(half: np.ndarray, N: int) -> np.ndarray:
    out = np.empty(N, dtype=complex)
    h = half.size
    out[:h] = half
    out[h:] = -np.conj(half[1:N - h + 1][::-1])
    return out


def _kappa_half(w, o, spec):
    return _csqrt(w * w * spec.eps * spec.mu + 1j * w * spec.mu * o)


def _ohmic_half(grid, spec, ohmic):
    if ohmic is None:
        ohmic = ohmic_grid(spec.sigma, grid.N)
    if ohmic.N != grid.N:
        raise DomainError("ohmic grid and frequency grid lengths differ")
    return np.asarray(ohmic.o[:grid.half])


def wavenumbers(grid: FrequencyGrid, spec: WaveguideSpec,
                ohmic: OhmicGrid | None = None) -> np.ndarray:
    """Medium wavenumber ``kappa_k`` for every index (rad/m).

    With conductivity, ``kappa^2 = w^2 eps mu + i w mu o_k`` on the branch
    that decays along +z.
    """
    w = np.asarray(grid.w[:grid.half])
    return _extend(_kappa_half(w, _ohmic_half(grid, spec, ohmic), spec), grid.N)


def lossy_wavenumber(k: int, grid: FrequencyGrid, ohmic: OhmicGrid,
                     spec: WaveguideSpec) -> complex:
    if not 1 <= k <= grid.N:
        raise IndexError(f"k={k} outside 1..{grid.N}")
    return complex(wavenumbers(grid, spec, ohmic)[k - 1])


def kz_vector(grid: FrequencyGrid, mode: ModeIndex, spec: WaveguideSpec,
              ohmic: OhmicGrid | None = None, workers: int | None = 1) -> np.ndarray:
    """Axial wavenumber of ``mode`` at every index.

    Propagating bins are real with the sign of ``SGN(k)``; evanescent bins
    are ``+i |kz|`` so that ``exp(i kz z)`` decays for ``z > 0``.
    """
    kc2 = cutoff(mode, spec) ** 2
    w = np.asarray(grid.w[:grid.half])
    o = _ohmic_half(grid, spec, ohmic)

    def block(j):
        kappa = _kappa_half(w[j], o[j], spec)
        return _csqrt(kappa * kappa - kc2)

    return _extend(map_blocks(block, grid.half, workers), grid.N)


def kz(k: int, grid: FrequencyGrid, mode: ModeIndex, spec: WaveguideSpec) -> complex:
    if not 1 <= k <= grid.N:
        raise IndexError(f"k={k} outside 1..{grid.N}")
    return complex(kz_vector(grid, mode, spec)[k - 1])


# ---------------------------------------------------------------------------
# fields and propagation


def mode_fields(k: int, mode: ModeIndex, spec: WaveguideSpec, amplitude: complex,
                position, grid: FrequencyGrid) -> ModalFieldSample:
    """TE_ml field components of index ``k`` at ``position = (x, y, z)``.

    The transverse magnetic components carry the factors ``kx`` and ``ky``
    that follow from the transverse-field relations; without them the wave
    impedance ``-w mu / kz`` would not come out.
    """
    x, y, z = (float(v) for v in position)
    kx, ky = _transverse(mode, spec)
    kc2 = kx * kx + ky * ky
    w = float(grid.w[k - 1])
    beta = kz(k, grid, mode, spec)
    prop = amplitude * np.exp(1j * beta * z)
    cx, sx = math.cos(kx * x), math.sin(kx * x)
    cy, sy = math.cos(ky * y), math.sin(ky * y)
    mu = spec.mu
    return ModalFieldSample(
        position=(x, y, z),
        ex=complex(prop * (-1j * mu * ky * w / kc2) * cx * sy),
        ey=complex(prop * (1j * mu * kx * w / kc2) * sx * cy),
        hx=complex(prop * (-1j * beta * kx / kc2) * sx * cy),
        hy=complex(prop * (-1j * beta * ky / kc2) * cx * sy),
        hz=complex(prop * cx * cy),
    )


def transfer(grid: FrequencyGrid, mode: ModeIndex, spec: WaveguideSpec,
             ohmic: OhmicGrid | None = None, workers: int | None = 1) -> np.ndarray:
    """Per-index transfer ``exp(i kz L)`` of a guide section.

    For even ``N`` the index ``N/2 + 1`` is its own conjugate partner; only
    the real part of its transfer is kept so the output stays real.
    """
    beta = kz_vector(grid, mode, spec, ohmic, workers)
    L = spec.length
    t = map_blocks(lambda j: np.exp(1j * beta[j] * L), grid.N, workers)
    if grid.N % 2 == 0:
        nyq = grid.N // 2
        t[nyq] = t[nyq].real
    return t


def propagate(spec_in: WSpectrum, mode: ModeIndex, spec: WaveguideSpec,
              grid: FrequencyGrid, ohmic: OhmicGrid | None = None,
              workers: int | None = 1) -> WSpectrum:
    """Spectrum after travelling ``spec.length`` metres along the guide."""
    if grid.N != spec_in.N:
        raise DomainError(f"grid has {grid.N} indices, spectrum has {spec_in.N}")
    if not is_conjugate_symmetric(spec_in):
        raise SymmetryError("input spectrum is not conjugate-symmetric")
    if spec.length == 0.0:
        return spec_in
    t = transfer(grid, mode, spec, ohmic, workers)
    # mirror the positive half so the output is exactly symmetric even where
    # the input carries only round-off
    out = np.asarray(spec_in.coefficients) * t
    N, half = grid.N, grid.half
    out[half:] = np.conj(out[1:N - half + 1][::-1])
    return spec_in.with_coefficients(out)


def propagate_sequence(seq: PeriodicSequence, mode: ModeIndex, spec: WaveguideSpec,
                       q: int = DEFAULT_Q, workers: int | None = 1) -> PeriodicSequence:
    """Time-domain output of the guide for a periodic input field.

    A zero-length guide returns ``seq`` itself, sample for sample.
    """
    if spec.length == 0.0:
        return seq
    grid = build_grid(seq.N, seq.dt, q)
    return inverse_e(propagate(forward_e(seq), mode, spec, grid, workers=workers))


# ---------------------------------------------------------------------------
# numerical dispersion


def _check_k(k, grid):
    if not 1 <= k <= grid.N:
        raise IndexError(f"k={k} outside 1..{grid.N}")
    if k == 1:
        raise DomainError("relative error undefined at DC")


def dispersion_error_exact(k: int, grid: FrequencyGrid) -> float:
    """Relative error ``|w_k - omega_k| / omega_k`` of the free-space
    propagation constant."""
    _check_k(k, grid)
    w = abs(float(grid.w[k - 1]))
    om = abs(float(grid.omega_limit[k - 1]))
    return abs(w - om) / om


def dispersion_error_beta(k: int, grid: FrequencyGrid, mode: ModeIndex,
                          spec: WaveguideSpec) -> float:
    """Relative error of the guide's axial wavenumber, quantized vs ideal."""
    _check_k(k, grid)
    kc2 = cutoff(mode, spec) ** 2
    root = math.sqrt(spec.eps * spec.mu)
    num = complex(_csqrt((abs(grid.w[k - 1]) * root) ** 2 - kc2))
    ref = complex(_csqrt((abs(grid.omega_limit[k - 1]) * root) ** 2 - kc2))
    return abs(num - ref) / abs(ref)


def dispersion_error_nbw(nbw, q: int):
    """Free-space relative error at the band edge for a given NBW.

    Uses the grid-free form: with ``theta = pi NBW / 2`` the ratio
    ``w/omega`` starts at ``Sa(theta)`` and is refined by the recurrence.
    """
    theta = np.pi * np.asarray(nbw, dtype=float) / 2
    r0 = sa(theta)
    r = r0
    for _ in range(q):
        r = r0 / sa(r * theta)
    return 1.0 - r


_APPROX = {0: (np.pi ** 2 / 24, 2), 1: (np.pi ** 4 / 288, 4),
           2: (np.pi ** 6 / 3456, 6)}


def dispersion_error_approx(nbw, q: int):
    """Leading-order error ``c_q NBW^(2q+2)`` for ``q`` in 0, 1, 2."""
    if q not in _APPROX:
        raise DomainError(f"closed-form error known only for q <= 2, got {q}")
    nbw = np.asarray(nbw, dtype=float)
    if np.any((nbw <= 0) | (nbw > 1)):
        raise DomainError("NBW must lie in (0, 1]")
    c, p = _APPROX[q]
    out = c * nbw ** p
    return float(out) if out.ndim == 0 else out
