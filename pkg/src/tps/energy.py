"""Poynting vector of periodic fields in time and in the w domain.

The time average pairs each electric sample with the mean of the two
magnetic samples around it.  In the w domain the same average is a
weighted sum over the non-redundant half of the indices; it only agrees
with the time form when the magnetic field is mapped with its own
half-step operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import epsilon_0, mu_0

from .errors import DomainError, KindError
from .sequence import (FrequencyGrid, OhmicGrid, PeriodicSequence, WSpectrum,
                       forward_e, forward_h, half_length)


@dataclass(frozen=True)
class FieldPair:
    """Electric (V/m) and magnetic (A/m) samples, shape ``(3, N)`` each.

    ``H[:, n]`` is sampled half a step after ``E[:, n]``.
    """

    E: np.ndarray
    H: np.ndarray
    dt: float

    def __post_init__(self):
        E = np.array(self.E, dtype=float)
        H = np.array(self.H, dtype=float)
        if E.ndim != 2 or E.shape[0] != 3 or E.shape != H.shape:
            raise DomainError(f"E and H must both be (3, N), got {E.shape} and {H.shape}")
        if not (np.all(np.isfinite(E)) and np.all(np.isfinite(H))):
            raise DomainError("field samples must be finite")
        if not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        E.setflags(write=False)
        H.setflags(write=False)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "H", H)

    @classmethod
    def from_sequences(cls, E, H) -> "FieldPair":
        seqs = list(E) + list(H)
        dts = {s.dt for s in seqs}
        if len(dts) != 1 or len({s.N for s in seqs}) != 1:
            raise DomainError("all six components must share N and dt")
        return cls(np.stack([s.samples for s in E]),
                   np.stack([s.samples for s in H]), dts.pop())

    @property
    def N(self) -> int:
        return self.E.shape[1]

    def spectra(self):
        """Electric and magnetic w-domain triplets."""
        e = tuple(forward_e(PeriodicSequence(c, self.dt)) for c in self.E)
        h = tuple(forward_h(PeriodicSequence(c, self.dt)) for c in self.H)
        return e, h


def delta_weight(k: int, N: int) -> int:
    """Multiplicity of index ``k`` in the half-range sums: DC and, for even
    ``N``, index ``N/2 + 1`` stand alone; every other index also accounts
    for its conjugate partner."""
    if not 1 <= k <= half_length(N):
        raise IndexError(f"k={k} outside 1..{half_length(N)} for N={N}")
    if k == 1 or (N % 2 == 0 and k == N // 2 + 1):
        return 1
    return 2


def _weights(N: int) -> np.ndarray:
    h = half_length(N)
    d = np.full(h, 2.0)
    d[0] = 1.0
    if N % 2 == 0:
        d[-1] = 1.0
    return d * np.cos(np.pi * np.arange(h) / N)


def time_avg_poynting(fp: FieldPair) -> np.ndarray:
    """Time-averaged Poynting vector (W/m^2) from the samples."""
    H_mid = 0.5 * (np.roll(fp.H, 1, axis=1) + fp.H)
    return np.cross(fp.E, H_mid, axis=0).sum(axis=1) / fp.N


def _stack(triplet, kind):
    if len(triplet) != 3:
        raise DomainError("expected three field components")
    for s in triplet:
        if s.kind != kind:
            raise KindError(f"expected {kind} spectra, got {s.kind}")
    N = {s.N for s in triplet}
    if len(N) != 1:
        raise DomainError("components differ in length")
    return np.stack([s.coefficients for s in triplet])


def complex_poynting(e, h) -> np.ndarray:
    """w-domain complex Poynting vector; its real part is the time average."""
    E = _stack(e, "electric")
    H = _stack(h, "magnetic")
    if E.shape != H.shape:
        raise DomainError("electric and magnetic spectra differ in length")
    N = E.shape[1]
    half = half_length(N)
    c = np.cross(E[:, :half], np.conj(H[:, :half]), axis=0)
    return c @ _weights(N) / N


def w_domain_poynting(e, h) -> np.ndarray:
    """Time-averaged Poynting vector evaluated from w-domain triplets."""
    return complex_poynting(e, h).real


def power_densities(e, h, grid: FrequencyGrid, ohmic: OhmicGrid | None = None,
                    eps: float = epsilon_0, mu: float = mu_0):
    """Electric, magnetic and Ohmic power densities ``(p_e, p_h, p_j)``.

    Together they balance the divergence of the complex Poynting vector,
    ``-div s = i (p_e - p_h) + p_j``.
    """
    E = _stack(e, "electric")
    H = _stack(h, "magnetic")
    N = E.shape[1]
    if grid.N != N:
        raise DomainError("grid length does not match the spectra")
    half = half_length(N)
    wt = _weights(N) / N
    w = np.asarray(grid.w[:half])
    e2 = np.sum(np.abs(E[:, :half]) ** 2, axis=0)
    h2 = np.sum(np.abs(H[:, :half]) ** 2, axis=0)
    p_e = float(np.sum(wt * w * eps * e2))
    p_h = float(np.sum(wt * w * mu * h2))
    if ohmic is None:
        p_j = 0.0
    else:
        if ohmic.N != N:
            raise DomainError("ohmic grid length does not match the spectra")
        p_j = float(np.sum(wt * np.asarray(ohmic.o[:half]) * e2))
    return p_e, p_h, p_j
