"""Independent reference computations used only by the tests.

Everything here is written from the defining sums and matrices, without
calling the FFT-based paths in the package.
"""

import math

import mpmath
import numpy as np


def sgn(k, N):
    return 1 if k <= math.ceil((N + 1) / 2) else -1


def te_matrix(N):
    """``(T^e)_{nk} = W^{-(k-1)(n-1)} / sqrt(N)`` with ``W = exp(i 2 pi / N)``."""
    T = np.empty((N, N), dtype=complex)
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            T[n - 1, k - 1] = np.exp(-2j * np.pi * (k - 1) * (n - 1) / N) / math.sqrt(N)
    return T


def th_matrix(N):
    T = np.empty((N, N), dtype=complex)
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            T[n - 1, k - 1] = (sgn(k, N) * np.exp(-2j * np.pi * (k - 1) * (n - 0.5) / N)
                               / math.sqrt(N))
    return T


def dt_matrix(N):
    """First difference: -1 on the diagonal, +1 below it, +1 in the corner."""
    D = -np.eye(N)
    for n in range(1, N):
        D[n, n - 1] = 1.0
    D[0, N - 1] += 1.0
    return D


def avg_matrix(N):
    O = 0.5 * np.eye(N)
    for n in range(1, N):
        O[n, n - 1] += 0.5
    O[0, N - 1] += 0.5
    return O


def forward_e_sum(x):
    N = len(x)
    return np.array([sum(x[n - 1] * np.exp(2j * np.pi * (k - 1) * (n - 1) / N)
                         for n in range(1, N + 1)) / math.sqrt(N)
                     for k in range(1, N + 1)])


def forward_h_sum(x):
    N = len(x)
    return np.array([sgn(k, N) * sum(x[n - 1] * np.exp(2j * np.pi * (k - 1) * (n - 0.5) / N)
                                     for n in range(1, N + 1)) / math.sqrt(N)
                     for k in range(1, N + 1)])


def recurrence_ratio(theta, q, dps=50):
    """``w^(q) / omega`` in high precision at ``theta = pi (k-1)/N``."""
    mpmath.mp.dps = dps
    th = mpmath.mpf(theta)
    sa = lambda x: mpmath.sin(x) / x if x != 0 else mpmath.mpf(1)
    r0 = sa(th)
    r = r0
    for _ in range(q):
        r = r0 / sa(r * th)
    return r


def fixed_point_frequency(k, N, dt, dps=50):
    """Limit of the recurrence: solves ``w Sa(w dt/2) = w^(0)`` by
    bisection in high precision."""
    mpmath.mp.dps = dps
    w0 = 2 / mpmath.mpf(dt) * mpmath.sin(mpmath.pi * (k - 1) / N)
    f = lambda w: (2 / mpmath.mpf(dt)) * mpmath.sin(w * dt / 2) - w0
    return mpmath.findroot(f, (mpmath.mpf(0), mpmath.pi / dt), solver="bisect")


def poynting_loop(E, H):
    """Time-averaged Poynting vector by explicit loop with ``H[0] = H[N]``."""
    N = E.shape[1]
    s = np.zeros(3)
    for n in range(N):
        hm = 0.5 * (H[:, n - 1] + H[:, n])
        s += np.cross(E[:, n], hm)
    return s / N


def circular_convolution_loop(p, h):
    N = len(p)
    return np.array([sum(p[m] * h[(n - m) % N] for m in range(N)) for n in range(N)])


def circulant_matrix(h):
    """Dense ``C[n, m] = h[(n - m) mod N]`` so that ``C @ p`` is the circular
    convolution."""
    h = np.asarray(h)
    N = h.size
    n = np.arange(N)
    return h[(n[:, None] - n[None, :]) % N]
