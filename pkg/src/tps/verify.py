"""Self-checks of the invariants each module promises.

``run_checks`` returns one :class:`Check` per invariant with its largest
residual.  ``fault="symmetry"`` maps the magnetic field with the electric
operator, which must make the energy identity fail.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import energy, excitation, network, sequence, waveguide
from .sequence import PeriodicSequence, WSpectrum


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float
    tolerance: float

    def as_dict(self):
        return asdict(self)


def _check(name, residual, tol):
    return Check(name, bool(residual < tol), float(residual), tol)


def _basis(N, kind):
    n = np.arange(N)[:, None]
    j = np.arange(N)[None, :]
    if kind == "electric":
        return np.exp(-2j * np.pi * j * n / N) / np.sqrt(N)
    return (sequence.sgn_vector(N)[None, :]
            * np.exp(-2j * np.pi * j * (n + 0.5) / N) / np.sqrt(N))


def _stencil_columns(cols, op):
    # apply a real circulant stencil to complex columns
    out = np.empty_like(cols)
    for c in range(cols.shape[1]):
        re = op(PeriodicSequence(cols[:, c].real, 1.0)).samples
        im = op(PeriodicSequence(cols[:, c].imag, 1.0)).samples
        out[:, c] = re + 1j * im
    return out


def check_round_trip(rng, sizes=(*range(1, 65), 729, 4096)):
    worst = 0.0
    for N in sizes:
        x = PeriodicSequence(rng.standard_normal(N), 1.0)
        for fwd, inv in ((sequence.forward_e, sequence.inverse_e),
                         (sequence.forward_h, sequence.inverse_h)):
            worst = max(worst, np.max(np.abs(inv(fwd(x)).samples - x.samples)))
    return _check("transform round trip", worst, 1e-12)


def check_conjugate_symmetry(rng, sizes=range(1, 65)):
    worst = 0.0
    for N in sizes:
        x = PeriodicSequence(rng.standard_normal(N), 1.0)
        e = sequence.forward_e(x).coefficients
        worst = max(worst, sequence.symmetry_residual(e))
    return _check("conjugate symmetry", worst, 1e-12)


def check_diagonalization(sizes=range(2, 65)):
    w1 = w2 = 0.0
    for N in sizes:
        Te, Th = _basis(N, "electric"), _basis(N, "magnetic")
        A = Te.conj().T @ _stencil_columns(Th, sequence.apply_dt)
        w1 = max(w1, np.max(np.abs(A - np.diag(sequence.dt_eigenvalues(N)))))
        B = Te.conj().T @ _stencil_columns(Te, sequence.apply_dtt)
        w2 = max(w2, np.max(np.abs(B - np.diag(sequence.dtt_eigenvalues(N)))))
    return [_check("first difference diagonal", w1, 1e-10),
            _check("second difference diagonal", w2, 1e-10)]


def energy_residual(fp: energy.FieldPair, fault=None) -> float:
    """Mismatch of time and w-domain Poynting averages, scaled by
    ``|E| |H| / N`` (an upper bound of every component)."""
    e, h = fp.spectra()
    if fault == "symmetry":
        h = tuple(WSpectrum(sequence.forward_e(PeriodicSequence(c, fp.dt)).coefficients,
                            "magnetic", fp.dt) for c in fp.H)
    s_t = energy.time_avg_poynting(fp)
    s_w = energy.w_domain_poynting(e, h)
    scale = np.linalg.norm(fp.E) * np.linalg.norm(fp.H) / fp.N
    return float(np.max(np.abs(s_t - s_w)) / scale)


def check_energy(rng, trials=10, sizes=range(2, 65), fault=None):
    worst = 0.0
    for N in sizes:
        for _ in range(trials):
            fp = energy.FieldPair(rng.standard_normal((3, N)),
                                  rng.standard_normal((3, N)), 1.0)
            worst = max(worst, energy_residual(fp, fault))
    return _check("energy identity", worst, 1e-11)


def check_convolution(rng, sizes=(16, 250), trials=5, workers=1):
    worst = 0.0
    for N in sizes:
        grid = sequence.build_grid(N, 1.0, 2)
        for _ in range(trials):
            p = PeriodicSequence(rng.standard_normal(N), 1.0)
            h = PeriodicSequence(rng.standard_normal(N), 1.0)
            t = network.WTransfer.from_impulse_response(h, grid)
            a = network.respond(p, t, workers).samples
            b = network.circular_convolve(p, h).samples
            worst = max(worst, np.max(np.abs(a - b)) / np.max(np.abs(b)))
    return _check("convolution equivalence", worst, 1e-10)


def check_dispersion_slopes():
    N = 20000
    m = np.unique(np.round(np.geomspace(0.02, 0.2, 12) * N / 2).astype(int))
    nbw = 2 * m / N
    worst = 0.0
    for q, slope in ((0, 2.0), (1, 4.0), (2, 6.0)):
        grid = sequence.build_grid(N, 1.0, q)
        p = np.array([waveguide.dispersion_error_exact(int(j) + 1, grid) for j in m])
        fit = np.polyfit(np.log(nbw), np.log(p), 1)[0]
        worst = max(worst, abs(fit - slope))
    return _check("dispersion slope law", worst, 0.1)


def check_kmax():
    rc = excitation.kmax_explicit(excitation.PulseShape.raised_cosine(1.0), 10)
    ga = excitation.kmax_explicit(excitation.PulseShape.gaussian(0.01, 0.01), 5)
    return _check("kmax reproduction", abs(rc - 10) + abs(ga - 14), 0.5)


def check_lossless_magnitude(workers=1):
    shape = excitation.PulseShape.modulated_gaussian(0.01, 0.1, 5 / 3)
    exc = excitation.synth(shape, 729, 3, (1 / 1.5e9) / 729)
    wg = waveguide.WaveguideSpec(72.14e-3, 34.04e-3, 0.42)
    grid = sequence.build_grid(exc.N, exc.sequence.dt, 2)
    e = sequence.forward_e(exc.sequence)
    out = waveguide.propagate(e, waveguide.TE10, wg, grid, workers=workers)
    beta = waveguide.kz_vector(grid, waveguide.TE10, wg)
    prop = (beta.imag == 0) & (beta.real != 0)
    res = np.max(np.abs(np.abs(out.coefficients[prop]) - np.abs(e.coefficients[prop])))
    return _check("lossless magnitude", res, 1e-12)


def run_checks(fault=None, workers=1, seed=0) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = [check_round_trip(rng), check_conjugate_symmetry(rng)]
    checks += check_diagonalization()
    checks += [check_energy(rng, fault=fault),
               check_convolution(rng, workers=workers),
               check_dispersion_slopes(), check_kmax(),
               check_lossless_magnitude(workers)]
    return checks
