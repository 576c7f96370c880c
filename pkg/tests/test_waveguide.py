import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.constants import c, epsilon_0, mu_0

import oracles
from tps import waveguide as wgm
from tps.errors import DomainError, SymmetryError
from tps.sequence import (PeriodicSequence, WSpectrum, build_grid, forward_e,
                          inverse_e, is_conjugate_symmetric, ohmic_grid)
from tps.waveguide import TE10, ModeIndex, WaveguideSpec

WR284 = WaveguideSpec(72.14e-3, 34.04e-3)


def grid_at(f, k, N=1000, q=60):
    """Grid whose index ``k`` sits at ``f`` Hz once converged."""
    T = (k - 1) / f
    return build_grid(N, T / N, q)


def test_spec_validation():
    with pytest.raises(DomainError):
        WaveguideSpec(0.01, 0.02)
    with pytest.raises(DomainError):
        WaveguideSpec(0.02, 0.01, length=-1)
    with pytest.raises(DomainError):
        WaveguideSpec(0.02, 0.01, sigma=-1)
    with pytest.raises(DomainError):
        ModeIndex(0, 0)


def test_cutoff_wr284():
    assert wgm.cutoff(TE10, WR284) == pytest.approx(math.pi / 72.14e-3, rel=1e-15)
    assert wgm.cutoff(TE10, WR284) == pytest.approx(43.54855, abs=1e-5)
    assert wgm.cutoff_frequency(TE10, WR284) == pytest.approx(2.077851802e9, rel=1e-9)
    assert wgm.cutoff(ModeIndex(1, 1), WR284) == pytest.approx(
        math.hypot(math.pi / 72.14e-3, math.pi / 34.04e-3))


def test_kz_at_3ghz():
    g = grid_at(3e9, 4)
    beta = wgm.kz(4, g, TE10, WR284)
    ref = math.sqrt((2 * math.pi * 3e9 / c) ** 2 - (math.pi / 72.14e-3) ** 2)
    assert ref == pytest.approx(45.3523230225696068, rel=1e-14)  # 40-digit evaluation
    assert beta.real == pytest.approx(ref, rel=1e-11) and beta.imag == 0


def test_kz_branch_points():
    g = build_grid(64, 1e-10, 2)
    assert wgm.kz(1, g, TE10, WR284) == pytest.approx(1j * wgm.cutoff(TE10, WR284))
    # choose eps so that kappa_2 equals the cut-off exactly
    w2 = float(g.w[1])
    kc = wgm.cutoff(TE10, WR284)
    spec = WaveguideSpec(WR284.a, WR284.b, eps=(kc / w2) ** 2 / mu_0)
    assert abs(wgm.kz(2, g, TE10, spec)) < 1e-6


@pytest.mark.parametrize("N", [63, 64])
def test_kz_sign_and_branch(N):
    g = build_grid(N, 1e-11, 2)
    beta = wgm.kz_vector(g, TE10, WR284)
    half = g.half
    prop = beta[:half].imag == 0
    assert np.all(beta[:half][prop].real >= 0)
    assert np.all(beta[:half][~prop].imag > 0)
    k = np.array([kk for kk in range(2, N + 1) if 2 * kk != N + 2])
    np.testing.assert_allclose(beta[N + 1 - k], -np.conj(beta[k - 1]), rtol=0, atol=0)


def test_kz_parallel_is_bit_identical():
    g = build_grid(2187, 1e-12, 2)
    a = wgm.kz_vector(g, TE10, WR284, workers=1)
    for w in (2, 8):
        assert np.array_equal(a, wgm.kz_vector(g, TE10, WR284, workers=w))


def test_mode_fields_structure():
    g = grid_at(3e9, 4)
    spec = WR284
    wall = wgm.mode_fields(4, TE10, spec, 1.0, (0.0, 0.01, 0.0), g)
    assert wall.ey == 0 and wall.hx == 0
    mid = wgm.mode_fields(4, TE10, spec, 1.0, (spec.a / 2, 0.01, 0.2), g)
    beta = wgm.kz(4, g, TE10, spec)
    assert mid.ey / mid.hx == pytest.approx(-g.w[3] * mu_0 / beta, rel=1e-12)
    assert mid.ex == 0 and mid.hy == 0
    assert abs(mid.ey) == pytest.approx(mu_0 * g.w[3] / (math.pi / spec.a))


def test_lossy_wavenumber():
    g = build_grid(100, 1e-11, 2)
    kappa = wgm.lossy_wavenumber(5, g, ohmic_grid(0.0, 100), WR284)
    assert kappa == pytest.approx(g.w[4] * math.sqrt(epsilon_0 * mu_0))
    assert wgm.lossy_wavenumber(1, g, ohmic_grid(1.0, 100), WR284) == 0


def test_small_sigma_attenuation():
    g = build_grid(100, 1e-11, 2)
    sigma = 1e-4
    o = ohmic_grid(sigma, 100)
    kappa = wgm.lossy_wavenumber(5, g, o, WaveguideSpec(0.02, 0.01, sigma=sigma))
    assert kappa.imag == pytest.approx(o.o[4] / 2 * math.sqrt(mu_0 / epsilon_0), rel=1e-3)
    with pytest.raises(IndexError):
        wgm.lossy_wavenumber(0, g, o, WR284)


@pytest.mark.parametrize("N", [99, 100])
def test_lossy_kz_decays(N):
    spec = WaveguideSpec(WR284.a, WR284.b, 0.3, sigma=0.01)
    g = build_grid(N, 1e-11, 2)
    t = wgm.transfer(g, TE10, spec)
    assert np.all(np.abs(t[1:]) < 1)


def _random_spectrum(rng, N, dt=1e-11):
    return forward_e(PeriodicSequence(rng.standard_normal(N), dt))


def test_propagate_zero_length_identity(rng):
    e = _random_spectrum(rng, 50)
    g = build_grid(50, 1e-11, 2)
    assert wgm.propagate(e, TE10, WR284, g) is e
    seq = PeriodicSequence(rng.standard_normal(7), 1e-11)
    assert wgm.propagate_sequence(seq, TE10, WR284) is seq


@pytest.mark.parametrize("N", [200, 201])
def test_propagate_keeps_symmetry(N, rng):
    e = _random_spectrum(rng, N)
    g = build_grid(N, 1e-11, 2)
    out = wgm.propagate(e, TE10, WR284.with_length(0.5), g)
    assert is_conjugate_symmetric(out)
    y = np.fft.fft(out.coefficients) / math.sqrt(N)
    assert np.max(np.abs(y.imag)) < 1e-10 * np.max(np.abs(y.real))
    inverse_e(out)


def test_propagate_magnitudes(rng):
    N = 400
    e = _random_spectrum(rng, N)
    g = build_grid(N, 1e-11, 2)
    out = wgm.propagate(e, TE10, WR284.with_length(0.3), g)
    beta = wgm.kz_vector(g, TE10, WR284)
    prop = (beta.imag == 0) & (beta.real != 0)
    prop[N // 2] = False
    np.testing.assert_allclose(np.abs(out.coefficients[prop]), np.abs(e.coefficients[prop]),
                               rtol=1e-14)
    ev = beta.imag > 0
    assert np.all(np.abs(out.coefficients[ev]) < np.abs(e.coefficients[ev]))


def test_propagate_errors(rng):
    g = build_grid(10, 1e-11, 2)
    with pytest.raises(DomainError):
        wgm.propagate(_random_spectrum(rng, 12), TE10, WR284, g)
    bad = WSpectrum(np.ones(10) * 1j, "electric", 1e-11)
    with pytest.raises(SymmetryError):
        wgm.propagate(bad, TE10, WR284.with_length(1.0), g)


def test_group_velocity():
    fc = wgm.cutoff_frequency(TE10, WR284)
    assert wgm.group_velocity(2 * fc, TE10, WR284) == pytest.approx(c * math.sqrt(0.75))
    with pytest.raises(DomainError):
        wgm.group_velocity(fc, TE10, WR284)


# --- dispersion ----------------------------------------------------------------

def test_dispersion_exact_examples():
    N = 400
    g0 = build_grid(N, 1.0, 0)
    p = wgm.dispersion_error_exact(N // 4 + 1, g0)
    assert p == pytest.approx(1 - math.sin(math.pi / 4) / (math.pi / 4), rel=1e-13)
    assert p == pytest.approx(0.09968368384289394, rel=1e-13)
    assert wgm.dispersion_error_exact(5, build_grid(N, 1.0, 80)) < 1e-14
    with pytest.raises(DomainError):
        wgm.dispersion_error_exact(1, g0)


@pytest.mark.parametrize("q", [0, 1, 2, 3])
def test_dispersion_nbw_matches_high_precision(q):
    for nbw in (0.02, 0.1, 0.5, 1.0):
        ref = 1 - float(oracles.recurrence_ratio(math.pi * nbw / 2, q))
        # 1 - ratio cancels, so the attainable accuracy is absolute
        assert wgm.dispersion_error_nbw(nbw, q) == pytest.approx(ref, rel=1e-9, abs=5e-16)


def test_dispersion_grid_and_nbw_forms_agree():
    N = 1000
    for q in (0, 1, 2):
        g = build_grid(N, 1.0, q)
        for k in (11, 51, 126, 251):
            nbw = 2 * (k - 1) / N
            assert wgm.dispersion_error_exact(k, g) == pytest.approx(
                wgm.dispersion_error_nbw(nbw, q), rel=1e-9)


def test_dispersion_approx_examples():
    assert wgm.dispersion_error_approx(0.1, 0) == pytest.approx(4.1123e-3, rel=1e-4)
    # pi^4 0.1^4 / 288 and pi^6 0.1^6 / 3456
    assert wgm.dispersion_error_approx(0.1, 1) == pytest.approx(3.382260105347307e-05,
                                                                rel=1e-13)
    assert wgm.dispersion_error_approx(0.1, 2) == pytest.approx(2.7817974351137284e-07,
                                                                rel=1e-13)
    with pytest.raises(DomainError):
        wgm.dispersion_error_approx(0.1, 3)
    with pytest.raises(DomainError):
        wgm.dispersion_error_approx(0.0, 0)
    np.testing.assert_allclose(wgm.dispersion_error_approx(np.array([0.1, 0.2]), 0),
                               [math.pi ** 2 * 0.01 / 24, math.pi ** 2 * 0.04 / 24])


@settings(max_examples=40, deadline=None)
@given(nbw=st.floats(1e-3, 1.0), q=st.integers(0, 5))
def test_dispersion_decreases_with_q(nbw, q):
    assert 0 <= wgm.dispersion_error_nbw(nbw, q + 1) <= wgm.dispersion_error_nbw(nbw, q)


def test_dispersion_beta_near_cutoff():
    g = build_grid(2000, 1e-12, 2)
    kc = wgm.cutoff(TE10, WR284)
    k = int(np.argmax(g.w[:g.half] * math.sqrt(epsilon_0 * mu_0) > 1.5 * kc)) + 1
    free = wgm.dispersion_error_exact(k, g)
    # near cut-off the axial wavenumber amplifies the free-space error
    assert wgm.dispersion_error_beta(k, g, TE10, WR284) > free
