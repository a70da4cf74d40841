"""Line lists and damped-transform spectra.

The independent reference here expands the vacuum return amplitude as a
Taylor series in z = e^{-i omega_e t}; its coefficients are the line
weights over 2*pi, so the streamed Hermite/Poisson weights can be checked
against plain series arithmetic.
"""

import math

import numpy as np
import pytest

from indiboson import powerseries
from indiboson.analytic import (
    broadened_lines,
    spectrum_finite_T,
    spectrum_zero_T,
)
from indiboson.errors import InsufficientDecayWarning
from indiboson.model import ModelParams, ThermalParams, derive_couplings
from indiboson.oracle import TruncatedBasis, thermal_line_list

T_ZERO = ThermalParams(math.inf)


def make(omega_g=1.0, omega_e=1.0, lam=0.0, eps_e=0.0):
    return derive_couplings(ModelParams.from_lambda_g(0.0, eps_e, omega_g, omega_e, lam))


def weights_by_series(c, count):
    """Line weights over 2*pi from the z-series of the vacuum amplitude:
    (gamma_plus**2 - gamma_minus**2 z**2)**-1/2
    * exp(-lambda_g*lambda_e*(1 - z)/(gamma_plus - gamma_minus*z))."""
    sq = np.zeros(count, dtype=complex)
    sq[0] = c.gamma_plus**2
    if count > 2:
        sq[2] = -c.gamma_minus**2
    root = powerseries.power(sq, -0.5)
    geo = (c.gamma_minus / c.gamma_plus) ** np.arange(count) / c.gamma_plus
    one_minus_z_geo = geo - np.concatenate([[0.0], geo[:-1]])
    arg = -c.lambda_g * c.lambda_e * one_minus_z_geo
    head, arg[0] = arg[0], 0.0  # exponential needs a vanishing constant term
    expo = math.exp(head.real) * powerseries.exponential(arg)
    coeffs = powerseries.multiply(root, expo)
    assert np.max(np.abs(coeffs.imag)) < 1e-13
    return coeffs.real


# ---------------------------------------------------------------------------
# zero-temperature line lists


def test_displaced_lines_are_poisson(displaced):
    lines = spectrum_zero_T(displaced)
    assert lines[0].offset == 0.0
    for n, ln in enumerate(lines):
        assert ln.offset == pytest.approx(float(n), abs=1e-15)
        assert ln.weight == pytest.approx(
            2.0 * math.pi * math.exp(-1.0) / math.factorial(n), rel=1e-12
        )


def test_squeezed_lines_even_only(squeezed):
    lines = spectrum_zero_T(squeezed)
    assert lines[0].offset == pytest.approx(0.5, abs=1e-15)
    for n, ln in enumerate(lines):
        assert ln.offset == pytest.approx(0.5 + 2.0 * n, abs=1e-12)
        assert ln.weight >= 0.0
        if n % 2 == 1:
            assert ln.weight == 0.0
    assert lines[0].weight / (2.0 * math.pi) == pytest.approx(
        2.0 * math.sqrt(2.0) / 3.0, rel=1e-12
    )
    assert lines[2].weight / (2.0 * math.pi) == pytest.approx(
        math.sqrt(2.0) / 27.0, rel=1e-12
    )


def test_sum_rule(displaced, squeezed, mixed):
    for c in (displaced, squeezed, mixed):
        total = sum(ln.weight for ln in spectrum_zero_T(c))
        assert total == pytest.approx(2.0 * math.pi, abs=1e-9)


def test_weights_match_series_expansion(displaced, squeezed, mixed):
    for c in (displaced, squeezed, mixed):
        lines = spectrum_zero_T(c)
        count = min(len(lines), 16)
        expect = weights_by_series(c, count)
        for n in range(count):
            assert lines[n].weight == pytest.approx(
                2.0 * math.pi * expect[n], abs=1e-12
            )


def test_near_degenerate_frequencies_stay_continuous():
    # just above the dispatch threshold the squeeze weights must already
    # look Poissonian; the two branches meet smoothly
    c = make(omega_e=1.0 + 2e-8, lam=1.0)
    assert not c.equal_frequencies
    lines = spectrum_zero_T(c)
    for n in range(7):
        assert lines[n].weight == pytest.approx(
            2.0 * math.pi * math.exp(-1.0) / math.factorial(n), abs=1e-6
        )


def test_explicit_line_count_must_cover_sum_rule(displaced):
    with pytest.raises(ValueError, match="increase"):
        spectrum_zero_T(displaced, n_max=3)
    lines = spectrum_zero_T(displaced, n_max=40)
    assert len(lines) == 41
    assert sum(ln.weight for ln in lines) == pytest.approx(2.0 * math.pi, abs=1e-9)


def test_line_cap_guards_runaway_lists():
    # e^{-lambda**2} underflows, so the stream cannot reach the sum rule
    with pytest.raises(RuntimeError, match="sum rule"):
        spectrum_zero_T(make(lam=50.0))


# ---------------------------------------------------------------------------
# Lorentzian broadening


def test_broadened_single_line_peak_height():
    from indiboson.analytic import SpectralLine

    lines = [SpectralLine(offset=0.0, weight=2.0 * math.pi)]
    w = np.array([-0.3, 0.0, 0.3])
    a = broadened_lines(w, lines, eta=0.1)
    assert a[1] == pytest.approx(2.0 / 0.1, rel=1e-12)
    assert a[0] == pytest.approx(a[2], rel=1e-12)
    with pytest.raises(ValueError, match="eta"):
        broadened_lines(w, lines, eta=0.0)


# ---------------------------------------------------------------------------
# damped transform


def test_zero_coupling_spectrum_is_a_lorentzian_at_the_gap():
    c = make(eps_e=1.5)
    w = np.linspace(0.5, 2.5, 401)
    a = spectrum_finite_T(T_ZERO, c, w, eta=0.02)
    expect = 2.0 * 0.02 / ((w - 1.5) ** 2 + 0.02**2)
    assert np.max(np.abs(a - expect)) < 2e-3 * np.max(expect)
    assert w[int(np.argmax(a))] == pytest.approx(1.5, abs=0.01)


def test_displaced_spectrum_recovers_poisson_windows(displaced):
    w = np.linspace(-0.5, 6.5, 1401)
    a = spectrum_finite_T(T_ZERO, displaced, w, eta=0.02)
    model = broadened_lines(w, spectrum_zero_T(displaced), eta=0.02)
    assert np.max(np.abs(a - model)) < 2e-3 * np.max(model)
    # window-integrated weight around each peak matches the Poisson line
    # content pushed through the same Lorentzian windows
    h = w[1] - w[0]
    for n in range(5):
        win = np.abs(w - float(n)) <= 0.5
        got = np.trapezoid(a[win], dx=h)
        want = np.trapezoid(model[win], dx=h)
        assert got == pytest.approx(want, rel=1e-3)


def test_thermal_spectrum_matches_broadened_reference_lines(mixed):
    th = ThermalParams(0.5)
    w = np.linspace(-3.0, 13.0, 401)
    a = spectrum_finite_T(th, mixed, w, eta=0.04)
    lines = thermal_line_list(th, mixed, TruncatedBasis(128))
    model = broadened_lines(w, lines, eta=0.04)
    assert np.max(np.abs(a - model)) < 2e-3 * np.max(model)


def test_transform_is_deterministic(squeezed):
    th = ThermalParams(0.5)
    w = np.linspace(-3.0, 13.0, 201)
    first = spectrum_finite_T(th, squeezed, w)
    second = spectrum_finite_T(th, squeezed, w)
    assert np.array_equal(first, second)


def test_short_window_warns(squeezed):
    w = np.linspace(-1.0, 5.0, 11)
    with pytest.warns(InsufficientDecayWarning, match="decays"):
        spectrum_finite_T(ThermalParams(0.5), squeezed, w, eta=0.04, t_max=50.0)


def test_transform_parameter_guards(squeezed):
    w = np.linspace(-1.0, 5.0, 11)
    with pytest.raises(ValueError, match="eta"):
        spectrum_finite_T(T_ZERO, squeezed, w, eta=-0.1)
    with pytest.raises(ValueError, match="t_max"):
        spectrum_finite_T(T_ZERO, squeezed, w, eta=0.1, t_max=0.0)
