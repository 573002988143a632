"""Smoke tests for the python bindings, cross-checked against mpmath."""

import math

import mpmath
import pytest

import relzeta


def test_special_functions_against_mpmath():
    for z in [1.0, 2.5, 0.5 + 3j, 10 - 4j]:
        got = relzeta.digamma(z)
        want = complex(mpmath.digamma(z))
        assert abs(got - want) < 1e-12
        got_t = relzeta.trigamma(z)
        want_t = complex(mpmath.polygamma(1, z))
        assert abs(got_t - want_t) < 1e-12
    assert abs(relzeta.log_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-13
    assert relzeta.bernoulli(2) == pytest.approx(1.0 / 6.0)


def test_pole_raises():
    with pytest.raises(relzeta.PoleError):
        relzeta.digamma(0.0)


def test_bound_state_threshold_and_energy():
    thr = relzeta.bound_state_threshold(1.0)
    assert thr == pytest.approx((2 * relzeta.euler_gamma - 1) / (4 * math.pi))
    assert relzeta.find_bound_state(0.0, -1.0 / (4 * math.pi)) == pytest.approx(-1.0, abs=1e-12)
    assert relzeta.find_bound_state(1.0, 1.0) is None


def test_resolvent_trace_point_interaction():
    r = relzeta.resolvent_trace(0.0, 1.0, 1.0)
    assert r.real == pytest.approx(-1.0 / (2.0 * (4.0 * math.pi + 1.0)), abs=1e-14)


def test_spectral_measure_delta_closed_form():
    alpha = 1.0
    m = 4.0 * math.pi * alpha
    for v in [0.5, 5.0, 50.0]:
        want = 4.0 * alpha / (v * v + m * m)
        assert relzeta.spectral_measure(0.0, alpha, v) == pytest.approx(want, rel=1e-9)


def test_zeta_continued_delta_closed_form():
    # zeta(s) = (4 pi alpha)^(-2s) sec(pi s) / 2 for the pure point interaction.
    alpha, s = 1.0, -0.25
    m = 4.0 * math.pi * alpha
    want = 0.5 * m ** (-2 * s) / math.cos(math.pi * s)
    assert relzeta.zeta_continued(0.0, alpha, s) == pytest.approx(want, abs=1e-7)


def test_heat_trace_against_quadrature():
    # integral of exp(-v^2 t) e(v) dv for the delta model, via mpmath.
    alpha, t = 1.0, 1.0
    m = 4.0 * math.pi * alpha
    want = float(mpmath.quad(lambda v: mpmath.e ** (-v * v * t) * 4 * alpha / (v * v + m * m),
                             [0, mpmath.inf]))
    assert relzeta.heat_trace(0.0, alpha, t) == pytest.approx(want, abs=1e-8)
    assert relzeta.hankel_heat_trace(0.0, alpha, t) == pytest.approx(want, abs=1e-6)


def test_partition_fields_and_scale_identity():
    res1 = relzeta.log_partition(0.0, 1.0, 1.0, 1.0)
    res2 = relzeta.log_partition(0.0, 1.0, 1.0, 2.0)
    assert res1["log_ZR"] == pytest.approx(
        0.5 * res1["res0_zeta_prime_L"], abs=1e-14)
    drop = res2["log_ZR"] - res1["log_ZR"]
    assert drop == pytest.approx(-res1["res0_zeta_L"] * math.log(2.0), abs=1e-12)
    assert res1["bound_state_energy"] is None


def test_coulomb_partition_residue():
    res = relzeta.log_partition(1.0, 0.0, 1.0, 1.0)
    assert res["res1_zeta_L"] == pytest.approx(1.0 / (4.0 * math.pi), abs=1e-10)
    assert res["bound_state_energy"] is not None
