import cmath
import math

import mpmath as mp
import numpy as np
import pytest

from fraccal.errors import DomainError, PreconditionError
from fraccal.gammafn import gamma
from fraccal.hyp import Hyp2F1Params, hyp2f1
from fraccal.series import PowerSeries, exp_series, geometric_series
from fraccal.transforms import (AsymptoticSeries, LaplaceOracle,
                                borel_log_scaled, borel_map, h_norm,
                                inverse_borel, laplace_alpha,
                                laplace_quadrature, remainder,
                                s_side_representation_check,
                                to_standard_transform, verify_lm_duality,
                                watson_gevrey_check)

mp.mp.dps = 30

GEOM = lambda t: 1.0 / (1.0 + t)


def geometric_oracle(tol=1e-13):
    return LaplaceOracle(lambda z: laplace_quadrature(GEOM, z, 0.0, tol), 0.0)


def test_laplace_normalization():
    assert abs(laplace_quadrature(lambda t: 1.0, 2.0) - 1.0) < 1e-11
    assert abs(laplace_quadrature(lambda t: t, 2.0) - 0.5) < 1e-11
    with pytest.raises(DomainError):
        laplace_quadrature(lambda t: 1.0, 0.5, type_bound=1.0)


def test_laplace_geometric_closed_form():
    got = laplace_quadrature(GEOM, 3.0)
    ref = complex(3 * mp.exp(3) * mp.e1(3))
    assert abs(got - ref) <= 1e-9


def test_laplace_alpha():
    assert abs(laplace_alpha(lambda t: 1.0, 0.5, 2.0) - 0.8862269254527586) < 1e-11
    assert abs(laplace_alpha(lambda t: t, 0.5, 2.0) - 0.6646701940895692) < 1e-11
    # alpha = 0 reduces to the plain transform
    a0 = laplace_alpha(GEOM, 0.0, 3.0)
    assert abs(a0 - laplace_quadrature(GEOM, 3.0)) < 1e-10
    # singular-endpoint order handled for negative alpha
    assert abs(laplace_alpha(lambda t: 1.0, -0.4, 3.0) - gamma(0.6)) < 1e-10


def test_lm_duality():
    alpha = 0.5
    dF = lambda t: gamma(1.5) * (1.0 + t) ** -1.5
    iF = lambda t: hyp2f1(Hyp2F1Params(1, 1, 1.5), -t) / gamma(1.5)
    out = verify_lm_duality(GEOM, dF, iF, alpha, 3.0)
    assert out["residual_deriv"] <= 1e-8
    assert out["residual_integ"] <= 1e-8
    # alpha = 0: both identities collapse to the plain transform
    out0 = verify_lm_duality(GEOM, GEOM, GEOM, 0.0, 3.0)
    assert out0["residual_deriv"] <= 1e-10
    # polynomial case with closed forms on both sides
    poly = lambda t: 1.0 + t
    dpoly = lambda t: gamma(1.5) + gamma(2.5) * t
    ipoly = lambda t: 1.0 / gamma(1.5) + t / gamma(2.5)
    outp = verify_lm_duality(poly, dpoly, ipoly, 0.5, 2.0)
    assert outp["residual_deriv"] <= 1e-10
    assert outp["residual_integ"] <= 1e-10


def test_borel_maps():
    p = borel_map(exp_series(5))
    assert all(abs(v - 1.0) < 1e-15 for v in p.p)
    g = borel_map(geometric_series(10))
    assert abs(g.p[4] - 24.0) < 1e-12
    F = geometric_series(16)
    assert inverse_borel(borel_map(F)).coeffs == F.coeffs
    with pytest.raises(OverflowError):
        borel_map(PowerSeries((1.0,) * 200))
    logs = borel_log_scaled(PowerSeries((1.0,) * 200))
    assert logs[180][0] == pytest.approx(math.lgamma(181))


def test_remainder():
    P = geometric_oracle()
    p = borel_map(geometric_series(26))
    z = 7.0 + 2.0j
    assert remainder(P, p, 0, z) == P(z)
    # an exact rational in 1/zeta has zero remainder past its degree
    coeffs = (1.0, -0.5, 2.0)
    rat = LaplaceOracle(lambda z: coeffs[0] + coeffs[1] / z + coeffs[2] / z ** 2, 0.0)
    ps = AsymptoticSeries(coeffs)
    assert abs(remainder(rat, ps, 3, 9.0)) < 1e-15
    r5 = remainder(P, p, 5, 10.0)
    assert abs(r5) <= math.factorial(5) / (0.5 ** 5 * 1e5)


def test_watson_bound_both_outcomes():
    P = geometric_oracle()
    p = borel_map(geometric_series(26))
    good = watson_gevrey_check(P, p, 0.5, 1.0)
    assert good["pass"] and math.isfinite(good["M_fit"])
    bad = watson_gevrey_check(P, p, 2.0, 1.0)
    assert not bad["pass"]
    assert bad["stability_ratio"] > 1.5


def test_watson_polynomial_case():
    coeffs = (1.0, 2.0, -1.0)
    rat = LaplaceOracle(lambda z: coeffs[0] + coeffs[1] / z + coeffs[2] / z ** 2, 0.0)
    ps = AsymptoticSeries(coeffs + (0.0,) * 22)
    res = watson_gevrey_check(rat, ps, 0.5, 1.0)
    assert res["pass"]
    assert res["worst_n"] <= 3


def test_asymptotic_correctness():
    # |P_n(zeta)| * |zeta|^n stays bounded for n <= 8 on [10, 100]
    P = geometric_oracle()
    p = borel_map(geometric_series(26))
    for n in range(9):
        for z in (10.0, 30.0, 100.0):
            val = abs(remainder(P, p, n, z)) * z ** n
            assert val <= 10.0 * math.factorial(n)


def test_normalization_reproduces_leading_coefficient():
    P = geometric_oracle()
    assert abs(P(200.0) - 1.0) < 0.01  # p_0 = f_0 = 1


def test_uniqueness_constructive():
    # two analytic functions sharing 16 Taylor coefficients have transforms
    # within the order-16 Watson envelope far out
    P1 = geometric_oracle(1e-13)
    coeffs = [(-1.0) ** k for k in range(16)]
    P2 = lambda z: sum(c * math.factorial(k) / z ** (k + 1) for k, c in enumerate(coeffs)) * z
    z = 50.0
    diff = abs(P1(z) - P2(z))
    envelope = math.factorial(16) / (0.5 ** 16 * z ** 16)
    assert diff <= envelope


def test_h_norm():
    v = h_norm(lambda t: 1.0, 1.0, 0.5)
    xs = np.linspace(0, 60, 400001)
    ray = np.trapezoid(np.exp(-np.sqrt(xs ** 2 + 0.25)), xs)
    arc = math.pi * 0.5 * math.exp(-0.5)
    ref = 2 * ray + arc
    assert abs(v - ref) / ref <= 1e-6
    assert h_norm(lambda t: 1.0, 1.0, 0.5) > h_norm(lambda t: 1.0, 2.0, 0.5) \
        > h_norm(lambda t: 1.0, 4.0, 0.5)
    with pytest.raises(PreconditionError):
        h_norm(lambda t: cmath.exp(t), 0.5, 0.5, type_bound=1.0)


def test_standard_transform_helper():
    P = geometric_oracle()
    std = to_standard_transform(P)
    assert abs(std(3.0) - P(3.0) / 3.0) < 1e-14


def test_s_side_representation_probe():
    out = s_side_representation_check()
    assert out["pass"], out
