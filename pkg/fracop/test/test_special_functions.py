#! /usr/bin/env python3
# coding: utf8

"""
File : test_special_functions.py
Author : lgbarrere
Brief : Test the Gamma, Mittag-Leffler and Prabhakar functions
"""
import math

import mpmath
import numpy as np
import pytest
from scipy import special

from ..manager.errors import InvalidParameter, NonConvergence
from ..manager.special_functions import (MLParams, gamma, log_abs_gamma, mittag_leffler,
                                         ml_power_type, pochhammer, prabhakar, rgamma)


def _gamma_table():
    """
    Brief : Integers 1..15 and half integers 0.5..14.5 with exact Gamma values
    """
    table = [(float(n), float(math.factorial(n - 1))) for n in range(1, 16)]
    for n in range(15):
        value = math.factorial(2 * n) * math.sqrt(math.pi) / (4 ** n * math.factorial(n))
        table.append((n + 0.5, value))
    return table


@pytest.mark.parametrize('x, expected', _gamma_table())
def test_gamma_table(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


def test_gamma_reflection():
    for x in (-0.5, -1.5, -2.25, 0.25, 0.1):
        assert gamma(x) == pytest.approx(special.gamma(x), rel=1e-12)
    assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)


def test_gamma_vectorized():
    x = np.array([0.5, 1.0, 2.5, 7.0])
    assert np.allclose(gamma(x), special.gamma(x), rtol=1e-13, atol=0)
    assert np.allclose(rgamma(x), special.rgamma(x), rtol=1e-13, atol=0)


def test_rgamma_poles():
    for x in (0.0, -1.0, -2.0, -7.0):
        assert rgamma(x) == 0.0
        assert log_abs_gamma(x) == (math.inf, 0)
    assert rgamma(500.0) == 0.0


def test_log_abs_gamma():
    for x in (0.3, 0.5, 1.5, 3.7, 20.0, 200.0, -0.5, -2.5):
        value, sign = log_abs_gamma(x)
        assert value == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)
        assert sign == (1 if special.gamma(x) > 0 else -1)


def test_pochhammer():
    assert pochhammer(0.5, 0) == 1.0
    assert pochhammer(1.0, 5) == 120.0
    assert pochhammer(-1.0, 2) == 0.0
    assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)


def test_mittag_leffler_elementary():
    """
    Brief : E_{1,1} is exp, E_{2,1}(z^2) is cosh(z)
    """
    assert mittag_leffler(MLParams(1.0, 1.0), 1.0) == pytest.approx(math.e, rel=1e-14)
    assert mittag_leffler(MLParams(2.0, 1.0), 1.0) == pytest.approx(math.cosh(1.0), rel=1e-14)
    assert mittag_leffler(MLParams(1.0, 1.0), -2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
    value = mittag_leffler(MLParams(1.0, 1.0), 1j)
    assert isinstance(value, complex)
    assert abs(value - complex(math.cos(1.0), math.sin(1.0))) < 1e-14


def test_mittag_leffler_against_mpmath():
    mpmath.mp.dps = 30
    for alpha, beta, z in ((0.5, 0.5, 1.0), (0.5, 1.0, -1.0), (0.75, 1.25, 2.0),
                           (1.5, 0.5, -3.0)):
        reference = mpmath.fsum(
            mpmath.mpf(z) ** n / mpmath.gamma(mpmath.mpf(alpha) * n + beta) for n in range(400)
            )
        assert mittag_leffler(MLParams(alpha, beta), z) == pytest.approx(float(reference),
                                                                         rel=1e-13)


def test_mittag_leffler_recurrence():
    """
    Brief : E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z) on random indices
    """
    rng = np.random.default_rng(11)
    for _ in range(20):
        alpha = rng.uniform(0.5, 2.0)
        beta = rng.uniform(0.2, 2.0)
        z = rng.uniform(-2.0, 2.0)
        lhs = mittag_leffler(MLParams(alpha, beta), z)
        rhs = rgamma(beta) + z * mittag_leffler(MLParams(alpha, alpha + beta), z)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_prabhakar_identities():
    assert prabhakar(MLParams(1.0, 0.5, 2.5), 0.0) == pytest.approx(rgamma(0.5), rel=1e-15)
    value = prabhakar(MLParams(1.0, 0.5, -1.0), 1.0)
    assert value == pytest.approx(rgamma(0.5) - rgamma(1.5), rel=1e-14)
    rng = np.random.default_rng(5)
    for _ in range(20):
        params = MLParams(rng.uniform(0.5, 2.0), rng.uniform(0.1, 2.0))
        z = rng.uniform(-3.0, 3.0)
        assert prabhakar(params, z) == pytest.approx(mittag_leffler(params, z), rel=1e-14,
                                                     abs=1e-300)


def test_ml_power_type():
    assert ml_power_type(2, 1.0, 1.0) == pytest.approx(math.e, rel=1e-14)
    assert ml_power_type(3, 0.5, 0.0) == pytest.approx(rgamma(1.5), rel=1e-15)
    for z in (-1.0, 0.3, 1.0):
        assert ml_power_type(1, 0.5, z) == pytest.approx(
            mittag_leffler(MLParams(0.5, 0.5), z), rel=1e-14)
    with pytest.raises(InvalidParameter):
        ml_power_type(0, 0.5, 1.0)


def test_errors():
    with pytest.raises(InvalidParameter):
        MLParams(0.0, 1.0)
    with pytest.raises(NonConvergence):
        mittag_leffler(MLParams(1.0, 1.0), 60.0)
    with pytest.raises(NonConvergence):
        mittag_leffler(MLParams(1.0, 1.0), 10.0, tolerances=(1e-15, 1e-15, 16, 5, 50.0))
