#! /usr/bin/env python3
# coding: utf8

"""
File : special_functions.py
Author : lgbarrere
Brief : Gamma function (Lanczos), Mittag-Leffler and Prabhakar functions
evaluated by plain Taylor summation
"""
import cmath
import logging as lg
import math

import numpy as np

from .errors import InvalidParameter, NonConvergence
from .utility import CONST


# Lanczos approximation, g = 7, n = 9
LANCZOS_G = 7.0
LANCZOS_COEFFS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7
    )
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)
# Above this argument Gamma overflows a double
GAMMA_OVERFLOW = 171.6


def _lanczos_sum(z):
    """
    Brief : Lanczos partial fraction sum A_g(z + 1)
    Return : The sum (same shape as z)
    > z : Shifted argument x - 1, with x >= 0.5
    """
    total = np.full_like(z, LANCZOS_COEFFS[0])
    for i in range(1, len(LANCZOS_COEFFS)):
        total = total + LANCZOS_COEFFS[i] / (z + i)
    return total


def _is_pole(x):
    """
    Brief : Check which arguments are poles of Gamma (0, -1, -2, ...)
    Return : Boolean array
    > x : Arguments
    """
    return (x <= 0) & (x == np.floor(x))


def gamma(x):
    """
    Brief : Gamma function by the Lanczos approximation, reflection for x < 0.5
    Return : Gamma(x), a float for a scalar argument, an array otherwise
    > x : Real argument(s)
    """
    x = np.asarray(x, dtype=float)
    reflect = x < 0.5
    z = np.where(reflect, 1.0 - x, x) - 1.0
    t = z + LANCZOS_G + 0.5
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        # t**(z + 0.5) split in two halves to delay overflow
        half_power = t ** ((z + 0.5) / 2.0)
        value = SQRT_TWO_PI * half_power * (half_power * np.exp(-t)) * _lanczos_sum(z)
        value = np.where(
            reflect, math.pi / (np.sin(math.pi * x) * value), value
            )
        value = np.where(_is_pole(x), np.inf, value)
    if value.ndim == 0:
        return float(value)
    return value


def rgamma(x):
    """
    Brief : Reciprocal Gamma function, exactly 0 at the poles of Gamma
    Return : 1/Gamma(x), a float for a scalar argument, an array otherwise
    > x : Real argument(s)
    """
    x = np.asarray(x, dtype=float)
    with np.errstate(divide='ignore', over='ignore'):
        value = np.where(
            _is_pole(x) | (x > GAMMA_OVERFLOW), 0.0, 1.0 / np.asarray(gamma(x))
            )
    if value.ndim == 0:
        return float(value)
    return value


def log_abs_gamma(x):
    """
    Brief : Logarithm of |Gamma(x)| and the sign of Gamma(x), for a scalar
    Return : (log|Gamma(x)|, sign), sign is 0 at a pole
    > x : Real argument
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        return (math.inf, 0)
    if x < 0.5:
        # Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        log_other, _ = log_abs_gamma(1.0 - x)
        sine = math.sin(math.pi * x)
        return (math.log(math.pi) - math.log(abs(sine)) - log_other,
                1 if sine > 0 else -1)
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    lanczos = float(_lanczos_sum(np.asarray(z)))
    return (0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(t) - t
            + math.log(lanczos), 1)


def pochhammer(x, n):
    """
    Brief : Rising factorial (x)_n = x (x + 1) ... (x + n - 1)
    Return : The product, 1 for n = 0
    > x : Real base
    > n : Nonnegative integer
    """
    product = 1.0
    for i in range(n):
        product *= x + i
    return product


class MLParams:
    """
    Brief : Indices of E^gamma_{alpha,beta}(z) = sum (gamma)_n z^n / (n! Gamma(alpha n + beta))
    (gamma = 1 gives the two-parameter Mittag-Leffler function)
    """
    def __init__(self, alpha, beta, gamma=1.0):
        if not alpha > 0:
            raise InvalidParameter(f"Mittag-Leffler index alpha must be > 0, got {alpha}")
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.gamma = float(gamma)


    def __repr__(self):
        return f'MLParams(alpha={self.alpha}, beta={self.beta}, gamma={self.gamma})'


def _power_over_gamma(z, n, arg):
    """
    Brief : z^n / Gamma(arg) without intermediate overflow
    Return : The term (complex if z is complex)
    > z : Real or complex base
    > n : Nonnegative integer power
    > arg : Gamma argument
    """
    if z == 0:
        return rgamma(arg) if n == 0 else 0.0 * z
    log_mod = n * math.log(abs(z))
    if arg < GAMMA_OVERFLOW - 1 and log_mod < 700:
        return z ** n * rgamma(arg)
    log_gamma, sign = log_abs_gamma(arg)
    if sign == 0:
        return 0.0 * z
    magnitude = sign * math.exp(log_mod - log_gamma)
    if isinstance(z, complex):
        return magnitude * cmath.exp(1j * n * cmath.phase(z))
    return magnitude if (z > 0 or n % 2 == 0) else -magnitude


def _sum_series(weight, params, z, tolerances):
    """
    Brief : Sum w_n z^n / Gamma(alpha n + beta) until the stopping rule holds
    Return : The sum
    > weight : Callable n, w_{n-1} -> w_n
    > params : MLParams
    > z : Argument
    > tolerances : (tol_abs, tol_rel, small_run, term_cap, z_guard)
    """
    tol_abs, tol_rel, small_run, term_cap, z_guard = tolerances
    if abs(z) > z_guard:
        raise NonConvergence(
            f"|z| = {abs(z):.6g} exceeds the plain summation guard {z_guard}"
            )
    total = 0.0 * z
    w = 1.0
    run = 0
    for n in range(term_cap):
        if n > 0:
            w = weight(n, w)
        term = w * _power_over_gamma(z, n, params.alpha * n + params.beta)
        total += term
        if abs(term) <= tol_abs + tol_rel * abs(total):
            run += 1
            if run >= small_run:
                return total
        else:
            run = 0
    raise NonConvergence(
        f"series for {params} at z = {z} not converged after {term_cap} terms"
        )


def _as_scalar(z):
    """
    Brief : Normalize an argument to float or complex
    Return : The scalar
    > z : Number
    """
    if isinstance(z, complex) or np.iscomplexobj(z):
        return complex(z)
    return float(z)


def mittag_leffler(params, z, tolerances=None):
    """
    Brief : Two-parameter Mittag-Leffler function E_{alpha,beta}(z)
    Return : The value (real for real z)
    > params : MLParams (gamma ignored)
    > z : Real or complex argument
    > tolerances : Optional stopping rule, Constants defaults otherwise
    """
    if tolerances is None:
        tolerances = CONST.get_ml_tolerances()
    return _sum_series(lambda n, w: w, params, _as_scalar(z), tolerances)


def prabhakar(params, z, tolerances=None):
    """
    Brief : Three-parameter (Prabhakar) Mittag-Leffler function E^gamma_{alpha,beta}(z),
    the weight (gamma)_n / n! follows (gamma)_{n+1} = (gamma)_n (gamma + n)
    Return : The value (real for real z)
    > params : MLParams
    > z : Real or complex argument
    > tolerances : Optional stopping rule, Constants defaults otherwise
    """
    if tolerances is None:
        tolerances = CONST.get_ml_tolerances()
    gamma_ = params.gamma
    return _sum_series(
        lambda n, w: w * (gamma_ + n - 1) / n, params, _as_scalar(z), tolerances
        )


def ml_power_type(m, alpha, z, tolerances=None):
    """
    Brief : E^m_{alpha, alpha m}(z), the function behind the m-th convolution
    power of the resolvent for power-law kernels
    Return : The value
    > m : Positive integer
    > alpha : Index alpha > 0
    > z : Argument
    > tolerances : Optional stopping rule
    """
    if m < 1:
        raise InvalidParameter(f"power m must be >= 1, got {m}")
    lg.debug("E^%d_{%g,%g}(%s)", m, alpha, alpha * m, z)
    return prabhakar(MLParams(alpha, alpha * m, m), z, tolerances)
