#! /usr/bin/env python3
# coding: utf8

"""
File : conv_series.py
Author : lgbarrere
Brief : Convolution series l = sum_n lambda^(n-1) kappa^<n>, the function behind
the operator (S_kappa - lambda)^-1, its convolution powers and L = l * k
"""
import cmath
import logging as lg
import math

from .errors import InvalidParameter
from .gps_algebra import (gps_add, gps_convolution_power, gps_convolve, gps_scale,
                          gps_tail_band, gps_truncate)
from .special_functions import MLParams, mittag_leffler, ml_power_type
from .utility import CONST


class ResolventSeries:
    """
    Brief : Materialized resolvent series of a kernel, exact below series.get_cap()
    """
    def __init__(self, kernel, lam, order, series):
        self.kernel = kernel
        self.lam = lam
        self.order = order
        self.series = series


    def tail_band(self, t):
        """
        Brief : Magnitude of the last retained exponent band at t
        Return : The magnitude, 0 for an exact series
        > t : Time t > 0
        """
        return gps_tail_band(self.series, t)


    def __repr__(self):
        return f'ResolventSeries(lambda={self.lam}, order={self.order}, {self.series})'


def resolvent(kappa, lam, order=None):
    """
    Brief : Build l_{kappa,lambda} by the fixed point l = kappa + lambda kappa * l,
    every iteration fixing one more convolution power below the cap
    alpha_min * (order + 1)
    Return : ResolventSeries
    > kappa : Kernel series without identity part
    > lam : Real or complex lambda
    > order : Number of convolution powers, the default series order if None
    """
    if order is None:
        order = CONST.get_default_order()
    if order < 1:
        raise InvalidParameter(f"resolvent order must be >= 1, got {order}")
    if kappa.get_delta() != 0:
        raise InvalidParameter("the resolvent kernel must not have an identity part")
    if kappa.is_zero():
        return ResolventSeries(kappa, lam, order, kappa)
    cap = min(kappa.get_cap(), kappa.leading_exponent() * (order + 1))
    base = gps_truncate(kappa, cap)
    series = base
    if lam != 0:
        for _ in range(order):
            series = gps_truncate(gps_add(base, gps_scale(gps_convolve(base, series), lam)), cap)
    lg.debug("Resolvent built, lambda=%s, %d terms, cap %g", lam, len(series), cap)
    return ResolventSeries(kappa, lam, order, series)


def resolvent_power(r, m):
    """
    Brief : m-th convolution power of a resolvent, the function of (S_kappa - lambda)^-m
    Return : GeneralizedPowerSeries
    > r : ResolventSeries
    > m : Positive integer
    """
    if m < 1:
        raise InvalidParameter(f"resolvent power must be >= 1, got {m}")
    return gps_convolution_power(r.series, m)


def _unpack_pair(pair):
    """
    Brief : Accept a KernelPair or a (kappa, k) tuple
    Return : (kappa, k)
    > pair : The pair
    """
    if isinstance(pair, tuple):
        return pair
    return pair.kappa, pair.k


def capital_L(pair, lam, order=None):
    """
    Brief : L_{kappa,lambda} = l_{kappa,lambda} * k, equal to 1 + lambda l * 1
    Return : GeneralizedPowerSeries
    > pair : Sonin pair (kappa, k)
    > lam : lambda
    > order : Number of convolution powers
    """
    kappa, k = _unpack_pair(pair)
    return gps_convolve(resolvent(kappa, lam, order).series, k)


def resolvent_closed_form(r, t, m=1):
    """
    Brief : Closed form of l^<m> for the kernels h_1 (h_m(t) e^(lambda t))
    and h_alpha (t^(alpha m - 1) E^m_{alpha, alpha m}(lambda t^alpha))
    Return : The value, None for any other kernel
    > r : ResolventSeries
    > t : Time t > 0
    > m : Power
    """
    kernel = r.kernel
    if len(kernel) != 1 or kernel.get_delta() != 0 or kernel.get_coeffs()[0] != 1:
        return None
    alpha = kernel.leading_exponent()
    if alpha == 1:
        exp = cmath.exp if isinstance(r.lam, complex) else math.exp
        return t ** (m - 1) / math.factorial(m - 1) * exp(r.lam * t)
    return t ** (alpha * m - 1) * ml_power_type(m, alpha, r.lam * t ** alpha)


def capital_L_closed_form(alpha, lam, t):
    """
    Brief : L for the power-law pair, E_{alpha,1}(lambda t^alpha)
    Return : The value
    > alpha : Power-law index
    > lam : lambda
    > t : Time t > 0
    """
    return mittag_leffler(MLParams(alpha, 1.0), lam * t ** alpha)

