#! /usr/bin/env python3
# coding: utf8

"""
File : gfc_operators.py
Author : lgbarrere
Brief : General fractional integrals, 1st level general fractional derivatives
I_(k1) d/dt I_(k2), their n-fold versions and the projectors fixing initial values
"""
import logging as lg
import math

import numpy as np

from .errors import DivergentAtZero, InvalidParameter, NotDifferentiable
from .gps_algebra import (GeneralizedPowerSeries, gps_add, gps_convolution_power, gps_convolve,
                          gps_scale, gps_truncate, gps_zero)
from .kernel_catalog import make_triple, power_law_pair, validate_triple
from .utility import CONST


class OperatorContext:
    """
    Brief : A validated kernel triple and the cap every operator result is truncated at
    """
    def __init__(self, triple, truncation_cap=math.inf, validate=True):
        if validate:
            validate_triple(triple)
        self.__triple = triple
        self.__truncation_cap = float(truncation_cap)


    ## Getters
    def get_triple(self):
        """
        Brief : Get the kernel triple
        Return : KernelTriple
        """
        return self.__triple


    def get_truncation_cap(self):
        """
        Brief : Get the truncation cap of operator results
        Return : The cap
        """
        return self.__truncation_cap


    def kappa(self):
        """
        Brief : Get the kernel kappa of the triple, kappa * k1 * k2 = 1
        Return : GeneralizedPowerSeries
        """
        return self.__triple.kappa


    def k1(self):
        """
        Brief : Get the kernel applied after differentiation (Caputo side)
        Return : GeneralizedPowerSeries
        """
        return self.__triple.k1


    def k2(self):
        """
        Brief : Get the kernel applied before differentiation (Riemann-Liouville side)
        Return : GeneralizedPowerSeries
        """
        return self.__triple.k2


    ## Methods
    def truncate(self, series):
        """
        Brief : Apply the context truncation cap
        Return : GeneralizedPowerSeries
        > series : The series
        """
        return gps_truncate(series, self.__truncation_cap)


def _noise_floor(series):
    """
    Brief : Coefficient magnitude treated as rounding noise in a series
    Return : The floor
    > series : GeneralizedPowerSeries
    """
    coeffs = series.get_coeffs()
    scale = float(np.max(np.abs(coeffs))) if len(coeffs) else 0.0
    return CONST.get_coeff_tol() * max(1.0, scale)


def _check_function(f, operation):
    """
    Brief : Reject inputs carrying an identity part
    Return : None
    > f : GeneralizedPowerSeries
    > operation : Name used in the error message
    """
    if f.get_delta() != 0:
        raise InvalidParameter(f"{operation} needs a function, got an identity part {f.get_delta()}")


## Integrals
def gfi_apply(ctx, f):
    """
    Brief : General fractional integral kappa * f
    Return : GeneralizedPowerSeries
    > ctx : OperatorContext
    > f : Series without identity part
    """
    _check_function(f, 'gfi_apply')
    return ctx.truncate(gps_convolve(ctx.kappa(), f))


def gfi_nfold(ctx, f, n):
    """
    Brief : n-fold general fractional integral kappa^<n> * f (identity for n = 0)
    Return : GeneralizedPowerSeries
    > ctx : OperatorContext
    > f : Series without identity part
    > n : Nonnegative integer
    """
    _check_function(f, 'gfi_nfold')
    return ctx.truncate(gps_convolve(gps_convolution_power(ctx.kappa(), n), f))


def gfi_compose(kappa1, kappa2, f):
    """
    Brief : I_(kappa1) I_(kappa2) f, equal to I_(kappa1 * kappa2) f
    Return : GeneralizedPowerSeries
    > kappa1, kappa2 : Kernel series
    > f : Series without identity part
    """
    _check_function(f, 'gfi_compose')
    return gps_convolve(kappa1, gps_convolve(kappa2, f))


## Derivatives
def gps_differentiate(f, tol=None):
    """
    Brief : Termwise derivative, h_mu -> h_(mu-1) for mu > 1 and h_1 -> 0.
    Terms with mu < 1 are accepted only below the coefficient noise floor
    Return : GeneralizedPowerSeries, cap lowered by one
    > f : GeneralizedPowerSeries
    > tol : Exponent tolerance
    """
    if tol is None:
        tol = CONST.get_exponent_tol()
    if f.get_delta() != 0:
        raise NotDifferentiable("the identity element I has no derivative in C_-1")
    exponents = f.get_exponents()
    coeffs = f.get_coeffs()
    constant = np.abs(exponents - 1.0) <= tol
    below = (exponents < 1.0) & ~constant
    floor = _noise_floor(f)
    offending = below & (np.abs(coeffs) > floor)
    if np.any(offending):
        first = int(np.flatnonzero(offending)[0])
        raise NotDifferentiable(
            f"term {coeffs[first]:.6g}*h_{exponents[first]:g} has exponent < 1, "
            "its derivative leaves C_-1"
            )
    keep = ~constant & ~below
    cap = f.get_cap() - 1.0
    return GeneralizedPowerSeries(exponents[keep] - 1.0, coeffs[keep],
                                  cap=max(cap, 0.0), dropped=f.is_dropped())


def gfd_first_level(ctx, f):
    """
    Brief : 1st level GFD I_(k1) d/dt I_(k2) f
    Return : GeneralizedPowerSeries
    > ctx : OperatorContext
    > f : Series with I_(k2) f differentiable
    """
    _check_function(f, 'gfd_first_level')
    derivative = gps_differentiate(gps_convolve(ctx.k2(), f))
    return ctx.truncate(gps_convolve(ctx.k1(), derivative))


def gfd_nfold(ctx, f, n):
    """
    Brief : n-fold sequential 1st level GFD (identity for n = 0)
    Return : GeneralizedPowerSeries
    > ctx : OperatorContext
    > f : Series
    > n : Nonnegative integer
    """
    if n < 0:
        raise InvalidParameter(f"number of derivatives must be >= 0, got {n}")
    for _ in range(n):
        f = gfd_first_level(ctx, f)
    return f


## Projectors
def value_at_zero(series, tol=None):
    """
    Brief : Limit at 0+ of a series, its h_1 coefficient (0 if every exponent exceeds 1)
    Return : The value
    > series : GeneralizedPowerSeries
    > tol : Exponent tolerance
    """
    if tol is None:
        tol = CONST.get_exponent_tol()
    if series.get_delta() != 0:
        raise DivergentAtZero("a series with an identity part has no value at 0")
    exponents = series.get_exponents()
    coeffs = series.get_coeffs()
    singular = (exponents < 1.0 - tol) & (np.abs(coeffs) > _noise_floor(series))
    if np.any(singular):
        first = int(np.flatnonzero(singular)[0])
        raise DivergentAtZero(
            f"term {coeffs[first]:.6g}*h_{exponents[first]:g} diverges at 0"
            )
    return series.coefficient_at(1.0, tol)


def projector_first_level(ctx, f):
    """
    Brief : Projector f - I_(kappa) D f = (I_(k2) f)(0) (kappa * k1)
    Return : (value, function)
    > ctx : OperatorContext
    > f : Series
    """
    _check_function(f, 'projector_first_level')
    value = value_at_zero(gps_convolve(ctx.k2(), f))
    if value == 0:
        return value, gps_zero()
    return value, ctx.truncate(gps_scale(gps_convolve(ctx.kappa(), ctx.k1()), value))


def projector_nfold(ctx, f, n):
    """
    Brief : n-fold projector, values[j] = (I_(k2) D^<j> f)(0) and
    function = sum_j values[j] (kappa^<j+1> * k1)
    Return : (values, function)
    > ctx : OperatorContext
    > f : Series
    > n : Positive integer
    """
    if n < 1:
        raise InvalidParameter(f"projector order must be >= 1, got {n}")
    _check_function(f, 'projector_nfold')
    values = []
    function = gps_zero()
    kernel = gps_convolve(ctx.kappa(), ctx.k1())
    for j in range(n):
        if j > 0:
            f = gfd_first_level(ctx, f)
        value = value_at_zero(gps_convolve(ctx.k2(), f))
        values.append(value)
        if value != 0:
            function = gps_add(function, gps_scale(kernel, value))
        kernel = gps_convolve(ctx.kappa(), kernel)
    lg.debug("Projector values %s", values)
    return values, ctx.truncate(function)


## Named specializations
def _power_law_context(kind, alpha):
    """
    Brief : Context of a degenerate power-law triple
    Return : OperatorContext
    > kind : rl_type or caputo_type
    > alpha : Power-law index
    """
    return OperatorContext(make_triple(kind, power_law_pair(alpha)), validate=False)


def riemann_liouville_derivative(alpha, f):
    """
    Brief : Riemann-Liouville derivative of order alpha, d/dt (h_(1-alpha) * f)
    Return : GeneralizedPowerSeries
    > alpha : 0 < alpha < 1
    > f : Series
    """
    return gfd_first_level(_power_law_context('rl_type', alpha), f)


def caputo_derivative(alpha, f):
    """
    Brief : Caputo derivative of order alpha, h_(1-alpha) * f'
    Return : GeneralizedPowerSeries
    > alpha : 0 < alpha < 1
    > f : Series
    """
    return gfd_first_level(_power_law_context('caputo_type', alpha), f)


def hilfer_derivative(alpha, gamma_, f):
    """
    Brief : Hilfer type derivative with kernels (h_alpha, h_gamma, h_(1-alpha-gamma))
    Return : GeneralizedPowerSeries
    > alpha : 0 < alpha < 1
    > gamma_ : 0 < gamma < 1 - alpha
    > f : Series
    """
    ctx = OperatorContext(make_triple('hilfer_power', alpha=alpha, gamma_=gamma_),
                          validate=False)
    return gfd_first_level(ctx, f)


def rl_derivative_of_pair(pair, f):
    """
    Brief : GFD of Riemann-Liouville type d/dt (k * f) of a Sonin pair
    Return : GeneralizedPowerSeries
    > pair : KernelPair
    > f : Series
    """
    _check_function(f, 'rl_derivative_of_pair')
    return gps_differentiate(gps_convolve(pair.k, f))


def regularized_derivative(pair, f):
    """
    Brief : Regularized (Caputo type) GFD k * f', equal to d/dt (k * f) - f(0) k
    Return : GeneralizedPowerSeries
    > pair : KernelPair
    > f : Series
    """
    _check_function(f, 'regularized_derivative')
    return gps_convolve(pair.k, gps_differentiate(f))
