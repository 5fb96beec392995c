#! /usr/bin/env python3
# coding: utf8

"""
File : volterra_oracle.py
Author : lgbarrere
Brief : Grid solver for second kind Volterra equations y + K * y = F obtained by
applying the n-fold integral to a fractional differential equation.
Convolutions use piecewise linear product integration with exact moments
of the weakly singular kernel, independent from the operational solution.
The first Picard iterates (-K)^<j> * F, whose leading exponents lie under the
regularity exponent, are summed exactly as series. Only the bounded remainder
r + K * r = (-K)^<P> * F is time stepped, so the check is partial on the grid.
A regularity of 0 hands the whole equation to the time stepping.
"""
import logging as lg
import math

import numpy as np

from .errors import InvalidParameter, SingularStep
from .gps_algebra import (GeneralizedPowerSeries, gps_add, gps_convolution_power, gps_convolve,
                          gps_evaluate_many, gps_scale, gps_zero)
from .special_functions import rgamma
from .utility import CONST, write_csv


class UniformGrid:
    """
    Brief : Nodes t_i = i h, i = 0 .. n_steps, h = t_end / n_steps
    """
    def __init__(self, t_end=None, n_steps=None):
        if t_end is None:
            t_end = CONST.get_t_end()
        if n_steps is None:
            n_steps = CONST.get_n_steps()
        if not t_end > 0:
            raise InvalidParameter(f"t_end must be > 0, got {t_end}")
        if int(n_steps) != n_steps or n_steps < CONST.get_min_steps():
            raise InvalidParameter(
                f"n_steps must be an integer >= {CONST.get_min_steps()}, got {n_steps}"
                )
        self.t_end = float(t_end)
        self.n_steps = int(n_steps)
        self.h = self.t_end / self.n_steps


    def nodes(self):
        """
        Brief : Get the grid nodes
        Return : Array of n_steps + 1 times
        """
        return self.h * np.arange(self.n_steps + 1)


    def interior_mask(self, fraction=None):
        """
        Brief : Select the nodes t >= fraction * t_end where errors are measured
        Return : Boolean array
        > fraction : Fraction of t_end, the configured one if None
        """
        if fraction is None:
            fraction = CONST.get_interior_fraction()
        return self.nodes() >= fraction * self.t_end - 1e-12 * self.t_end


    def __repr__(self):
        return f'UniformGrid(t_end={self.t_end}, n_steps={self.n_steps})'


class SampledFunction:
    """
    Brief : Values on a grid. The value at t = 0 is NaN when singular.
    A function sampled from a series remembers its part with exponents < 1
    (singular_part) and the samples of the bounded rest (regular)
    """
    def __init__(self, grid, values, singular=False, singular_part=None, regular=None):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n_steps + 1,):
            raise InvalidParameter(
                f"{grid} needs {grid.n_steps + 1} values, got shape {values.shape}"
                )
        self.grid = grid
        self.values = values
        self.singular = singular
        self.singular_part = gps_zero() if singular_part is None else singular_part
        self.regular = values if regular is None else np.asarray(regular, dtype=float)


    def interior(self, fraction=None):
        """
        Brief : Get the interior nodes and values
        Return : (times, values)
        > fraction : Fraction of t_end
        """
        mask = self.grid.interior_mask(fraction)
        return self.grid.nodes()[mask], self.values[mask]


def _split(f, tol=None):
    """
    Brief : Split a series into the terms with exponent < 1 and the rest
    Return : (singular, regular) series
    > f : GeneralizedPowerSeries
    > tol : Exponent tolerance
    """
    if tol is None:
        tol = CONST.get_exponent_tol()
    exponents, coeffs = f.get_exponents(), f.get_coeffs()
    low = exponents < 1.0 - tol
    return (GeneralizedPowerSeries(exponents[low], coeffs[low], cap=f.get_cap()),
            GeneralizedPowerSeries(exponents[~low], coeffs[~low], cap=f.get_cap()))


def _value_at_zero(f):
    """
    Brief : Limit at 0 of a series whose exponents are >= 1
    Return : The h_1 coefficient
    > f : GeneralizedPowerSeries
    """
    return float(np.real(f.coefficient_at(1.0)))


def sample(f, grid):
    """
    Brief : Evaluate a series on the grid nodes, t_0 flagged singular when the
    series has a term with exponent < 1
    Return : SampledFunction
    > f : Series without identity part
    > grid : UniformGrid
    """
    if f.get_delta() != 0:
        raise InvalidParameter("only functions (no identity part) can be sampled")
    singular_part, regular_part = _split(f)
    nodes = grid.nodes()
    regular = np.empty(nodes.size)
    regular[0] = _value_at_zero(regular_part)
    regular[1:] = np.real(gps_evaluate_many(regular_part, nodes[1:]))
    values = regular.copy()
    singular = not singular_part.is_zero()
    if singular:
        values[1:] += np.real(gps_evaluate_many(singular_part, nodes[1:]))
        values[0] = np.nan
    return SampledFunction(grid, values, singular, singular_part, regular)


## Product integration
def _kernel_values(kernel, u):
    """
    Brief : Evaluate a series kernel at points u >= 0 (vectorized)
    Return : Array of values
    > kernel : GeneralizedPowerSeries
    > u : Array of points
    """
    exponents = kernel.get_exponents()
    weights = np.real(kernel.get_coeffs()) * rgamma(exponents)
    with np.errstate(divide='ignore', invalid='ignore', under='ignore'):
        powers = np.power.outer(u, exponents - 1.0)
    return powers @ weights


def _exact_moments(kernel, h, k):
    """
    Brief : Weights (1/h) int K(u) (u - a) du and (1/h) int K(u) (b - u) du on
    [a, b] = [(k-1) h, k h] from h_(mu+1) and h_(mu+2), u h_mu = mu h_(mu+1)
    Return : (A_k, B_k)
    > kernel : GeneralizedPowerSeries
    > h : Step
    > k : Interval index >= 1
    """
    a, b = (k - 1) * h, k * h
    mu = kernel.get_exponents()
    coeffs = np.real(kernel.get_coeffs())
    primitive = lambda nu, u: u ** (nu - 1.0) * rgamma(nu)
    first = primitive(mu + 1.0, b) - primitive(mu + 1.0, a)
    second = mu * (primitive(mu + 2.0, b) - primitive(mu + 2.0, a))
    left = float(np.dot(coeffs, second - a * first)) / h
    right = float(np.dot(coeffs, b * first - second)) / h
    return left, right


def product_weights(kernel, grid, n_exact=4, gauss_order=None):
    """
    Brief : Weights of piecewise linear product integration,
    (K * g)(t_i) = sum_(k=1..i) A_k g_(i-k) + B_k g_(i-k+1).
    The first n_exact intervals use exact moments, the others Gauss-Legendre
    Return : (A, B) arrays indexed by k = 0 .. n_steps + 1 (index 0 unused)
    > kernel : GeneralizedPowerSeries without identity part
    > grid : UniformGrid
    > n_exact : Number of intervals with exact moments
    > gauss_order : Number of Gauss-Legendre nodes
    """
    if gauss_order is None:
        gauss_order = CONST.get_gauss_order()
    count = grid.n_steps + 2
    h = grid.h
    left = np.zeros(count)
    right = np.zeros(count)
    if len(kernel) == 0:
        return left, right
    last_exact = min(n_exact, count - 1)
    for k in range(1, last_exact + 1):
        left[k], right[k] = _exact_moments(kernel, h, k)
    if last_exact + 1 < count:
        xi, wi = np.polynomial.legendre.leggauss(gauss_order)
        x = 0.5 * (xi + 1.0)
        w = 0.5 * wi
        starts = h * (np.arange(last_exact + 1, count) - 1)
        values = _kernel_values(kernel, (starts[:, None] + h * x[None, :]).ravel())
        values = values.reshape(starts.size, gauss_order)
        left[last_exact + 1:] = h * (values @ (w * x))
        right[last_exact + 1:] = h * (values @ (w * (1.0 - x)))
    return left, right


def _convolve_regular(left, right, values):
    """
    Brief : Apply the product integration weights to samples of a bounded function
    Return : Array of (K * g)(t_i)
    > left, right : Weights from product_weights
    > values : Samples g_0 .. g_n
    """
    n = values.size
    combined = left[:n] + right[1:n + 1]
    return np.convolve(combined, values)[:n] - right[1:n + 1] * values[0]


def conv_quadrature(kernel, g):
    """
    Brief : Approximate (kernel * g)(t_i). The singular part of a sampled series is
    convolved exactly, the bounded rest by product integration
    Return : SampledFunction
    > kernel : GeneralizedPowerSeries without identity part
    > g : SampledFunction
    """
    if kernel.get_delta() != 0:
        raise InvalidParameter("a quadrature kernel must not have an identity part")
    grid = g.grid
    left, right = product_weights(kernel, grid)
    values = _convolve_regular(left, right, g.regular)
    singular = False
    if not g.singular_part.is_zero():
        exact = sample(gps_convolve(kernel, g.singular_part), grid)
        values = values + np.nan_to_num(exact.values)
        singular = exact.singular
        if singular:
            values[0] = np.nan
    return SampledFunction(grid, values, singular)


## Volterra equations
def volterra_system(problem):
    """
    Brief : Kernel and right-hand side of y + K * y = F,
    K = sum_(n<m) (b_n / b_m) kappa^<m-n>,
    F = (kappa^<m> * f + sum_n b_n sum_(j<n) c_j kappa^<m-n+j+1> * k1) / b_m
    Return : (K, F)
    > problem : IVProblem
    """
    kappa = problem.triple.kappa
    k1 = problem.triple.k1
    b_coeffs = problem.b_coeffs
    m = problem.degree()
    b_m = b_coeffs[m]
    kernel = gps_zero()
    for n in range(m):
        if b_coeffs[n] != 0:
            power = gps_convolution_power(kappa, m - n)
            kernel = gps_add(kernel, gps_scale(power, b_coeffs[n] / b_m))
    rhs = gps_convolve(gps_convolution_power(kappa, m), problem.forcing)
    for n in range(1, m + 1):
        for j in range(n):
            c = problem.initial_values[j]
            if c != 0:
                term = gps_convolve(gps_convolution_power(kappa, m - n + j + 1), k1)
                rhs = gps_add(rhs, gps_scale(term, b_coeffs[n] * c))
    return kernel, gps_scale(rhs, 1.0 / b_m)


def regularize(kernel, rhs, regularity=None, max_terms=1000):
    """
    Brief : Split y = Y + r with Y = sum_(p<P) (-K)^<p> * F exact, leaving
    r + K * r = (-K)^<P> * F with leading exponent >= regularity
    Return : (Y, remaining right-hand side)
    > kernel : K
    > rhs : F
    > regularity : Leading exponent handed over to the time stepping, 0 disables
    > max_terms : Largest number of subtracted terms
    """
    if regularity is None:
        regularity = CONST.get_regularity_exponent()
    exact = gps_zero()
    count = 0
    while rhs.leading_exponent() < regularity and count < max_terms:
        exact = gps_add(exact, rhs)
        rhs = gps_scale(gps_convolve(kernel, rhs), -1.0)
        count += 1
    lg.debug("Subtracted %d Picard terms, remaining leading exponent %g",
             count, rhs.leading_exponent())
    return exact, rhs


def time_step(kernel, rhs_values, grid, r_start=0.0):
    """
    Brief : Solve r_i + (K * r)(t_i) = R_i node after node, the weight of r_i
    inverted at every step
    Return : Array r_0 .. r_n
    > kernel : K
    > rhs_values : R_0 .. R_n
    > grid : UniformGrid
    > r_start : r_0
    """
    left, right = product_weights(kernel, grid)
    n = grid.n_steps
    combined = left[:n + 1] + right[1:n + 2]
    diagonal = 1.0 + combined[0]
    if abs(diagonal) <= 1e-14 * max(1.0, abs(combined[0])):
        raise SingularStep(f"implicit weight 1 + {combined[0]:.6g} vanishes at node 1")
    r = np.zeros(n + 1)
    r[0] = r_start
    for i in range(1, n + 1):
        history = np.dot(combined[1:i + 1], r[i - 1::-1])
        r[i] = (rhs_values[i] - history + right[i + 1] * r[0]) / diagonal
    lg.debug("Volterra steps done on %s", grid)
    return r


def solve_volterra_ivp(problem, grid, regularity=None):
    """
    Brief : Solve an IVP on a grid through its second kind Volterra equation
    Return : SampledFunction
    > problem : IVProblem
    > grid : UniformGrid
    > regularity : Leading exponent handed over to the time stepping
    """
    kernel, rhs = volterra_system(problem)
    exact, remainder = regularize(kernel, rhs, regularity)
    remainder_samples = sample(remainder, grid)
    r_start = 0.0 if remainder_samples.singular else remainder_samples.values[0]
    r = time_step(kernel, np.nan_to_num(remainder_samples.values), grid, r_start)
    exact_samples = sample(exact, grid)
    values = exact_samples.values + r
    return SampledFunction(grid, values, exact_samples.singular or remainder_samples.singular)


def oracle_comparison(closed_form, sampled, fraction=None):
    """
    Brief : Compare closed form values with a grid solution on the nodes t > 0
    Return : (rows (t, y_closed, y_volterra, abs_err, rel_err), max relative error
    over the interior nodes measured against max |y_closed| there)
    > closed_form : Callable t -> value
    > sampled : SampledFunction
    > fraction : Fraction of t_end where the interior starts
    """
    nodes = sampled.grid.nodes()
    mask = sampled.grid.interior_mask(fraction)
    row_list = []
    closed_values = np.zeros(nodes.size)
    for i in range(1, nodes.size):
        closed = float(np.real(closed_form(nodes[i])))
        closed_values[i] = closed
        error = abs(closed - sampled.values[i])
        relative = error / abs(closed) if closed != 0 else math.inf
        row_list.append((nodes[i], closed, sampled.values[i], error, relative))
    errors = np.abs(closed_values - sampled.values)[mask]
    scale = float(np.max(np.abs(closed_values[mask])))
    return row_list, float(np.max(errors)) / max(scale, np.finfo(float).tiny)


def convergence_study(problem, closed_form, steps_list=(64, 128, 256, 512), t_end=None,
                      regularity=None):
    """
    Brief : Error of the grid solution against a closed form for several steps
    Return : List of rows (n_steps, h, max_err, observed_order), the first order NaN
    > problem : IVProblem
    > closed_form : Callable t -> value
    > steps_list : Increasing numbers of steps
    > t_end : End of the grid
    > regularity : Leading exponent handed over to the time stepping
    """
    row_list = []
    previous = None
    for n_steps in steps_list:
        grid = UniformGrid(t_end, n_steps)
        sampled = solve_volterra_ivp(problem, grid, regularity)
        times, values = sampled.interior()
        exact = np.array([float(np.real(closed_form(t))) for t in times])
        max_err = float(np.max(np.abs(values - exact)))
        order = math.nan
        if previous is not None and max_err > 0:
            order = math.log(previous[1] / max_err) / math.log(n_steps / previous[0])
        row_list.append((n_steps, grid.h, max_err, order))
        lg.debug("n_steps=%d max_err=%.3g order=%s", n_steps, max_err, order)
        previous = (n_steps, max_err)
    return row_list


def write_samples_csv(file_path, sampled):
    """
    Brief : Save a grid solution as CSV, header "t,y", one row per node
    Return : None
    > file_path : Path of the file to write
    > sampled : SampledFunction
    """
    write_csv(file_path, ['t', 'y'], zip(sampled.grid.nodes(), sampled.values))
