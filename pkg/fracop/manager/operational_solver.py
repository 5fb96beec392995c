#! /usr/bin/env python3
# coding: utf8

"""
File : operational_solver.py
Author : lgbarrere
Brief : Solve linear fractional differential equations with 1st level GFDs.
The equation becomes P(S_kappa) y = f + Q(S_kappa) k1 with polynomials P, Q in the
symbol S_kappa, and the partial fractions of 1/P and Q/P are turned into
convolution series y = f * G + k1 * U
"""
import logging as lg
import math

import numpy as np
from scipy import linalg

from .conv_series import capital_L, resolvent, resolvent_power
from .errors import IllConditioned, InvalidParameter, ProblemFormatError, TruncationHorizonExceeded
from .gfc_operators import OperatorContext, gfd_nfold, projector_nfold
from .gps_algebra import (gps_abs, gps_add, gps_convolve, gps_evaluate, gps_from_json, gps_real,
                          gps_scale, gps_subtract, gps_tail_band, gps_to_json, gps_zero,
                          term_values)
from .kernel_catalog import triple_from_json
from .utility import CONST


class IVProblem:
    """
    Brief : sum_n b_n D^<n> y = f with (I_(k2) D^<j> y)(0) = c_j, j < m
    """
    def __init__(self, triple, b_coeffs, initial_values, forcing=None):
        b_coeffs = [float(b) for b in b_coeffs]
        initial_values = [float(c) for c in initial_values]
        if len(b_coeffs) < 2:
            raise InvalidParameter(f"an equation needs b_0 .. b_m with m >= 1, got {b_coeffs}")
        if b_coeffs[-1] == 0:
            raise InvalidParameter("the leading coefficient b_m must be nonzero")
        if len(initial_values) != len(b_coeffs) - 1:
            raise InvalidParameter(
                f"an equation of degree {len(b_coeffs) - 1} needs {len(b_coeffs) - 1} "
                f"initial values, got {len(initial_values)}"
                )
        if forcing is None:
            forcing = gps_zero()
        if forcing.get_delta() != 0:
            raise InvalidParameter("the forcing term must be a function (no identity part)")
        self.triple = triple
        self.b_coeffs = b_coeffs
        self.initial_values = initial_values
        self.forcing = forcing


    def degree(self):
        """
        Brief : Get the order m of the equation
        Return : m
        """
        return len(self.b_coeffs) - 1


    def __repr__(self):
        return (f'IVProblem({self.triple.family_tag}, b={self.b_coeffs}, '
                f'c={self.initial_values})')


class RationalOperator:
    """
    Brief : numerator(S) / denominator(S), coefficients by increasing power of S
    """
    def __init__(self, numerator, denominator):
        numerator = np.trim_zeros(np.asarray(numerator, dtype=float), 'b')
        denominator = np.trim_zeros(np.asarray(denominator, dtype=float), 'b')
        if denominator.size == 0:
            raise InvalidParameter("the denominator polynomial is zero")
        self.numerator = numerator
        self.denominator = denominator


    def degree(self):
        """
        Brief : Get the denominator degree
        Return : The degree
        """
        return self.denominator.size - 1


    def is_proper(self):
        """
        Brief : Check deg numerator < deg denominator
        Return : True if proper
        """
        return self.numerator.size - 1 < self.degree()


    def evaluate(self, z):
        """
        Brief : Evaluate the rational function
        Return : numerator(z) / denominator(z)
        > z : Array of complex points
        """
        return (np.polynomial.polynomial.polyval(z, self.numerator)
                / np.polynomial.polynomial.polyval(z, self.denominator))


class PartialFractionDecomposition:
    """
    Brief : sum_i sum_(j <= m_i) residues[i][j-1] / (z - poles[i])^j
    """
    def __init__(self, poles, multiplicities, residues, cancelled=(), residual=0.0):
        self.poles = list(poles)
        self.multiplicities = list(multiplicities)
        self.residues = [list(row) for row in residues]
        self.cancelled = list(cancelled)
        self.residual = residual


    def evaluate(self, z):
        """
        Brief : Evaluate the decomposition
        Return : Array of values
        > z : Array of complex points
        """
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for pole, row in zip(self.poles, self.residues):
            for j, residue in enumerate(row, start=1):
                total = total + residue / (z - pole) ** j
        return total


    def terms(self):
        """
        Brief : Iterate over the fractions
        Return : List of (pole, power j, residue)
        """
        return [(pole, j, residue) for pole, row in zip(self.poles, self.residues)
                for j, residue in enumerate(row, start=1)]


    def __repr__(self):
        return f'PartialFractionDecomposition(poles={self.poles}, residues={self.residues})'


class SolutionExpression:
    """
    Brief : y = f * G + k1 * U, with the decompositions behind G and U
    """
    def __init__(self, G, U, forcing, k1, pfd_g=None, pfd_u=None, horizon_tol=None):
        if horizon_tol is None:
            horizon_tol = CONST.get_horizon_tol()
        self.G = G
        self.U = U
        self.forcing = forcing
        self.k1 = k1
        self.pfd_g = pfd_g
        self.pfd_u = pfd_u
        self.horizon_tol = horizon_tol
        self.__series = None


    def materialized(self):
        """
        Brief : The solution as a single series
        Return : GeneralizedPowerSeries
        """
        if self.__series is None:
            self.__series = gps_add(gps_convolve(self.forcing, self.G),
                                    gps_convolve(self.k1, self.U))
        return self.__series


    def tail_ratio(self, t):
        """
        Brief : Weight of the last retained exponent band relative to the sum of
        the term magnitudes at t
        Return : The ratio, 0 for an exact solution
        > t : Time t > 0
        """
        series = self.materialized()
        width = self.G.leading_exponent()
        if not math.isfinite(width) or width == 0:
            width = None
        band = gps_tail_band(series, t, width)
        if band == 0:
            return 0.0
        return band / float(np.sum(np.abs(term_values(series, t))))


    def evaluate(self, t, refuse=True):
        """
        Brief : Evaluate the solution at t
        Return : y(t)
        > t : Time t > 0
        > refuse : Raise when t lies beyond the truncation horizon, warn otherwise
        """
        ratio = self.tail_ratio(t)
        if ratio > self.horizon_tol:
            message = (f"t = {t:g} lies beyond the truncation horizon: last exponent band "
                       f"weighs {ratio:.3g} > {self.horizon_tol:g}, raise the order")
            if refuse:
                raise TruncationHorizonExceeded(message)
            lg.warning(message)
        return gps_evaluate(self.materialized(), t)


    def evaluate_many(self, times, refuse=True):
        """
        Brief : Evaluate the solution at several times
        Return : Array of values
        > times : Iterable of times t > 0
        > refuse : See evaluate
        """
        return np.array([self.evaluate(t, refuse) for t in times])


## Simple equations
def solve_basic(triple, y0, f):
    """
    Brief : D y = f with (I_(k2) y)(0) = y0, y = kappa * f + y0 kappa * k1
    Return : SolutionExpression
    > triple : KernelTriple
    > y0 : Initial value
    > f : Forcing series
    """
    if f.get_delta() != 0:
        raise InvalidParameter("the forcing term must be a function (no identity part)")
    kappa = triple.kappa
    return SolutionExpression(kappa, gps_scale(kappa, y0), f, triple.k1)


def solve_relaxation(triple, lam, y0, f, order=None):
    """
    Brief : D y - lambda y = f with (I_(k2) y)(0) = y0,
    y = l_{kappa,lambda} * f + y0 l_{kappa,lambda} * k1
    Return : SolutionExpression
    > triple : KernelTriple
    > lam : lambda
    > y0 : Initial value
    > f : Forcing series
    > order : Number of convolution powers of the resolvent
    """
    if f.get_delta() != 0:
        raise InvalidParameter("the forcing term must be a function (no identity part)")
    series = resolvent(triple.kappa, lam, order).series
    return SolutionExpression(series, gps_scale(series, y0), f, triple.k1)


def solve_caputo_relaxation_closed_form(triple, lam, y0, f, order=None):
    """
    Brief : For a Caputo type triple (kappa, k, I), y = l * f + y0 L_{kappa,lambda}
    Return : GeneralizedPowerSeries
    > triple : KernelTriple with k2 = I
    > lam : lambda
    > y0 : Initial value
    > f : Forcing series
    > order : Number of convolution powers
    """
    if not triple.is_caputo_type():
        raise InvalidParameter("the L form of the solution needs a Caputo type triple")
    series = resolvent(triple.kappa, lam, order).series
    homogeneous = gps_scale(capital_L((triple.kappa, triple.k1), lam, order), y0)
    return gps_add(gps_convolve(series, f), homogeneous)


## Rational operators
def build_rational(problem):
    """
    Brief : P = sum_n b_n S^n and Q = sum_(n>=1) b_n sum_(j<n) c_j S^(n-j-1)
    Return : (P, Q) coefficient arrays by increasing power
    > problem : IVProblem
    """
    m = problem.degree()
    p_coeffs = np.array(problem.b_coeffs, dtype=float)
    q_coeffs = np.zeros(m)
    for n in range(1, m + 1):
        for j in range(n):
            q_coeffs[n - j - 1] += problem.b_coeffs[n] * problem.initial_values[j]
    return p_coeffs, q_coeffs


def _roots(coeffs):
    """
    Brief : Roots of a polynomial as the eigenvalues of its companion matrix
    Return : Array of complex roots
    > coeffs : Coefficients by increasing power, leading one nonzero
    """
    if coeffs.size < 2:
        return np.zeros(0, dtype=complex)
    return np.linalg.eigvals(linalg.companion(coeffs[::-1])).astype(complex)


def _cluster(roots, root_tol):
    """
    Brief : Group roots closer than root_tol (relative to their size) into
    multiple roots located at the cluster mean
    Return : (centers, multiplicities)
    > roots : Array of roots
    > root_tol : Clustering radius
    """
    group_list = []
    for root in roots:
        for group in group_list:
            center = np.mean(group)
            if abs(root - center) <= root_tol * max(1.0, abs(center)):
                group.append(root)
                break
        else:
            group_list.append([root])
    centers = []
    for group in group_list:
        center = complex(np.mean(group))
        if abs(center.imag) <= root_tol * max(1.0, abs(center)):
            center = complex(center.real, 0.0)
        centers.append(center)
    return centers, [len(group) for group in group_list]


def _sample_points(radius, count, offset):
    """
    Brief : Points on a circle of the complex plane
    Return : Array of complex points
    > radius : Circle radius
    > count : Number of points
    > offset : Angle of the first point
    """
    angles = offset + 2.0 * math.pi * np.arange(count) / count
    return radius * np.exp(1j * angles)


def partial_fractions(rational, root_tol=None, error_tol=None):
    """
    Brief : Decompose a proper rational function. Poles come from companion matrix
    eigenvalues clustered into multiple roots, roots shared with the numerator
    are cancelled, residues solve a least squares system on sample points
    Return : PartialFractionDecomposition
    > rational : RationalOperator
    > root_tol : Clustering radius
    > error_tol : Recombination residual raising IllConditioned
    """
    if root_tol is None:
        root_tol = CONST.get_root_tol()
    if error_tol is None:
        error_tol = CONST.get_pfd_error_tol()
    if not rational.is_proper():
        raise InvalidParameter(
            f"the rational operator must be proper, got degrees {rational.numerator.size - 1} "
            f"/ {rational.degree()}"
            )
    if rational.degree() < 1:
        raise InvalidParameter("the denominator must have degree >= 1")
    poles, multiplicities = _cluster(_roots(rational.denominator), root_tol)
    cancelled = []
    for root in _roots(rational.numerator):
        for i, pole in enumerate(poles):
            if multiplicities[i] > 0 and abs(root - pole) <= root_tol * max(1.0, abs(pole)):
                multiplicities[i] -= 1
                cancelled.append(pole)
                break
    if cancelled:
        lg.warning("Cancelled common roots %s of numerator and denominator", cancelled)
    kept = [(pole, m) for pole, m in zip(poles, multiplicities) if m > 0]
    poles = [pole for pole, _ in kept]
    multiplicities = [m for _, m in kept]
    size = sum(multiplicities)
    if size == 0:
        return PartialFractionDecomposition([], [], [], cancelled, 0.0)
    radius = 1.0 + 2.0 * max(abs(pole) for pole in poles)
    points = _sample_points(radius, max(2 * size, 20), 0.3)
    matrix = np.column_stack([1.0 / (points - pole) ** j
                              for pole, m in zip(poles, multiplicities)
                              for j in range(1, m + 1)])
    solution = np.linalg.lstsq(matrix, rational.evaluate(points), rcond=None)[0]
    residues = []
    position = 0
    for m in multiplicities:
        residues.append([complex(a) for a in solution[position:position + m]])
        position += m
    pfd = PartialFractionDecomposition(poles, multiplicities, residues, cancelled)
    pfd.residual = recombination_residual(pfd, rational, _sample_points(1.5 * radius, 20, 1.1))
    if pfd.residual > error_tol:
        raise IllConditioned(
            f"partial fractions recombine with residual {pfd.residual:.3g} > {error_tol:g} "
            f"(condition estimate {np.linalg.cond(matrix):.3g})"
            )
    if pfd.residual > CONST.get_pfd_check_tol():
        lg.warning("Partial fractions recombine with residual %.3g", pfd.residual)
    lg.debug("Partial fractions: poles %s, residual %.3g", poles, pfd.residual)
    return pfd


def recombination_residual(pfd, rational, points):
    """
    Brief : Relative distance between the decomposition and the rational function
    Return : max |pfd(z) - R(z)| / max |R(z)| over the points
    > pfd : PartialFractionDecomposition
    > rational : RationalOperator
    > points : Array of complex points away from the poles
    """
    exact = rational.evaluate(points)
    scale = max(float(np.max(np.abs(exact))), np.finfo(float).tiny)
    return float(np.max(np.abs(pfd.evaluate(points) - exact))) / scale


def materialize(pfd, kappa, order=None):
    """
    Brief : Turn sum a_ij (S - lambda_i)^-j into sum a_ij l_{kappa,lambda_i}^<j>,
    conjugate poles recombined into a real series
    Return : GeneralizedPowerSeries
    > pfd : PartialFractionDecomposition
    > kappa : Kernel series
    > order : Number of convolution powers of each resolvent
    """
    total = gps_zero()
    magnitude = gps_zero()
    for pole, row in zip(pfd.poles, pfd.residues):
        lam = pole.real if pole.imag == 0 else pole
        r = resolvent(kappa, lam, order)
        for j, residue in enumerate(row, start=1):
            if isinstance(lam, complex) or abs(residue.imag) > CONST.get_imag_tol() * abs(residue):
                coeff = residue
            else:
                coeff = residue.real
            summand = gps_scale(resolvent_power(r, j), coeff)
            total = gps_add(total, summand)
            magnitude = gps_add(magnitude, gps_abs(summand))
    return gps_real(total, magnitude)


def solve_multiterm(problem, order=None):
    """
    Brief : Solve sum_n b_n D^<n> y = f, G from 1/P and U from Q/P
    Return : SolutionExpression
    > problem : IVProblem
    > order : Number of convolution powers of each resolvent
    """
    p_coeffs, q_coeffs = build_rational(problem)
    kappa = problem.triple.kappa
    pfd_g = partial_fractions(RationalOperator([1.0], p_coeffs))
    g_series = materialize(pfd_g, kappa, order)
    pfd_u = None
    u_series = gps_zero()
    if np.any(q_coeffs != 0):
        pfd_u = partial_fractions(RationalOperator(q_coeffs, p_coeffs))
        u_series = materialize(pfd_u, kappa, order)
    lg.debug("Multi-term solution built, %d + %d terms", len(g_series), len(u_series))
    return SolutionExpression(g_series, u_series, problem.forcing, problem.triple.k1,
                              pfd_g, pfd_u)


## Checks
def residual_check(problem, solution):
    """
    Brief : Apply sum_n b_n D^<n> to the materialized solution and compare with f,
    per exponent relative to the magnitude of the summed coefficients
    Return : The largest relative deviation
    > problem : IVProblem
    > solution : SolutionExpression
    """
    ctx = OperatorContext(problem.triple, validate=False)
    y = solution.materialized()
    lhs = gps_zero()
    magnitude = gps_abs(problem.forcing)
    for n, b in enumerate(problem.b_coeffs):
        if b == 0:
            continue
        summand = gps_scale(gfd_nfold(ctx, y, n), b)
        lhs = gps_add(lhs, summand)
        magnitude = gps_add(magnitude, gps_abs(summand))
    deviation = gps_subtract(lhs, problem.forcing)
    worst = 0.0
    for e, c in zip(deviation.get_exponents(), deviation.get_coeffs()):
        worst = max(worst, abs(c) / max(abs(magnitude.coefficient_at(e)), 1.0))
    return worst


def initial_values(problem, solution):
    """
    Brief : Projector values (I_(k2) D^<j> y)(0), j < m, of the materialized solution
    Return : List of m values
    > problem : IVProblem
    > solution : SolutionExpression
    """
    ctx = OperatorContext(problem.triple, validate=False)
    values, _ = projector_nfold(ctx, solution.materialized(), problem.degree())
    return [float(np.real(v)) for v in values]


## Documents
def problem_from_json(document, order=None):
    """
    Brief : Build a problem from {"triple": {...}, "b": [...], "c": [...],
    "lambda": ..., "forcing": <series>}. Without "b", "lambda" gives the
    relaxation equation D y - lambda y = f
    Return : IVProblem
    > document : Decoded JSON object
    > order : Number of terms of infinite kernel series
    """
    if not isinstance(document, dict) or 'triple' not in document:
        raise ProblemFormatError("a problem document needs a \"triple\" object")
    triple = triple_from_json(document['triple'], order)
    forcing = gps_zero()
    if 'forcing' in document:
        forcing = gps_from_json(document['forcing'])
    try:
        if 'b' in document:
            b_coeffs = document['b']
        else:
            b_coeffs = [-float(document.get('lambda', 0.0)), 1.0]
        c_coeffs = document.get('c', [0.0] * (len(b_coeffs) - 1))
        return IVProblem(triple, b_coeffs, c_coeffs, forcing)
    except (TypeError, ValueError) as error:
        raise ProblemFormatError(f"malformed problem coefficients: {error}") from error


def relaxation_lambda(problem):
    """
    Brief : Read the relaxation rate off a first order problem b = [b_0, b_1],
    b_1 D y + b_0 y = f being D y - lambda y = f / b_1
    Return : (lambda, b_1)
    > problem : IVProblem of degree 1
    """
    if problem.degree() != 1:
        raise InvalidParameter(f"a relaxation problem has degree 1, got {problem.degree()}")
    b0, b1 = problem.b_coeffs
    return -b0 / b1, b1


def _pfd_to_json(pfd):
    """
    Brief : Encode a decomposition as a pole/residue table
    Return : List of dictionaries
    > pfd : PartialFractionDecomposition or None
    """
    if pfd is None:
        return []
    return [{'pole': [pole.real, pole.imag], 'multiplicity': m,
             'residues': [[a.real, a.imag] for a in row]}
            for pole, m, row in zip(pfd.poles, pfd.multiplicities, pfd.residues)]


def solution_to_json(solution):
    """
    Brief : Encode a solution: series, truncation metadata, pole/residue tables
    Return : JSON-compatible dictionary
    > solution : SolutionExpression
    """
    series = solution.materialized()
    cancelled = []
    for pfd in (solution.pfd_g, solution.pfd_u):
        if pfd is not None:
            cancelled += [[root.real, root.imag] for root in pfd.cancelled]
    cap = series.get_cap()
    return {
        'solution': gps_to_json(series),
        'cap': cap if math.isfinite(cap) else None,
        'dropped': series.is_dropped(),
        'G': gps_to_json(solution.G),
        'U': gps_to_json(solution.U),
        'poles_G': _pfd_to_json(solution.pfd_g),
        'poles_U': _pfd_to_json(solution.pfd_u),
        'cancelled_roots': cancelled
        }
