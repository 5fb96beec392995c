#! /usr/bin/env python3
# coding: utf8

"""
File : kernel_catalog.py
Author : lgbarrere
Brief : Build Sonin kernel pairs (kappa, k) with kappa * k = 1 and 1st level
kernel triples (kappa, k1, k2) with kappa * k1 * k2 = 1 as generalized power series
"""
import logging as lg
import math

from .errors import (DegenerateLeadingCoefficient, InvalidParameter, ProblemFormatError,
                     TripleResidualTooLarge)
from .gps_algebra import (GeneralizedPowerSeries, gps_convolve, gps_identity, gps_monomial,
                          gps_subtract, gps_truncate)
from .special_functions import gamma, pochhammer, rgamma
from .utility import CONST


FAMILIES = ('power_law', 'prabhakar', 'bessel', 'series')
TRIPLE_KINDS = ('hilfer_power', 'rl_type', 'caputo_type', 'split', 'classical')


class SeriesKernelSpec:
    """
    Brief : kappa(t) = t^(alpha-1) * sum_n a_n (lambda t^beta)^n with 0 < alpha < 1,
    beta > 0, a_0 != 0. The coefficients are a finite list (a_n = 0 beyond it)
    or a rule n -> a_n for infinite families
    """
    def __init__(self, alpha, beta, lam, a_coeffs=None, a_rule=None):
        if not 0 < alpha < 1:
            raise InvalidParameter(f"series kernel needs 0 < alpha < 1, got alpha = {alpha}")
        if not beta > 0:
            raise InvalidParameter(f"series kernel needs beta > 0, got beta = {beta}")
        if (a_coeffs is None) == (a_rule is None):
            raise InvalidParameter("give either a_coeffs or a_rule")
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.lam = float(lam)
        self.a_coeffs = None if a_coeffs is None else [float(a) for a in a_coeffs]
        self.a_rule = a_rule
        if self.coefficients(1)[0] == 0:
            raise DegenerateLeadingCoefficient("a_0 must be nonzero")


    def is_finite(self):
        """
        Brief : Check if kappa_1 is a polynomial (finite coefficient list)
        Return : True for a finite list
        """
        return self.a_coeffs is not None


    def coefficients(self, n_terms):
        """
        Brief : Get the first coefficients a_0 .. a_(n_terms - 1)
        Return : List of floats (zero padded for a finite list)
        > n_terms : Number of coefficients
        """
        if self.a_coeffs is None:
            return [float(self.a_rule(n)) for n in range(n_terms)]
        return (self.a_coeffs + [0.0] * n_terms)[:n_terms]


    def shifted(self, gamma_):
        """
        Brief : Spec of kappa * h_gamma, the exponents moved from alpha + beta n
        to alpha + gamma + beta n
        Return : SeriesKernelSpec
        > gamma_ : Shift, 0 < gamma < 1 - alpha
        """
        alpha, beta = self.alpha, self.beta
        factor = lambda n: gamma(beta * n + alpha) * rgamma(beta * n + alpha + gamma_)
        if self.is_finite():
            return SeriesKernelSpec(
                alpha + gamma_, beta, self.lam,
                a_coeffs=[a * factor(n) for n, a in enumerate(self.a_coeffs)]
                )
        rule = self.a_rule
        return SeriesKernelSpec(
            alpha + gamma_, beta, self.lam, a_rule=lambda n: rule(n) * factor(n)
            )


    def __repr__(self):
        return f'SeriesKernelSpec(alpha={self.alpha}, beta={self.beta}, lambda={self.lam})'


class KernelPair:
    """
    Brief : Sonin pair kappa * k = 1 with the spec it was built from
    """
    def __init__(self, kappa, k, spec=None, family='custom'):
        self.kappa = kappa
        self.k = k
        self.spec = spec
        self.family = family


    def __repr__(self):
        return f'KernelPair({self.family}: kappa={self.kappa}, k={self.k})'


class KernelTriple:
    """
    Brief : Validated 1st level kernels (kappa, k1, k2), kappa * k1 * k2 = 1.
    k1 = I gives the Riemann-Liouville type GFD, k2 = I the Caputo type one
    """
    def __init__(self, kappa, k1, k2, family_tag='custom'):
        self.kappa = kappa
        self.k1 = k1
        self.k2 = k2
        self.family_tag = family_tag


    def is_rl_type(self):
        """
        Brief : Check if k1 is the identity
        Return : True for a Riemann-Liouville type triple
        """
        return _is_identity(self.k1)


    def is_caputo_type(self):
        """
        Brief : Check if k2 is the identity
        Return : True for a Caputo type triple
        """
        return _is_identity(self.k2)


    def __repr__(self):
        return f'KernelTriple({self.family_tag}: {self.kappa}, {self.k1}, {self.k2})'


def _is_identity(series):
    """
    Brief : Check if a series is exactly I
    Return : True or False
    > series : GeneralizedPowerSeries
    """
    return series.get_delta() == 1 and len(series) == 0


def _order(order):
    """
    Brief : Resolve the default validation order
    Return : The order
    > order : Requested order or None
    """
    return CONST.get_validation_order() if order is None else int(order)


## Series kernels
def kernel_series(spec, n_terms):
    """
    Brief : kappa of a spec as series sum_n a_n lambda^n Gamma(alpha + beta n) h_(alpha + beta n)
    Return : GeneralizedPowerSeries, exact for a finite spec that fits in n_terms
    > spec : SeriesKernelSpec
    > n_terms : Number of terms
    """
    n_terms = max(n_terms, len(spec.a_coeffs) if spec.is_finite() else 0)
    exponents = [spec.alpha + spec.beta * n for n in range(n_terms)]
    coeffs = [a * spec.lam ** n * gamma(e)
              for n, (a, e) in enumerate(zip(spec.coefficients(n_terms), exponents))]
    cap = math.inf if spec.is_finite() else exponents[-1]
    return GeneralizedPowerSeries(exponents, coeffs, cap=cap)


def associated_coefficients(spec, n_terms):
    """
    Brief : Solve the triangular system
    Gamma(alpha) Gamma(1-alpha) a_0 b_0 = 1,
    sum_n Gamma(beta n + alpha) Gamma(beta (N-n) + 1 - alpha) a_n b_(N-n) = 0
    by forward substitution
    Return : List b_0 .. b_(n_terms - 1)
    > spec : SeriesKernelSpec
    > n_terms : Number of coefficients
    """
    if n_terms < 1:
        raise InvalidParameter(f"n_terms must be >= 1, got {n_terms}")
    alpha, beta = spec.alpha, spec.beta
    a_coeffs = spec.coefficients(n_terms)
    if a_coeffs[0] == 0:
        raise DegenerateLeadingCoefficient("a_0 must be nonzero")
    # Work with A_n = Gamma(beta n + alpha) a_n and B_n = Gamma(beta n + 1 - alpha) b_n
    big_a = [gamma(beta * n + alpha) * a for n, a in enumerate(a_coeffs)]
    big_b = [1.0 / big_a[0]]
    for big_n in range(1, n_terms):
        total = math.fsum(big_a[n] * big_b[big_n - n] for n in range(1, big_n + 1))
        big_b.append(-total / big_a[0])
    return [b * rgamma(beta * n + 1.0 - alpha) for n, b in enumerate(big_b)]


def solve_associated_kernel(spec, n_terms):
    """
    Brief : Associated Sonin kernel k(t) = t^(-alpha) sum_n b_n (lambda t^beta)^n
    Return : GeneralizedPowerSeries with exponents 1 - alpha + beta n
    > spec : SeriesKernelSpec
    > n_terms : Number of terms (>= 1)
    """
    b_coeffs = associated_coefficients(spec, n_terms)
    exponents = [1.0 - spec.alpha + spec.beta * n for n in range(n_terms)]
    coeffs = [b * spec.lam ** n * gamma(e)
              for n, (b, e) in enumerate(zip(b_coeffs, exponents))]
    # A single-term kappa has a single-term associate
    exact = spec.is_finite() and not any(spec.a_coeffs[1:])
    cap = math.inf if exact else exponents[-1]
    return GeneralizedPowerSeries(exponents, coeffs, cap=cap)


## Pairs
def power_law_pair(alpha):
    """
    Brief : (h_alpha, h_(1-alpha))
    Return : KernelPair
    > alpha : 0 < alpha < 1
    """
    if not 0 < alpha < 1:
        raise InvalidParameter(f"power-law pair needs 0 < alpha < 1, got alpha = {alpha}")
    spec = SeriesKernelSpec(alpha, 1.0, 1.0, a_coeffs=[rgamma(alpha)])
    return KernelPair(gps_monomial(alpha), gps_monomial(1.0 - alpha), spec, 'power_law')


def prabhakar_coefficients(alpha, beta, gamma_, n_terms):
    """
    Brief : a_n = (-1)^n (gamma)_n / (n! Gamma(beta n + alpha)) of
    kappa(t) = t^(alpha-1) E^gamma_{beta,alpha}(-lambda t^beta)
    Return : List of coefficients
    > alpha, beta, gamma_ : Prabhakar parameters
    > n_terms : Number of coefficients
    """
    return [(-1) ** n * pochhammer(gamma_, n) / math.factorial(n) * rgamma(beta * n + alpha)
            for n in range(n_terms)]


def prabhakar_associate_coefficients(alpha, beta, gamma_, n_terms):
    """
    Brief : Closed form b_n = (-1)^n (-gamma)_n / (n! Gamma(beta n + 1 - alpha)) of
    k(t) = t^(-alpha) E^(-gamma)_{beta,1-alpha}(-lambda t^beta)
    Return : List of coefficients
    > alpha, beta, gamma_ : Prabhakar parameters
    > n_terms : Number of coefficients
    """
    return prabhakar_coefficients(1.0 - alpha, beta, -gamma_, n_terms)


def prabhakar_pair(alpha, beta, gamma_, lam, order=None):
    """
    Brief : Prabhakar pair, kappa from E^gamma_{beta,alpha}, k from the closed form
    with E^(-gamma)_{beta,1-alpha}
    Return : KernelPair
    > alpha : 0 < alpha < 1
    > beta : beta > 0
    > gamma_ : Pochhammer parameter
    > lam : lambda (real)
    > order : Number of terms
    """
    order = _order(order)
    spec = SeriesKernelSpec(
        alpha, beta, lam,
        a_rule=lambda n: ((-1) ** n * pochhammer(gamma_, n) / math.factorial(n)
                          * rgamma(beta * n + alpha))
        )
    kappa = kernel_series(spec, order)
    b_spec = SeriesKernelSpec(
        1.0 - alpha, beta, lam,
        a_coeffs=prabhakar_associate_coefficients(alpha, beta, gamma_, order)
        )
    k = gps_truncate(kernel_series(b_spec, order), 1.0 - alpha + beta * (order - 1))
    return KernelPair(kappa, k, spec, 'prabhakar')


def bessel_coefficients(alpha, n_terms):
    """
    Brief : Ascending series of (sqrt t)^(alpha-1) J_(alpha-1)(2 sqrt t),
    a_n = (-1)^n / (n! Gamma(n + alpha))
    Return : List of coefficients
    > alpha : 0 < alpha < 1
    > n_terms : Number of coefficients
    """
    return [(-1) ** n / math.factorial(n) * rgamma(n + alpha) for n in range(n_terms)]


def bessel_associate_coefficients(alpha, n_terms):
    """
    Brief : Ascending series of (sqrt t)^(-alpha) I_(-alpha)(2 sqrt t),
    b_n = 1 / (n! Gamma(n + 1 - alpha))
    Return : List of coefficients
    > alpha : 0 < alpha < 1
    > n_terms : Number of coefficients
    """
    return [rgamma(n + 1.0 - alpha) / math.factorial(n) for n in range(n_terms)]


def bessel_pair(alpha, order=None):
    """
    Brief : Sonin's Bessel pair, both kernels from their Bessel series
    Return : KernelPair
    > alpha : 0 < alpha < 1
    > order : Number of terms
    """
    order = _order(order)
    spec = SeriesKernelSpec(
        alpha, 1.0, 1.0, a_rule=lambda n: (-1) ** n / math.factorial(n) * rgamma(n + alpha)
        )
    kappa = kernel_series(spec, order)
    b_spec = SeriesKernelSpec(
        1.0 - alpha, 1.0, 1.0, a_coeffs=bessel_associate_coefficients(alpha, order)
        )
    k = gps_truncate(kernel_series(b_spec, order), 1.0 - alpha + (order - 1))
    return KernelPair(kappa, k, spec, 'bessel')


def series_pair(spec, order=None):
    """
    Brief : Pair of a custom series kernel, k from the triangular system
    Return : KernelPair
    > spec : SeriesKernelSpec
    > order : Number of terms
    """
    order = _order(order)
    return KernelPair(kernel_series(spec, order), solve_associated_kernel(spec, order),
                      spec, 'series')


def make_pair(family, order=None, **params):
    """
    Brief : Build a catalog pair by family name
    Return : KernelPair
    > family : One of FAMILIES
    > order : Number of terms of infinite series
    > params : Family parameters (alpha, beta, gamma, lam, a_coeffs)
    """
    lg.debug("Building %s pair %s", family, params)
    try:
        if family == 'power_law':
            return power_law_pair(params['alpha'])
        if family == 'prabhakar':
            return prabhakar_pair(params['alpha'], params.get('beta', 1.0),
                                  params['gamma'], params.get('lam', 1.0), order)
        if family == 'bessel':
            return bessel_pair(params['alpha'], order)
        if family == 'series':
            spec = SeriesKernelSpec(params['alpha'], params.get('beta', 1.0),
                                    params.get('lam', 1.0), a_coeffs=params['a_coeffs'])
            return series_pair(spec, order)
    except KeyError as error:
        raise InvalidParameter(f"{family} pair needs parameter {error}") from error
    raise InvalidParameter(f"unknown kernel family {family!r}, expected one of {FAMILIES}")


## Residuals
def residual_to_one(series):
    """
    Brief : Distance of a series from h_1 on its retained exponents
    Return : max(|c_1 - 1|, |other coefficients|, |identity part|)
    > series : GeneralizedPowerSeries
    """
    deviation = gps_subtract(series, gps_monomial(1.0))
    coeffs = deviation.get_coeffs()
    worst = float(max(abs(c) for c in coeffs)) if len(coeffs) else 0.0
    return max(worst, abs(deviation.get_delta()))


def sonin_residual(kappa, k):
    """
    Brief : Residual of the Sonin condition kappa * k = 1
    Return : The residual
    > kappa, k : GeneralizedPowerSeries
    """
    return residual_to_one(gps_convolve(kappa, k))


def triple_residual(kappa, k1, k2):
    """
    Brief : Residual of kappa * k1 * k2 = 1
    Return : The residual
    > kappa, k1, k2 : GeneralizedPowerSeries
    """
    return residual_to_one(gps_convolve(gps_convolve(kappa, k1), k2))


## Triples
def validate_triple(triple, tol=None):
    """
    Brief : Check kappa * k1 * k2 = 1 within tolerance
    Return : The triple
    > triple : KernelTriple
    > tol : Residual tolerance
    """
    if tol is None:
        tol = CONST.get_residual_tol()
    residual = triple_residual(triple.kappa, triple.k1, triple.k2)
    if not residual <= tol:
        raise TripleResidualTooLarge(
            f"{triple.family_tag}: kappa * k1 * k2 deviates from 1 by {residual:.3g} > {tol:g}"
            )
    lg.debug("Triple %s validated, residual %.3g", triple.family_tag, residual)
    return triple


def hilfer_power_triple(alpha, gamma_):
    """
    Brief : (h_alpha, h_gamma, h_(1-alpha-gamma)) of the Hilfer derivative
    Return : KernelTriple
    > alpha : 0 < alpha < 1
    > gamma_ : 0 < gamma < 1 - alpha
    """
    if not 0 < alpha < 1:
        raise InvalidParameter(f"hilfer_power needs 0 < alpha < 1, got alpha = {alpha}")
    if not 0 < gamma_ < 1 - alpha:
        raise InvalidParameter(
            f"hilfer_power needs 0 < gamma < 1 - alpha = {1 - alpha:g}, got gamma = {gamma_}"
            )
    return KernelTriple(gps_monomial(alpha), gps_monomial(gamma_),
                        gps_monomial(1.0 - alpha - gamma_), 'hilfer_power')


def split_triple(pair, gamma_, order=None):
    """
    Brief : (kappa, h_gamma, k2) with k2 the associate of kappa * h_gamma
    Return : KernelTriple
    > pair : KernelPair built from a SeriesKernelSpec
    > gamma_ : 0 < gamma < 1 - alpha, alpha the leading exponent of kappa
    > order : Number of terms of k2
    """
    if pair.spec is None:
        raise InvalidParameter("split needs a pair built from a series kernel spec")
    alpha = pair.spec.alpha
    if not 0 < gamma_ < 1 - alpha:
        raise InvalidParameter(
            f"split needs 0 < gamma < 1 - alpha = {1 - alpha:g}, got gamma = {gamma_}"
            )
    order = _order(order)
    k2 = solve_associated_kernel(pair.spec.shifted(gamma_), order)
    return KernelTriple(pair.kappa, gps_monomial(gamma_), k2, f'split({pair.family})')


def make_triple(kind, pair=None, alpha=None, gamma_=None, order=None, tol=None):
    """
    Brief : Build and validate a kernel triple
    Return : KernelTriple
    > kind : One of TRIPLE_KINDS
    > pair : KernelPair for rl_type, caputo_type and split
    > alpha, gamma_ : Parameters of hilfer_power (gamma_ also for split)
    > order : Number of terms for split
    > tol : Residual tolerance
    """
    if kind == 'hilfer_power':
        triple = hilfer_power_triple(alpha, gamma_)
    elif kind == 'classical':
        triple = KernelTriple(gps_monomial(1.0), gps_identity(), gps_identity(), 'classical')
    elif kind in ('rl_type', 'caputo_type', 'split'):
        if pair is None:
            raise InvalidParameter(f"{kind} triple needs a kernel pair")
        if kind == 'rl_type':
            triple = KernelTriple(pair.kappa, gps_identity(), pair.k, f'rl_type({pair.family})')
        elif kind == 'caputo_type':
            triple = KernelTriple(pair.kappa, pair.k, gps_identity(),
                                  f'caputo_type({pair.family})')
        else:
            triple = split_triple(pair, gamma_, order)
    else:
        raise InvalidParameter(f"unknown triple kind {kind!r}, expected one of {TRIPLE_KINDS}")
    return validate_triple(triple, tol)


## Catalog and documents
def catalog_pairs(order=None):
    """
    Brief : The reference catalog of Sonin pairs
    Return : List of (label, KernelPair)
    > order : Number of terms of infinite series
    """
    pair_list = []
    for alpha in (0.1, 0.5, 0.9):
        pair_list.append((f'power_law alpha={alpha}', power_law_pair(alpha)))
    for lam in (1.0, -1.0):
        pair_list.append((
            f'prabhakar alpha=0.6 beta=1 gamma=0.5 lambda={lam:g}',
            prabhakar_pair(0.6, 1.0, 0.5, lam, order)
            ))
    pair_list.append(('bessel alpha=0.5', bessel_pair(0.5, order)))
    return pair_list


def catalog_triples(order=None):
    """
    Brief : The reference catalog of kernel triples
    Return : List of (label, KernelTriple)
    > order : Number of terms of infinite series
    """
    triple_list = [('hilfer_power alpha=0.5 gamma=0.25', make_triple('hilfer_power', alpha=0.5,
                                                                     gamma_=0.25))]
    for label, pair in catalog_pairs(order):
        triple_list.append((f'rl_type {label}', make_triple('rl_type', pair)))
        triple_list.append((f'caputo_type {label}', make_triple('caputo_type', pair)))
    return triple_list


def verify_catalog(order=None):
    """
    Brief : Sonin and triple residuals of the whole catalog
    Return : List of (label, residual)
    > order : Number of terms of infinite series
    """
    row_list = []
    for label, pair in catalog_pairs(order):
        row_list.append((f'pair {label}', sonin_residual(pair.kappa, pair.k)))
    for label, triple in catalog_triples(order):
        row_list.append((f'triple {label}',
                         triple_residual(triple.kappa, triple.k1, triple.k2)))
    return row_list


def _number_field(document, key, where):
    """
    Brief : Read a numeric field of a kernel or triple document
    Return : float, None when the field is absent
    > document : Decoded JSON object
    > key : Field name
    > where : Document name for the error message
    """
    if key not in document:
        return None
    value = document[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFormatError(f"{where} field \"{key}\" must be a number, got {value!r}")
    return float(value)


def pair_from_json(document, order=None):
    """
    Brief : Build a pair from {"family": ..., "alpha": ..., "beta": ..., "lambda": ...,
    "gamma": ..., "a_coeffs": [...]}
    Return : KernelPair
    > document : Decoded JSON object
    > order : Number of terms of infinite series
    """
    if not isinstance(document, dict) or 'family' not in document:
        raise ProblemFormatError("a kernel document needs a \"family\" field")
    params = {}
    for key, name in (('alpha', 'alpha'), ('beta', 'beta'), ('gamma', 'gamma'),
                      ('lambda', 'lam')):
        value = _number_field(document, key, 'kernel')
        if value is not None:
            params[name] = value
    if 'a_coeffs' in document:
        a_coeffs = document['a_coeffs']
        if not isinstance(a_coeffs, list) or not a_coeffs or \
                any(isinstance(a, bool) or not isinstance(a, (int, float)) for a in a_coeffs):
            raise ProblemFormatError(
                f"kernel field \"a_coeffs\" must be a non-empty list of numbers, got {a_coeffs!r}"
                )
        params['a_coeffs'] = a_coeffs
    return make_pair(document['family'], order, **params)


def triple_from_json(document, order=None):
    """
    Brief : Build a triple from {"kind": ..., "alpha": ..., "gamma": ..., "pair": {...}}
    Return : KernelTriple
    > document : Decoded JSON object
    > order : Number of terms of infinite series
    """
    if not isinstance(document, dict) or 'kind' not in document:
        raise ProblemFormatError("a triple document needs a \"kind\" field")
    kind = document['kind']
    if not isinstance(kind, str):
        raise ProblemFormatError(f"triple field \"kind\" must be a string, got {kind!r}")
    alpha =_number_field(document, 'alpha', 'triple')
    gamma_ = _number_field(document, 'gamma', 'triple')
    required = {'hilfer_power': (('alpha', alpha), ('gamma', gamma_)),
                'split': (('gamma', gamma_),)}.get(kind, ())
    for key, value in required:
        if value is None:
            raise ProblemFormatError(f"a {kind} triple document needs a \"{key}\" field")
    pair = None
    if 'pair' in document:
        pair = pair_from_json(document['pair'], order)
    return make_triple(kind, pair, alpha=alpha, gamma_=gamma_, order=order)
