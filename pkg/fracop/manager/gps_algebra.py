#! /usr/bin/env python3
# coding: utf8

"""
File : gps_algebra.py
Author : lgbarrere
Brief : Generalized power series, finite sums of c * h_mu(t) = c * t^(mu-1) / Gamma(mu)
plus an optional multiple of the convolution identity I (the Dirac delta h_0).
Convolution adds exponents, so the ring operations are exact up to a
truncation cap that records how far a series is known.
"""
import logging as lg
import math

import numpy as np

from .errors import ComplexResidue, EvalOfDistribution, InvalidParameter, ProblemFormatError
from .special_functions import rgamma
from .utility import CONST


class GPSTerm:
    """
    Brief : One term coeff * h_exponent(t)
    """
    def __init__(self, coeff, exponent):
        if not exponent > 0:
            raise InvalidParameter(f"term exponent must be > 0 (C_-1 membership), got {exponent}")
        if not np.isfinite(coeff):
            raise InvalidParameter(f"term coefficient must be finite, got {coeff}")
        self.coeff = coeff
        self.exponent = float(exponent)


    def __repr__(self):
        return f'{self.coeff:.6g}*h_{self.exponent:g}'


class GeneralizedPowerSeries:
    """
    Brief : delta * I + sum_j coeffs[j] * h_{exponents[j]}, exponents strictly increasing,
    every exponent <= cap (the series is exact below its cap, cap = inf means exact)
    """
    def __init__(self, exponents=(), coeffs=(), delta=0.0, cap=math.inf, dropped=False,
                 tol=None):
        if tol is None:
            tol = CONST.get_exponent_tol()
        exponents = np.asarray(exponents, dtype=float).ravel()
        coeffs = np.asarray(coeffs).ravel()
        if coeffs.dtype.kind not in 'fc':
            coeffs = coeffs.astype(float)
        if exponents.shape != coeffs.shape:
            raise InvalidParameter("exponents and coefficients must have the same length")
        if exponents.size and not np.all(exponents > 0):
            raise InvalidParameter(
                f"exponents must be > 0 (C_-1 membership), got min {exponents.min()}"
                )
        if not np.all(np.isfinite(coeffs)) or not np.isfinite(delta):
            raise InvalidParameter("series coefficients must be finite")
        exponents, coeffs, cut = _normalize(exponents, coeffs, cap, tol)
        exponents.setflags(write=False)
        coeffs.setflags(write=False)
        self.__exponents = exponents
        self.__coeffs = coeffs
        self.__delta = delta
        self.__cap = float(cap)
        self.__dropped = bool(dropped or cut)
        if cut:
            lg.debug("Dropped terms above the cap %g", cap)


    ## Getters
    def get_exponents(self):
        """
        Brief : Get the exponents (read-only array, increasing)
        Return : The exponents
        """
        return self.__exponents


    def get_coeffs(self):
        """
        Brief : Get the coefficients (read-only array)
        Return : The coefficients
        """
        return self.__coeffs


    def get_delta(self):
        """
        Brief : Get the coefficient of the identity element I
        Return : The coefficient
        """
        return self.__delta


    def get_cap(self):
        """
        Brief : Get the truncation cap
        Return : The cap, inf for an exact series
        """
        return self.__cap


    def get_terms(self):
        """
        Brief : Get the terms as GPSTerm objects
        Return : List of terms by increasing exponent
        """
        return [GPSTerm(c, e) for e, c in zip(self.__exponents, self.__coeffs)]


    def is_dropped(self):
        """
        Brief : Check if terms were discarded while building this series
        Return : True if some terms were dropped above a cap
        """
        return self.__dropped


    def is_truncated(self):
        """
        Brief : Check if the series is only known below a finite cap
        Return : True if the cap is finite
        """
        return math.isfinite(self.__cap)


    def is_zero(self):
        """
        Brief : Check if the series is the zero element
        Return : True if no term and no identity part
        """
        return self.__exponents.size == 0 and self.__delta == 0


    def is_complex(self):
        """
        Brief : Check if complex coefficients are stored
        Return : True if complex
        """
        return self.__coeffs.dtype.kind == 'c' or isinstance(self.__delta, complex)


    def leading_exponent(self):
        """
        Brief : Get the smallest exponent (0 for a nonzero identity part)
        Return : The exponent, inf for the zero series
        """
        if self.__delta != 0:
            return 0.0
        if self.__exponents.size == 0:
            return math.inf
        return float(self.__exponents[0])


    def coefficient_at(self, exponent, tol=None):
        """
        Brief : Get the coefficient of h_exponent
        Return : The coefficient, 0 if absent
        > exponent : The exponent to look up
        > tol : Exponent tolerance
        """
        if tol is None:
            tol = CONST.get_exponent_tol()
        hits = np.flatnonzero(np.abs(self.__exponents - exponent) <= tol)
        if hits.size == 0:
            return 0.0
        return self.__coeffs[hits[0]]


    def __len__(self):
        return int(self.__exponents.size)


    def __repr__(self):
        text_list = []
        if self.__delta != 0:
            text_list.append(f'{self.__delta}*I')
        text_list += [repr(term) for term in self.get_terms()[:6]]
        if self.__exponents.size > 6:
            text_list.append(f'... ({self.__exponents.size} terms)')
        body = ' + '.join(text_list) if text_list else '0'
        return f'GPS[{body}; cap={self.__cap:g}]'


def _normalize(exponents, coeffs, cap, tol):
    """
    Brief : Sort, merge exponents closer than tol, remove zero coefficients
    and cut exponents above the cap
    Return : (exponents, coeffs, cut) where cut tells if nonzero terms were cut
    > exponents : Exponent array
    > coeffs : Coefficient array
    > cap : Truncation cap
    > tol : Exponent tolerance
    """
    if exponents.size == 0:
        return exponents.copy(), coeffs.copy(), False
    order = np.argsort(exponents, kind='stable')
    exponents = exponents[order]
    coeffs = coeffs[order]
    starts = np.flatnonzero(np.concatenate(([True], np.diff(exponents) > tol)))
    exponents = exponents[starts]
    coeffs = np.add.reduceat(coeffs, starts)
    keep = coeffs != 0
    exponents = exponents[keep]
    coeffs = coeffs[keep]
    above = exponents > cap + tol
    return exponents[~above], coeffs[~above], bool(np.any(above))


def _effective_leading(a):
    """
    Brief : Smallest exponent the exact function behind a may have
    Return : min(leading exponent, cap)
    > a : GeneralizedPowerSeries
    """
    return min(a.leading_exponent(), a.get_cap())


## Constructors
def gps_zero(cap=math.inf):
    """
    Brief : The zero series
    Return : GeneralizedPowerSeries
    > cap : Truncation cap
    """
    return GeneralizedPowerSeries(cap=cap)


def gps_identity():
    """
    Brief : The convolution identity I (h_0, the Dirac delta)
    Return : GeneralizedPowerSeries
    """
    return GeneralizedPowerSeries(delta=1.0)


def gps_monomial(exponent, coeff=1.0):
    """
    Brief : The single term coeff * h_exponent
    Return : GeneralizedPowerSeries
    > exponent : Exponent mu > 0
    > coeff : Coefficient
    """
    return GeneralizedPowerSeries([exponent], [coeff])


## Ring operations
def gps_add(a, b):
    """
    Brief : Termwise sum, like exponents merged, cap = min of both caps
    Return : GeneralizedPowerSeries
    > a : First series
    > b : Second series
    """
    return GeneralizedPowerSeries(
        np.concatenate((a.get_exponents(), b.get_exponents())),
        np.concatenate((a.get_coeffs(), b.get_coeffs())),
        delta=a.get_delta() + b.get_delta(),
        cap=min(a.get_cap(), b.get_cap()),
        dropped=a.is_dropped() or b.is_dropped()
        )


def gps_scale(a, factor):
    """
    Brief : Multiply every coefficient by a scalar
    Return : GeneralizedPowerSeries
    > a : The series
    > factor : Real or complex scalar
    """
    return GeneralizedPowerSeries(
        a.get_exponents(), a.get_coeffs() * factor, delta=a.get_delta() * factor,
        cap=a.get_cap(), dropped=a.is_dropped()
        )


def gps_subtract(a, b):
    """
    Brief : a - b
    Return : GeneralizedPowerSeries
    > a : First series
    > b : Second series
    """
    return gps_add(a, gps_scale(b, -1.0))


def gps_convolve(a, b):
    """
    Brief : Laplace convolution, (c h_mu) * (d h_nu) = c d h_(mu+nu), I is the identity.
    The product is exact below min(cap_a + mu_b, cap_b + mu_a); terms above are dropped
    Return : GeneralizedPowerSeries
    > a : First series
    > b : Second series
    """
    ea, ca, da = a.get_exponents(), a.get_coeffs(), a.get_delta()
    eb, cb, db = b.get_exponents(), b.get_coeffs(), b.get_delta()
    exponent_list = [np.add.outer(ea, eb).ravel()]
    coeff_list = [np.multiply.outer(ca, cb).ravel()]
    if da != 0:
        exponent_list.append(eb)
        coeff_list.append(cb * da)
    if db != 0:
        exponent_list.append(ea)
        coeff_list.append(ca * db)
    cap = min(a.get_cap() + _effective_leading(b), b.get_cap() + _effective_leading(a))
    return GeneralizedPowerSeries(
        np.concatenate(exponent_list), np.concatenate(coeff_list),
        delta=da * db, cap=cap, dropped=a.is_dropped() or b.is_dropped()
        )


def gps_convolution_power(a, n):
    """
    Brief : n-fold self convolution, a^<0> = I
    Return : GeneralizedPowerSeries
    > a : The series
    > n : Nonnegative integer
    """
    if n < 0:
        raise InvalidParameter(f"convolution power must be >= 0, got {n}")
    result = gps_identity()
    for _ in range(n):
        result = gps_convolve(result, a)
    return result


def gps_truncate(a, cap):
    """
    Brief : Lower the truncation cap of a series
    Return : GeneralizedPowerSeries
    > a : The series
    > cap : New cap (kept if larger than the current one)
    """
    return GeneralizedPowerSeries(
        a.get_exponents(), a.get_coeffs(), delta=a.get_delta(),
        cap=min(cap, a.get_cap()), dropped=a.is_dropped()
        )


def gps_real(a, scale=None, tol=None):
    """
    Brief : Convert a complex series to a real one, asserting that the imaginary
    parts cancelled
    Return : GeneralizedPowerSeries with real coefficients
    > a : The series
    > scale : Optional series of magnitudes the imaginary parts are compared to
    (per exponent), |coefficient| otherwise
    > tol : Relative tolerance
    """
    if tol is None:
        tol = CONST.get_imag_tol()
    if not a.is_complex():
        return a
    coeffs = np.asarray(a.get_coeffs(), dtype=complex)
    if scale is None:
        reference = np.maximum(np.abs(coeffs), 1.0)
    else:
        reference = np.array(
            [abs(scale.coefficient_at(e)) for e in a.get_exponents()], dtype=float
            )
        reference = np.maximum(reference, 1.0)
    residue = np.abs(coeffs.imag) / reference if coeffs.size else np.zeros(0)
    delta = complex(a.get_delta())
    if residue.size and residue.max() > tol or abs(delta.imag) > tol * max(1.0, abs(delta)):
        worst = residue.max() if residue.size else abs(delta.imag)
        raise ComplexResidue(f"imaginary residue {worst:.3g} exceeds {tol:g}")
    return GeneralizedPowerSeries(
        a.get_exponents(), coeffs.real.copy(), delta=delta.real,
        cap=a.get_cap(), dropped=a.is_dropped()
        )


def gps_abs(a):
    """
    Brief : Series of coefficient magnitudes
    Return : GeneralizedPowerSeries
    > a : The series
    """
    return GeneralizedPowerSeries(
        a.get_exponents(), np.abs(a.get_coeffs()), delta=abs(a.get_delta()),
        cap=a.get_cap(), dropped=a.is_dropped()
        )


## Evaluation
def _check_point(a, t):
    """
    Brief : Check that a series can be evaluated at t
    Return : None
    > a : The series
    > t : Time
    """
    if a.get_delta() != 0:
        raise EvalOfDistribution("a series with a nonzero identity part is not a function")
    if not t > 0:
        raise InvalidParameter(f"series are evaluated at t > 0, got {t}")


def term_values(a, t):
    """
    Brief : Values of each term c_j h_mu_j(t)
    Return : Array of term values
    > a : The series
    > t : Time t > 0
    """
    exponents = a.get_exponents()
    with np.errstate(under='ignore'):
        return a.get_coeffs() * np.exp((exponents - 1.0) * math.log(t)) * rgamma(exponents)


def gps_evaluate(a, t):
    """
    Brief : Evaluate the series at t, terms summed by descending magnitude
    Return : The value (float, complex for complex coefficients)
    > a : Series with a zero identity part
    > t : Time t > 0
    """
    _check_point(a, t)
    values = term_values(a, t)
    values = values[np.argsort(-np.abs(values), kind='stable')]
    if a.is_complex():
        return complex(math.fsum(values.real), math.fsum(values.imag))
    return math.fsum(values)


def gps_evaluate_many(a, times):
    """
    Brief : Evaluate the series at several times
    Return : Array of values
    > a : Series with a zero identity part
    > times : Iterable of times t > 0
    """
    return np.array([gps_evaluate(a, t) for t in times])


def gps_tail_band(a, t, width=None):
    """
    Brief : Magnitude at t of the terms in the last retained exponent band
    (cap - width, cap], an estimate of the truncation error
    Return : Sum of |c_j h_mu_j(t)| over the band, 0 for an exact series
    > a : The series
    > t : Time t > 0
    > width : Band width, the leading exponent by default
    """
    _check_point(a, t)
    if not a.is_truncated() or len(a) == 0:
        return 0.0
    if width is None:
        width = a.leading_exponent()
    band = a.get_exponents() > a.get_cap() - width
    return float(np.sum(np.abs(term_values(a, t)[band])))


## Serialization
def _coeff_to_json(value):
    """
    Brief : Encode a coefficient, complex ones as [re, im]
    Return : Number or pair
    > value : Coefficient
    """
    value = complex(value)
    if value.imag == 0:
        return value.real
    return [value.real, value.imag]


def _coeff_from_json(value):
    """
    Brief : Decode a coefficient written by _coeff_to_json
    Return : float or complex
    > value : Number or [re, im]
    """
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ProblemFormatError(f"complex coefficient must be [re, im], got {value}")
        return complex(float(value[0]), float(value[1]))
    return float(value)


def gps_to_json(a):
    """
    Brief : Encode a series as {"delta": number, "terms": [[coeff, exponent], ...]}
    Return : JSON-compatible dictionary
    > a : The series
    """
    return {
        'delta': _coeff_to_json(a.get_delta()),
        'terms': [[_coeff_to_json(c), float(e)]
                  for e, c in zip(a.get_exponents(), a.get_coeffs())]
        }


def gps_from_json(document, cap=math.inf):
    """
    Brief : Decode a series written by gps_to_json
    Return : GeneralizedPowerSeries
    > document : Dictionary with "delta" and "terms"
    > cap : Truncation cap of the decoded series
    """
    if not isinstance(document, dict) or 'terms' not in document:
        raise ProblemFormatError("a series needs an object with a \"terms\" list")
    try:
        delta = _coeff_from_json(document.get('delta', 0.0))
        coeffs = [_coeff_from_json(term[0]) for term in document['terms']]
        exponents = [float(term[1]) for term in document['terms']]
    except (TypeError, ValueError, IndexError) as error:
        raise ProblemFormatError(f"malformed series terms: {error}") from error
    if any(isinstance(c, complex) for c in coeffs):
        coeffs = np.array(coeffs, dtype=complex)
    return GeneralizedPowerSeries(exponents, coeffs, delta=delta, cap=cap)
