#! /usr/bin/env python3
# coding: utf8

"""
File : errors.py
Author : lgbarrere
Brief : Exceptions raised by the library, grouped by command-line exit status
"""


class FracOpError(Exception):
    """
    Brief : Root of every error raised by the library
    """
    exit_status = 1


class InputError(FracOpError):
    """
    Brief : Invalid input or violated precondition (exit status 1)
    """
    exit_status = 1


class NumericalError(FracOpError):
    """
    Brief : Numerical failure on valid input (exit status 2)
    """
    exit_status = 2


class InvalidParameter(InputError):
    """
    Brief : A parameter violates a family or problem constraint
    """


class DegenerateLeadingCoefficient(InputError):
    """
    Brief : The leading coefficient a_0 of a series kernel is zero
    """


class EvalOfDistribution(InputError):
    """
    Brief : Pointwise evaluation of a series carrying a Dirac part
    """


class NotDifferentiable(InputError):
    """
    Brief : A series has a term whose derivative leaves C_-1
    """


class DivergentAtZero(InputError):
    """
    Brief : The limit at 0 needed by a projector does not exist
    """


class TripleResidualTooLarge(InputError):
    """
    Brief : kappa * k1 * k2 is not the constant 1 within tolerance
    """


class ProblemFormatError(InputError):
    """
    Brief : A JSON document is missing, unreadable or malformed
    """


class NonConvergence(NumericalError):
    """
    Brief : A series summation reached its term cap
    """


class IllConditioned(NumericalError):
    """
    Brief : A partial fraction decomposition does not recombine
    """


class ComplexResidue(NumericalError):
    """
    Brief : Imaginary parts failed to cancel in a real-valued result
    """


class SingularStep(NumericalError):
    """
    Brief : The implicit equation of a time step cannot be solved
    """


class TruncationHorizonExceeded(NumericalError):
    """
    Brief : A truncated series is evaluated where its tail is not negligible
    """
