#! /usr/bin/env python3
# coding: utf8

"""
File : series_check.py
Author : lgbarrere
Brief : Assertion helpers shared by the tests
"""
import numpy as np

from ..manager.gps_algebra import gps_subtract


def series_gap(a, b):
    """
    Brief : Largest coefficient of a - b relative to the coefficients of a and b,
    compared below the smaller cap
    Return : The gap
    > a, b : GeneralizedPowerSeries
    """
    scale = 1.0
    for series in (a, b):
        if len(series):
            scale = max(scale, float(np.max(np.abs(series.get_coeffs()))))
        scale = max(scale, abs(series.get_delta()))
    difference = gps_subtract(a, b)
    worst = abs(difference.get_delta())
    if len(difference):
        worst = max(worst, float(np.max(np.abs(difference.get_coeffs()))))
    return worst / scale


def assert_series_close(a, b, rtol=1e-12):
    """
    Brief : Assert that two series agree coefficientwise
    > a, b : GeneralizedPowerSeries
    > rtol : Relative tolerance
    """
    gap = series_gap(a, b)
    assert gap <= rtol, f"series differ by {gap:.3e}:\n{a}\n{b}"
