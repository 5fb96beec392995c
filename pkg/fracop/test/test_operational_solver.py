#! /usr/bin/env python3
# coding: utf8

"""
File : test_operational_solver.py
Author : lgbarrere
Brief : Test rational operators, partial fractions and the closed form solvers
"""
import json
import math

import numpy as np
import pytest

from ..manager.conv_series import resolvent, resolvent_power
from ..manager.errors import InvalidParameter, ProblemFormatError, TruncationHorizonExceeded
from ..manager.gps_algebra import (gps_convolve, gps_evaluate, gps_from_json, gps_monomial,
                                   gps_zero)
from ..manager.kernel_catalog import make_triple, power_law_pair
from ..manager.operational_solver import (IVProblem, RationalOperator, build_rational,
                                          initial_values, materialize, partial_fractions,
                                          problem_from_json, relaxation_lambda, residual_check,
                                          solution_to_json, solve_basic,
                                          solve_caputo_relaxation_closed_form, solve_multiterm,
                                          solve_relaxation)
from ..manager.special_functions import MLParams, mittag_leffler
from ..manager.utility import CONST, build_path, read_json
from .series_check import assert_series_close


def _triple(kind, alpha=0.5):
    return make_triple(kind, power_law_pair(alpha))


def _fixture(name, order=None):
    return problem_from_json(read_json(build_path(CONST.get_data_path(), file_name=name)), order)


def _residue_at(pfd, pole):
    """
    Brief : Residue row of the pole closest to the given one
    """
    distances = [abs(p - pole) for p in pfd.poles]
    i = int(np.argmin(distances))
    assert distances[i] < 1e-10
    return pfd.residues[i]


def test_solve_basic():
    caputo = _triple('caputo_type')
    solution = solve_basic(caputo, 1.0, gps_monomial(1.0))
    assert solution.evaluate(1.0) == pytest.approx(2.1283791671, abs=1e-10)
    assert solve_basic(caputo, 0.0, gps_zero()).materialized().is_zero()
    rl = solve_basic(_triple('rl_type'), 1.0, gps_zero())
    assert_series_close(rl.materialized(), gps_monomial(0.5), rtol=0.0)


@pytest.mark.parametrize('lam', [-1.0, 0.5])
def test_relaxation_against_mittag_leffler(lam):
    alpha = 0.5
    rl = solve_relaxation(_triple('rl_type'), lam, 1.0, gps_zero())
    caputo = solve_relaxation(_triple('caputo_type'), lam, 1.0, gps_zero())
    for t in np.linspace(0.1, 1.0, 10):
        z = lam * t ** alpha
        expected_rl = t ** (alpha - 1) * mittag_leffler(MLParams(alpha, alpha), z)
        expected_caputo = mittag_leffler(MLParams(alpha, 1.0), z)
        assert rl.evaluate(t) == pytest.approx(expected_rl, rel=1e-6)
        assert caputo.evaluate(t) == pytest.approx(expected_caputo, rel=1e-6)


def test_relaxation_special_cases():
    caputo = _triple('caputo_type')
    forcing = gps_monomial(1.0)
    zero_rate = solve_relaxation(caputo, 0.0, 1.0, forcing, 16)
    assert_series_close(zero_rate.materialized(), solve_basic(caputo, 1.0, forcing).materialized())
    closed = solve_caputo_relaxation_closed_form(caputo, -1.0, 1.0, forcing, 32)
    assert_series_close(closed, solve_relaxation(caputo, -1.0, 1.0, forcing, 32).materialized())
    with pytest.raises(InvalidParameter):
        solve_caputo_relaxation_closed_form(_triple('rl_type'), -1.0, 1.0, forcing)


def test_build_rational():
    triple = _triple('caputo_type')
    p_coeffs, q_coeffs = build_rational(IVProblem(triple, [1.5, 1.0], [2.0]))
    assert list(p_coeffs) == [1.5, 1.0]
    assert list(q_coeffs) == [2.0]
    p_coeffs, q_coeffs = build_rational(IVProblem(triple, [2.0, -3.0, 1.0], [1.0, 0.0]))
    assert list(p_coeffs) == [2.0, -3.0, 1.0]
    assert list(q_coeffs) == [-3.0, 1.0]
    p_coeffs, q_coeffs = build_rational(IVProblem(triple, [1.0, 0.0, 2.0, 1.0], [0.0] * 3))
    assert not np.any(q_coeffs)


def test_partial_fraction_examples():
    pfd = partial_fractions(RationalOperator([1.0], [2.0, -3.0, 1.0]))
    assert sorted(p.real for p in pfd.poles) == pytest.approx([1.0, 2.0], abs=1e-12)
    assert _residue_at(pfd, 2.0)[0] == pytest.approx(1.0, abs=1e-10)
    assert _residue_at(pfd, 1.0)[0] == pytest.approx(-1.0, abs=1e-10)
    pfd = partial_fractions(RationalOperator([-3.0, 1.0], [2.0, -3.0, 1.0]))
    assert _residue_at(pfd, 1.0)[0] == pytest.approx(2.0, abs=1e-10)
    assert _residue_at(pfd, 2.0)[0] == pytest.approx(-1.0, abs=1e-10)
    pfd = partial_fractions(RationalOperator([1.0], [0.0, 0.0, 1.0]))
    assert pfd.multiplicities == [2]
    assert pfd.residues[0] == pytest.approx([0.0, 1.0], abs=1e-10)
    assert pfd.terms()[1][:2] == (pfd.poles[0], 2)


def test_common_root_cancellation():
    pfd = partial_fractions(RationalOperator([-1.0, 1.0], [2.0, -3.0, 1.0]))
    assert pfd.cancelled == pytest.approx([1.0], abs=1e-10)
    assert len(pfd.poles) == 1
    assert _residue_at(pfd, 2.0)[0] == pytest.approx(1.0, abs=1e-10)


def test_random_partial_fractions():
    """
    Brief : 100 random proper rationals recombine, every tenth with a double root
    """
    rng = np.random.default_rng(2024)
    for count in range(100):
        if count % 10 == 0:
            double = int(rng.integers(-4, 5)) / 8.0
            roots = [double, double, double + 1.5]
        else:
            degree = int(rng.integers(1, 7))
            roots = []
            while len(roots) < degree:
                candidate = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
                if len(roots) + 2 <= degree and rng.uniform() < 0.5:
                    pair = [candidate, candidate.conjugate()]
                else:
                    pair = [complex(candidate.real, 0.0)]
                if all(abs(new - old) > 0.3 for new in pair for old in roots) and \
                        (len(pair) == 1 or abs(candidate.imag) > 0.15):
                    roots += pair
        denominator = np.real(np.polynomial.polynomial.polyfromroots(roots))
        numerator = rng.uniform(-2.0, 2.0, size=len(roots))
        numerator[-1] = 0.0 if len(roots) > 1 and rng.uniform() < 0.3 else numerator[-1]
        rational = RationalOperator(numerator, denominator)
        if not rational.numerator.size:
            continue
        pfd = partial_fractions(rational)
        assert pfd.residual < 1e-9, (roots, numerator)
        if count % 10 == 0 and not pfd.cancelled:
            assert sorted(pfd.multiplicities) == [1, 2]


def test_partial_fraction_errors():
    with pytest.raises(InvalidParameter):
        partial_fractions(RationalOperator([1.0, 1.0], [1.0, 1.0]))
    with pytest.raises(InvalidParameter):
        RationalOperator([1.0], [0.0, 0.0])


def test_sine():
    """
    Brief : 1 / (S^2 + 1) with the classical kernel h_1 is sin t
    """
    pfd = partial_fractions(RationalOperator([1.0], [1.0, 0.0, 1.0]))
    series = materialize(pfd, gps_monomial(1.0), 64)
    assert not series.is_complex()
    for t in (0.5, 1.0, 2.0):
        assert gps_evaluate(series, t) == pytest.approx(math.sin(t), abs=1e-8)


def test_materialize_single_pole():
    kappa = gps_monomial(0.5)
    r = resolvent(kappa, -0.5, 32)
    pfd = partial_fractions(RationalOperator([1.0], [0.5, 1.0]))
    assert_series_close(materialize(pfd, kappa, 32), r.series, rtol=1e-10)
    pfd = partial_fractions(RationalOperator([1.0], [0.25, 1.0, 1.0]))
    assert_series_close(materialize(pfd, kappa, 32), resolvent_power(r, 2), rtol=1e-6)


def test_multiterm_reduces_to_relaxation():
    triple = _triple('caputo_type')
    problem = IVProblem(triple, [1.0, 1.0], [1.0], gps_monomial(1.5))
    multiterm = solve_multiterm(problem, 32)
    relaxation = solve_relaxation(triple, -1.0, 1.0, gps_monomial(1.5), 32)
    assert_series_close(multiterm.materialized(), relaxation.materialized(), rtol=1e-10)
    homogeneous = solve_multiterm(IVProblem(triple, [1.0, 1.0], [1.0]), 32)
    assert_series_close(homogeneous.materialized(), gps_convolve(triple.k1, homogeneous.U),
                        rtol=0.0)


def test_hilfer_multiterm():
    problem = _fixture('hilfer_multiterm.json')
    assert problem.degree() == 2
    solution = solve_multiterm(problem)
    assert initial_values(problem, solution) == pytest.approx([1.0, 0.0], abs=1e-8)
    assert residual_check(problem, solution) < 1e-8
    poles = sorted(pole.real for pole in solution.pfd_g.poles)
    assert poles == pytest.approx([1.0, 2.0], abs=1e-12)


def test_relaxation_initial_value():
    for name in ('caputo_relaxation.json', 'rl_relaxation.json'):
        problem = _fixture(name)
        assert relaxation_lambda(problem) == (-1.0, 1.0)
        solution = solve_multiterm(problem)
        assert initial_values(problem, solution) == pytest.approx([1.0], abs=1e-10)
        assert residual_check(problem, solution) < 1e-8


def test_horizon_refusal():
    solution = solve_relaxation(_triple('rl_type'), -1.0, 1.0, gps_zero(), order=4)
    with pytest.raises(TruncationHorizonExceeded):
        solution.evaluate(1.0)
    value = solution.evaluate(1.0, refuse=False)
    assert math.isfinite(value)
    assert solution.tail_ratio(1e-6) < 1e-6
    assert solve_relaxation(_triple('rl_type'), -1.0, 1.0, gps_zero()).tail_ratio(1.0) < 1e-6


def test_solution_json():
    problem = _fixture('hilfer_multiterm.json')
    solution = solve_multiterm(problem)
    document = json.loads(json.dumps(solution_to_json(solution)))
    decoded = gps_from_json(document['solution'])
    assert gps_evaluate(decoded, 0.5) == gps_evaluate(solution.materialized(), 0.5)
    assert document['cap'] == solution.materialized().get_cap()
    assert len(document['poles_G']) == 2
    assert document['cancelled_roots'] == []
    exact = solution_to_json(solve_basic(_triple('caputo_type'), 1.0, gps_monomial(1.0)))
    assert exact['cap'] is None
    assert exact['poles_G'] == []


def test_problem_errors():
    triple = _triple('caputo_type')
    with pytest.raises(InvalidParameter):
        IVProblem(triple, [1.0], [])
    with pytest.raises(InvalidParameter):
        IVProblem(triple, [1.0, 0.0], [1.0])
    with pytest.raises(InvalidParameter):
        IVProblem(triple, [1.0, 1.0], [1.0, 2.0])
    with pytest.raises(ProblemFormatError):
        problem_from_json({'b': [1.0, 1.0]})
    with pytest.raises(ProblemFormatError):
        problem_from_json({'triple': {'kind': 'classical'}, 'b': ['x', 1.0], 'c': [0.0]})
    with pytest.raises(InvalidParameter):
        relaxation_lambda(_fixture('hilfer_multiterm.json'))
