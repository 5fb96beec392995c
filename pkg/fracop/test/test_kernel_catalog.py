#! /usr/bin/env python3
# coding: utf8

"""
File : test_kernel_catalog.py
Author : lgbarrere
Brief : Test Sonin pairs, the associated kernel solver and kernel triples
"""
import pytest

from ..manager.errors import (DegenerateLeadingCoefficient, InvalidParameter, ProblemFormatError,
                              TripleResidualTooLarge)
from ..manager.gps_algebra import gps_identity, gps_monomial
from ..manager.kernel_catalog import (KernelTriple, SeriesKernelSpec, associated_coefficients,
                                      bessel_associate_coefficients, bessel_pair, catalog_pairs,
                                      catalog_triples, kernel_series, make_pair, make_triple,
                                      pair_from_json, power_law_pair,
                                      prabhakar_associate_coefficients, prabhakar_pair,
                                      series_pair, solve_associated_kernel, sonin_residual,
                                      triple_from_json, triple_residual, validate_triple,
                                      verify_catalog)
from .series_check import assert_series_close


def test_power_law_pair():
    pair = power_law_pair(0.3)
    assert list(pair.kappa.get_exponents()) == [0.3]
    assert list(pair.k.get_exponents()) == [0.7]
    assert sonin_residual(pair.kappa, pair.k) == 0.0
    with pytest.raises(InvalidParameter):
        power_law_pair(1.0)


def test_catalog_residuals():
    for label, residual in verify_catalog():
        print(label, residual)
        assert residual < 1e-10, label
    labels = [label for label, _ in catalog_pairs(16)]
    assert 'bessel alpha=0.5' in labels
    assert len(catalog_triples(16)) == 1 + 2 * len(labels)


def test_prabhakar_triangular_solve():
    """
    Brief : Forward substitution reproduces the closed form associate
    """
    pair = prabhakar_pair(0.6, 1.0, 0.5, 1.0)
    solved = associated_coefficients(pair.spec, 13)
    closed = prabhakar_associate_coefficients(0.6, 1.0, 0.5, 13)
    for b_solved, b_closed in zip(solved, closed):
        assert b_solved == pytest.approx(b_closed, rel=1e-12)


def test_bessel_triangular_solve():
    pair = bessel_pair(0.5)
    solved = associated_coefficients(pair.spec, 12)
    closed = bessel_associate_coefficients(0.5, 12)
    for b_solved, b_closed in zip(solved, closed):
        assert b_solved == pytest.approx(b_closed, rel=1e-9)


def test_associate_uniqueness():
    pair = prabhakar_pair(0.6, 1.0, 0.5, -1.0)
    short = associated_coefficients(pair.spec, 10)
    long = associated_coefficients(pair.spec, 20)
    assert short == long[:10]


def test_series_pair():
    spec = SeriesKernelSpec(0.4, 0.5, 2.0, a_coeffs=[1.0, -0.5, 0.25])
    pair = series_pair(spec, 24)
    assert not pair.kappa.is_truncated()
    assert pair.k.is_truncated()
    assert sonin_residual(pair.kappa, pair.k) < 1e-10
    single = SeriesKernelSpec(0.25, 1.0, 1.0, a_coeffs=[2.0])
    k = solve_associated_kernel(single, 4)
    assert not k.is_truncated()
    gamma_quarter = 3.6256099082219083
    assert k.coefficient_at(0.75) == pytest.approx(0.5 / gamma_quarter, rel=1e-13)
    assert kernel_series(single, 4).coefficient_at(0.25) == pytest.approx(2.0 * gamma_quarter,
                                                                          rel=1e-13)


def test_degenerate_leading_coefficient():
    with pytest.raises(DegenerateLeadingCoefficient):
        SeriesKernelSpec(0.5, 1.0, 1.0, a_coeffs=[0.0, 1.0])
    with pytest.raises(InvalidParameter):
        SeriesKernelSpec(1.5, 1.0, 1.0, a_coeffs=[1.0])
    with pytest.raises(InvalidParameter):
        associated_coefficients(SeriesKernelSpec(0.5, 1.0, 1.0, a_coeffs=[1.0]), 0)


def test_make_pair():
    assert make_pair('power_law', alpha=0.5).family == 'power_law'
    pair = make_pair('prabhakar', order=16, alpha=0.6, gamma=0.5, lam=-1.0)
    assert sonin_residual(pair.kappa, pair.k) < 1e-10
    pair = make_pair('series', order=16, alpha=0.5, a_coeffs=[1.0, 1.0])
    assert sonin_residual(pair.kappa, pair.k) < 1e-10
    with pytest.raises(InvalidParameter):
        make_pair('lognormal', alpha=0.5)
    with pytest.raises(InvalidParameter):
        make_pair('prabhakar', alpha=0.6)


def test_triple_kinds():
    hilfer = make_triple('hilfer_power', alpha=0.5, gamma_=0.25)
    assert [list(s.get_exponents()) for s in (hilfer.kappa, hilfer.k1, hilfer.k2)] == \
        [[0.5], [0.25], [0.25]]
    pair = power_law_pair(0.5)
    rl = make_triple('rl_type', pair)
    assert rl.is_rl_type() and not rl.is_caputo_type()
    assert list(rl.k2.get_exponents()) == [0.5]
    caputo = make_triple('caputo_type', pair)
    assert caputo.is_caputo_type()
    assert list(caputo.k1.get_exponents()) == [0.5]
    classical = make_triple('classical')
    assert classical.is_rl_type() and classical.is_caputo_type()
    with pytest.raises(InvalidParameter):
        make_triple('hilfer_power', alpha=0.5, gamma_=0.5)
    with pytest.raises(InvalidParameter):
        make_triple('rl_type')
    with pytest.raises(InvalidParameter):
        make_triple('unknown')


def test_split_triple():
    split = make_triple('split', power_law_pair(0.5), gamma_=0.25)
    assert_series_close(split.k2, gps_monomial(0.25))
    pair = prabhakar_pair(0.6, 1.0, 0.5, 1.0)
    split = make_triple('split', pair, gamma_=0.2)
    assert split.k2.leading_exponent() == pytest.approx(0.2, abs=1e-12)
    assert triple_residual(split.kappa, split.k1, split.k2) < 1e-10
    with pytest.raises(InvalidParameter):
        make_triple('split', pair, gamma_=0.5)


def test_triple_gives_constant():
    """
    Brief : kappa * (k1 * k2) = 1 for every catalog triple
    """
    for label, triple in catalog_triples(16):
        assert triple_residual(triple.kappa, triple.k1, triple.k2) < 1e-10, label


def test_validate_triple():
    bad = KernelTriple(gps_monomial(0.5), gps_identity(), gps_monomial(0.25), 'bad')
    with pytest.raises(TripleResidualTooLarge):
        validate_triple(bad)


def test_documents():
    pair = pair_from_json({'family': 'prabhakar', 'alpha': 0.6, 'beta': 1.0, 'gamma': 0.5,
                           'lambda': -1.0}, 16)
    assert pair.spec.lam == -1.0
    triple = triple_from_json({'kind': 'caputo_type',
                               'pair': {'family': 'bessel', 'alpha': 0.5}}, 16)
    assert triple.is_caputo_type()
    triple = triple_from_json({'kind': 'hilfer_power', 'alpha': 0.5, 'gamma': 0.25})
    assert triple.family_tag == 'hilfer_power'
    with pytest.raises(ProblemFormatError):
        pair_from_json({'alpha': 0.5})
    with pytest.raises(ProblemFormatError):
        triple_from_json([])


def test_document_fields():
    with pytest.raises(ProblemFormatError, match='alpha'):
        triple_from_json({'kind': 'hilfer_power', 'gamma': 0.25})
    with pytest.raises(ProblemFormatError, match='alpha'):
        pair_from_json({'family': 'power_law', 'alpha': 'x'})
    with pytest.raises(ProblemFormatError, match='gamma'):
        triple_from_json({'kind': 'split', 'pair': {'family': 'power_law', 'alpha': 0.5}})
    with pytest.raises(ProblemFormatError, match='a_coeffs'):
        pair_from_json({'family': 'series', 'alpha': 0.5, 'a_coeffs': [1.0, None]})
    with pytest.raises(ProblemFormatError):
        pair_from_json({'family': 'power_law', 'alpha': True})
    with pytest.raises(InvalidParameter):
        pair_from_json({'family': 'power_law'})
