#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for twisted characteristic polynomials and spectral ideals.
"""

import sys

import pytest
from hypothesis import given, strategies

from basefield import embed_into_extension, make_field
from charp_strategies import commuting_higgs
from connection import HiggsField
from higgs import (annihilation_check, annihilator_degrees, cayley_hamilton_check, degree_r_monomials,
                   enlarged_cover_basis, enlarged_generators_monic, hitchin_point, s_count, spectral_flatness_guaranteed,
                   spectral_ideal, twisted_char_poly, univariate_char_poly)
from polyring import PolyRing


def diagonal(ring, values):
    n = len(values)
    return [[ring.const(values[i]) if i == j else ring.zero() for j in range(n)] for i in range(n)]


def test_s_count():
    assert s_count(1, 3) == 1
    assert s_count(2, 2) == 3
    assert s_count(3, 2) == 4
    assert len(degree_r_monomials(3, 2)) == 4
    assert degree_r_monomials(2, 2)[0] == (2, 0)


def test_char_poly_of_diagonal():
    R = PolyRing(make_field(3), 1)
    theta = HiggsField(R, [diagonal(R, [1, 2])])
    chi = twisted_char_poly(theta)
    w = chi.ring.var(1)
    assert chi.a(1).is_zero()
    assert chi.a(2) == w ** 2 * 2
    assert chi.is_homogeneous()
    assert chi.is_constant()


def test_char_poly_with_t_dependence():
    R = PolyRing(make_field(2), 1)
    t = R.var(0)
    theta = HiggsField(R, [[[t, R.one()], [R.zero(), R.zero()]]])
    chi = twisted_char_poly(theta)
    ring = chi.ring
    assert chi.a(1) == ring.var(0) * ring.var(1)
    assert chi.a(2).is_zero()
    assert not hitchin_point(theta).constant


@pytest.mark.parametrize("p,d,r", [(2, 1, 2), (2, 2, 2), (3, 1, 3), (3, 2, 2)])
@given(data=strategies.data())
def test_cayley_hamilton(p, d, r, data):
    R = PolyRing(make_field(p), d)
    assert cayley_hamilton_check(data.draw(commuting_higgs(R, r)))


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (3, 1)])
@given(data=strategies.data())
def test_char_poly_commutes_with_base_extension(p, d, data):
    R = PolyRing(make_field(p), d)
    theta = data.draw(commuting_higgs(R, 2))
    embedding = embed_into_extension(R.field, 2)
    extended = theta.map_entries(lambda f: f.base_change(embedding), R.over(embedding.target))
    assert twisted_char_poly(theta).base_change(embedding) == twisted_char_poly(extended)


def test_spectral_ideal_d1():
    R = PolyRing(make_field(3), 1)
    theta = HiggsField(R, [diagonal(R, [1, 2])])
    ideal = spectral_ideal(twisted_char_poly(theta))
    assert len(ideal) == 1
    D = ideal.ring.var(1)
    # (D - 1)(D - 2) = D^2 + 2 over F_3
    assert ideal.generators[(2,)] == D ** 2 + 2
    assert annihilation_check(theta, ideal)
    assert enlarged_generators_monic(ideal)


@pytest.mark.parametrize("p,d,r", [(2, 2, 2), (3, 2, 2), (2, 3, 2), (2, 2, 3)])
@given(data=strategies.data())
def test_spectral_ideal_counts_and_annihilates(p, d, r, data):
    R = PolyRing(make_field(p), d)
    theta = data.draw(commuting_higgs(R, r))
    ideal = spectral_ideal(twisted_char_poly(theta))
    assert len(ideal) == s_count(r, d)
    assert annihilation_check(theta, ideal)
    assert annihilation_check(theta, ideal, enlarged_only=True)
    assert enlarged_generators_monic(ideal)
    assert len(enlarged_cover_basis(ideal)) == r ** d


def test_annihilator_degrees():
    R = PolyRing(make_field(3), 1)
    assert annihilator_degrees(HiggsField(R, [diagonal(R, [1, 2])])) == [2]
    assert annihilator_degrees(HiggsField(R, [diagonal(R, [1, 1])])) == [1]


def test_spectral_flatness_guaranteed():
    assert spectral_flatness_guaranteed(1, 4)
    assert spectral_flatness_guaranteed(5, 1)
    assert not spectral_flatness_guaranteed(2, 2)


def test_univariate_char_poly():
    R = PolyRing(make_field(3), 1)
    f = R.field
    assert univariate_char_poly(diagonal(R, [1, 2]), R) == [f.element(2), f.zero, f.one]
    t = R.var(0)
    assert univariate_char_poly([[t]], R) is None


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
