#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for the twisted Weyl algebra, restricted derivations and the p-th power identities.
"""

import sys

import pytest
from hypothesis import given, strategies

import config
from basefield import make_field
from charp_strategies import derivations, fields, nonzero_elements, polys, weyl_elements
from errors import BadIndex, HypothesisViolated, TooLarge, TwistMismatch
from polyring import PolyRing
from weyl import (DerivationVec, WeylElement, ad_p_check, center_basis_upto, center_membership, check_identity,
                  deligne_sign, fiber_matrix_rep, psi, restricted_compatibility_check,
                  universal_lie_poly)


def unit(p, e=1):
    return make_field(p, e).one


@pytest.mark.parametrize("p,lam", [(2, 1), (3, 1), (3, 2), (5, 3)])
def test_commutation_relation(p, lam):
    lam = make_field(p).element(lam)
    t, D = WeylElement.t(lam, 1, 0), WeylElement.D(lam, 1, 0)
    assert D * t - t * D == WeylElement.scalar(lam, 1, lam)


def test_distinct_variables_commute():
    lam = unit(3)
    t1, D2 = WeylElement.t(lam, 2, 0), WeylElement.D(lam, 2, 1)
    assert t1.commutes_with(D2)


def test_d_squared_times_t_squared():
    lam = unit(5)
    t, D = WeylElement.t(lam, 1, 0), WeylElement.D(lam, 1, 0)
    # D^2 t^2 = t^2 D^2 + 4 t D + 2
    expected = WeylElement.monomial(lam, [2], [2]) + WeylElement.monomial(lam, [1], [1], 4) + 2
    assert D ** 2 * t ** 2 == expected


@pytest.mark.parametrize("d", [1, 2])
@given(data=strategies.data())
def test_associativity(d, data):
    lam = data.draw(nonzero_elements(data.draw(fields())))
    a, b, c = (data.draw(weyl_elements(lam, d, 2)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def test_twist_mismatch():
    field = make_field(3)
    with pytest.raises(TwistMismatch):
        WeylElement.t(field.one, 1, 0) + WeylElement.t(field.element(2), 1, 0)


def test_term_cap(monkeypatch):
    monkeypatch.setattr(config, "TERM_CAP", 4)
    lam = unit(5)
    a = WeylElement.D(lam, 1, 0, 4)
    with pytest.raises(TooLarge):
        a * WeylElement.t(lam, 1, 0, 4)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_p_th_powers_are_central(p):
    lam = unit(p)
    for d in (1, 2):
        for i in range(d):
            assert center_membership(WeylElement.t(lam, d, i, p))
            assert center_membership(WeylElement.D(lam, d, i, p))
    assert not center_membership(WeylElement.t(lam, 1, 0))


def test_center_basis_d1():
    p = 3
    basis = center_basis_upto(p, p, 1)
    supports = sorted(next(iter(b.terms)) for b in basis)
    assert supports == [((0,), (0,)), ((0,), (3,)), ((3,), (0,))]


def test_center_basis_d2_size():
    p = 2
    # monomials t^{pI} d^{pJ} of degree <= 2: 1, t1^2, t2^2, d1^2, d2^2
    assert len(center_basis_upto(2, p, 2)) == 5


def test_psi_of_coordinate_and_euler():
    p = 3
    field = make_field(p)
    R = PolyRing(field, 1)
    lam = field.element(2)
    d = DerivationVec.coordinate(R, 0)
    assert psi(d, lam) == WeylElement.D(lam, 1, 0, p)
    euler = DerivationVec(R, [R.var(0)])
    tD = WeylElement.monomial(lam, [1], [1])
    assert psi(euler, lam) == tD ** p - tD * lam ** (p - 1)


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (3, 1)])
@given(data=strategies.data())
def test_psi_lands_in_center(p, d, data):
    field = make_field(p)
    R = PolyRing(field, d)
    x = data.draw(derivations(R, 2))
    assert center_membership(psi(x, field.one))


@pytest.mark.parametrize("p", [2, 3])
@given(data=strategies.data())
def test_restricted_structure(p, data):
    R = PolyRing(make_field(p), 1)
    x, y = data.draw(derivations(R, 2)), data.draw(derivations(R, 2))
    r = data.draw(polys(R, 1))
    assert restricted_compatibility_check(r, x)
    assert ad_p_check(x, y)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_jacobson_on_generators(p):
    lam = unit(p)
    t, D = WeylElement.t(lam, 1, 0), WeylElement.D(lam, 1, 0)
    assert check_identity("jacobson", t, D)
    assert check_identity("jacobson", t * D, D)


@given(strategies.data())
def test_jacobson(data):
    lam = unit(3)
    x, y = data.draw(weyl_elements(lam, 1, 2)), data.draw(weyl_elements(lam, 1, 2))
    assert check_identity("jacobson", x, y)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_hochschild_and_deligne_on_t_d(p):
    lam = unit(p)
    t, D = WeylElement.t(lam, 1, 0), WeylElement.D(lam, 1, 0)
    assert check_identity("hochschild", t, D)
    assert check_identity("deligne", t, D)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_deligne_sign(p):
    assert deligne_sign(p) == -1


def test_hypothesis_violated():
    lam = unit(3)
    with pytest.raises(HypothesisViolated):
        check_identity("hochschild", WeylElement.D(lam, 1, 0), WeylElement.t(lam, 1, 0, 2))


def test_bad_index():
    lam = unit(3)
    t, D = WeylElement.t(lam, 1, 0), WeylElement.D(lam, 1, 0)
    with pytest.raises(BadIndex):
        universal_lie_poly(t, D, 0)
    with pytest.raises(BadIndex):
        universal_lie_poly(t, D, 3)


@pytest.mark.parametrize("p,e,a,b", [
    (2, 1, [0], [1]),
    (3, 1, [1], [2]),
    (2, 2, [[0, 1]], [1]),
    (2, 1, [1, 0], [0, 1]),
])
def test_azumaya_fibers(p, e, a, b):
    field = make_field(p, e)
    rep = fiber_matrix_rep(a, b, field)
    assert rep.size == p ** len(a)
    assert rep.is_isomorphism


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
