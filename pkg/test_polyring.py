#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for polynomial rings, the relative Frobenius, the norm and the Cartier operator.
"""

import sys

import pytest
from hypothesis import given, strategies

from basefield import make_field
from charp_strategies import closed_forms, coordinate_rings, polys
from errors import NotClosed, NoSolution, NotInImage, RingMismatch
from polyring import (OneForm, PolyRing, cartier_operator, drop_extra, exterior_derivative, frobenius_decompose,
                      frobenius_preimage, frobenius_pullback, is_closed, lift_poly, norm_map,
                      sigma, solve_w_minus_c, w_pullback, w_pullback_form)


def rings(p, d, e=1):
    field = make_field(p, e)
    return PolyRing(field, d), PolyRing(field, d, twist=True)


def test_derivative_of_t_to_the_p_vanishes():
    for p in (2, 3, 5):
        R, _ = rings(p, 1)
        t = R.var(0)
        assert (t ** p).partial_derivative(0).is_zero()


def test_frobenius_additivity():
    R, _ = rings(2, 2)
    t1, t2 = R.gens()
    assert (t1 + t2) ** 2 == t1 ** 2 + t2 ** 2


def test_eval():
    R, _ = rings(3, 1)
    t = R.var(0)
    assert (t ** 2 + 1).eval([2]) == R.field.element(2)


def test_ring_mismatch():
    R, Rp = rings(2, 1)
    with pytest.raises(RingMismatch):
        R.var(0) + Rp.var(0)


def test_pullback_examples():
    p = 3
    R, Rp = rings(p, 2)
    t1, t2 = R.gens()
    s1, s2 = Rp.gens()
    assert frobenius_pullback(s1) == t1 ** p
    assert frobenius_pullback(Rp.const(2)) == R.const(2)
    assert frobenius_pullback(s1 * s2 + 1) == t1 ** p * t2 ** p + 1


def test_preimage_examples():
    R, Rp = rings(2, 1)
    t = R.var(0)
    assert frobenius_preimage(t ** 2) == Rp.var(0)
    assert frobenius_preimage(R.const(1)) == Rp.one()
    with pytest.raises(NotInImage):
        frobenius_preimage(t)


@given(strategies.data())
def test_preimage_inverts_pullback(data):
    Rp = data.draw(coordinate_rings(twist=True))
    f = data.draw(polys(Rp, 3))
    assert frobenius_preimage(frobenius_pullback(f)) == f


@given(strategies.data())
def test_w_pullback_then_pullback_is_absolute_frobenius(data):
    R = data.draw(coordinate_rings(primes=(2, 3), dims=(1,), degrees=(2,)))
    f = data.draw(polys(R, 3))
    assert frobenius_pullback(w_pullback(f)) == f ** R.p


@given(strategies.data())
def test_frobenius_decompose_reassembles(data):
    R = data.draw(coordinate_rings())
    f = data.draw(polys(R, 5))
    total = R.zero()
    for J, g in frobenius_decompose(f).items():
        total = total + R.monomial(J) * frobenius_pullback(g)
    assert total == f


def test_norm_examples():
    R, Rp = rings(2, 1)
    t = R.var(0)
    assert norm_map(R.one()) == Rp.one()
    assert norm_map(t) == Rp.var(0)
    assert norm_map(t + 1) == Rp.var(0) + 1


@pytest.mark.parametrize("d", [1, 2])
def test_norm_of_constant_outside_prime_field(d):
    R, Rp = rings(2, d, e=2)
    x = R.field.from_index(2)
    assert x != R.field.one
    assert norm_map(R.const(x)) == Rp.const(x ** (2 ** d))


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (3, 1)])
@given(data=strategies.data())
def test_norm_is_p_to_the_d_power(p, d, data):
    R, _ = rings(p, d)
    g = data.draw(polys(R, 2))
    assert frobenius_pullback(norm_map(g)) == g ** (p ** d)


@given(strategies.data())
def test_norm_is_multiplicative(data):
    R = data.draw(coordinate_rings(dims=(1,)))
    g, h = data.draw(polys(R, 2)), data.draw(polys(R, 2))
    assert norm_map(g * h) == norm_map(g) * norm_map(h)


def test_is_closed_examples():
    R, _ = rings(3, 2)
    t1, t2 = R.gens()
    assert not is_closed(OneForm(R, [t2, R.zero()]))
    assert is_closed(exterior_derivative(t1 * t2))
    R1, _ = rings(3, 1)
    assert is_closed(OneForm(R1, [R1.var(0) ** 5]))


def test_cartier_examples():
    for p in (2, 3, 5):
        R, Rp = rings(p, 1)
        t = R.var(0)
        assert cartier_operator(OneForm(R, [t ** (p - 1)])) == OneForm(Rp, [Rp.one()])
    R, Rp = rings(2, 1)
    t = R.var(0)
    assert cartier_operator(OneForm(R, [t ** 3])) == OneForm(Rp, [Rp.var(0)])


def test_cartier_not_closed():
    R, _ = rings(2, 2)
    t1, t2 = R.gens()
    with pytest.raises(NotClosed):
        cartier_operator(OneForm(R, [t2, R.zero()]))


@given(strategies.data())
def test_cartier_kills_exact_and_is_sigma_linear(data):
    R = data.draw(coordinate_rings())
    p = R.p
    f = data.draw(polys(R, 4))
    assert cartier_operator(exterior_derivative(f)).is_zero()
    omega = data.draw(closed_forms(R, 3))
    g = data.draw(polys(R, 1))
    lhs = cartier_operator(omega.scale(g ** p))
    assert lhs == cartier_operator(omega).scale(sigma(g ** p))


def test_solve_constant():
    R, Rp = rings(3, 1)
    eta = OneForm(Rp, [Rp.const(2)])
    omega = solve_w_minus_c(eta, 4)
    assert omega == OneForm(R, [R.const(2)])


def test_solve_zero():
    R, Rp = rings(2, 2)
    assert solve_w_minus_c(OneForm.zero(Rp), 3).is_zero()


def test_solve_defining_identity():
    R, Rp = rings(2, 1)
    eta = OneForm(Rp, [Rp.var(0)])
    omega = solve_w_minus_c(eta, 4)
    assert w_pullback_form(omega) - cartier_operator(omega) == eta
    assert omega == OneForm(R, [R.var(0) + 1])


@given(strategies.data())
def test_solve_exact_targets(data):
    Rp = data.draw(coordinate_rings(twist=True))
    eta = exterior_derivative(data.draw(polys(Rp, 3)))
    omega = solve_w_minus_c(eta, 4)
    assert is_closed(omega)
    assert w_pullback_form(omega) - cartier_operator(omega) == eta


def test_solve_bound_too_small():
    _, Rp = rings(2, 1)
    eta = OneForm(Rp, [Rp.var(0) ** 3])
    with pytest.raises(NoSolution):
        solve_w_minus_c(eta, 1)


def test_lift_and_drop_extra():
    R, _ = rings(2, 1)
    big = R.with_extra(("w",))
    f = R.var(0) ** 2 + 1
    lifted = lift_poly(f, big)
    assert lifted.ring == big
    assert drop_extra(lifted, R) == f
    with pytest.raises(RingMismatch):
        drop_extra(big.var(1), R)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
