#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for Frobenius pushforward and the descent of the p-curvature characteristic polynomial.
"""

import sys

import pytest
from hypothesis import given, strategies

from basefield import make_field
from charp_strategies import closed_forms, coordinate_rings, polys
from connection import Connection, HiggsField
from errors import DescentFailure, NotFlat
from frobdescent import (FrobModule, c_dR, induced_psi_prime, permuted_basis_check, pushforward_differential_operator,
                         pushforward_operator, verify_descent)
from higgs import TwistedCharPoly
from linalg import determinant, mat_equal
from polyring import OneForm, PolyRing, norm_map


def ring(p, d=1, e=1):
    return PolyRing(make_field(p, e), d)


def test_frob_module_basis():
    module = FrobModule(ring(2), 1)
    assert module.rank == 2
    assert module.basis_names() == ["1", "t"]
    assert FrobModule(ring(3, 2), 2).rank == 18


def test_pushforward_of_multiplication_by_t():
    R = ring(2)
    Rp = R.primed()
    pushed = pushforward_operator([[R.var(0)]])
    assert mat_equal(pushed, [[Rp.zero(), Rp.var(0)], [Rp.one(), Rp.zero()]])


@given(strategies.data())
def test_pushforward_determinant_is_norm(data):
    R = data.draw(coordinate_rings())
    g = data.draw(polys(R, 2))
    pushed = pushforward_operator([[g]])
    assert determinant(pushed, R.primed()) == norm_map(g)


def test_pushforward_of_d():
    R = ring(3)
    Rp = R.primed()
    pushed = pushforward_differential_operator(Connection.trivial(R, 1), 0)
    z, o = Rp.zero(), Rp.one()
    assert mat_equal(pushed, [[z, o, z], [z, z, Rp.const(2)], [z, z, z]])


@pytest.mark.parametrize("p", [2, 3])
def test_c_dr_of_witness_form(p):
    R = ring(p)
    omega = OneForm(R, [R.var(0) ** (p - 1)])
    chi2prime = c_dR(Connection.rank_one(omega))
    ring_prime = chi2prime.ring
    s, w = ring_prime.var(0), ring_prime.var(1)
    assert chi2prime.a(1) == (s ** (p - 1) - 1) * w


def test_c_dr_rejects_non_pullback():
    R = ring(2)
    base = R.with_extra(("w",))
    chi = TwistedCharPoly(R, 1, [base.var(0) * base.var(1)])
    with pytest.raises(DescentFailure):
        c_dR(Connection.trivial(R, 1), chi)


@pytest.mark.parametrize("p,d,e", [(2, 1, 1), (2, 2, 1), (3, 1, 1), (2, 1, 2)])
@given(data=strategies.data())
def test_descent_rank_one(p, d, e, data):
    report = verify_descent(Connection.rank_one(data.draw(closed_forms(ring(p, d, e), 2))))
    assert report.identity_i
    assert report.identity_ii


@given(strategies.data())
def test_descent_rank_two_diagonal(data):
    R = ring(2, 2)
    f, g = data.draw(closed_forms(R, 1)), data.draw(closed_forms(R, 1))
    A = [[[f.components[i], R.zero()], [R.zero(), g.components[i]]] for i in range(2)]
    assert verify_descent(Connection(R, 1, A)).ok


def test_descent_constant_nilpotent():
    R = ring(3)
    A = [[R.zero(), R.one()], [R.zero(), R.zero()]]
    report = verify_descent(Connection(R, 1, [A]))
    assert report.ok
    assert report.chi.a(1).is_zero()


def test_descent_requires_flat():
    R = ring(2, 2)
    conn = Connection(R, 1, [[[R.var(1)]], [[R.zero()]]])
    with pytest.raises(NotFlat):
        verify_descent(conn)


def test_psi_prime_tag_and_rank():
    R = ring(2)
    psi_prime = induced_psi_prime(Connection.rank_one(OneForm(R, [R.var(0)])))
    assert isinstance(psi_prime, HiggsField)
    assert psi_prime.basis_tag == "wK"
    assert psi_prime.rank == 2


def test_permuted_basis():
    R = ring(3)
    conn = Connection.rank_one(OneForm(R, [R.var(0) ** 2 + 1]))
    assert permuted_basis_check(conn, [2, 0, 1])
    with pytest.raises(ValueError):
        permuted_basis_check(conn, [0, 0, 1])


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
