#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for Azumaya splittings, spectral decompositions and the Cartier transform.
"""

import sys

import numpy as np
import pytest

from azcorr import (SectionData, cartier_direct, cartier_inverse, correspondence_roundtrip, flat_sections,
                    katz_projector, module_isomorphic, random_multiplicity_free_higgs, random_unimodular,
                    section_form, spectral_decompose, splitting_over_section, unimodular_frame)
from basefield import make_field
from connection import Connection, HiggsField, p_curvature
from errors import (KernelRankMismatch, NoLift, NotConstantCoefficients, NotFlat, NotMultiplicityFree,
                    RingMismatch, TwistMismatch)
from linalg import determinant, inverse_unimodular, mat_equal, mat_mul
from polyring import OneForm, PolyRing


def rings(p, d=1, e=1):
    field = make_field(p, e)
    return PolyRing(field, d), PolyRing(field, d, twist=True)


def diagonal(ring, values):
    n = len(values)
    return [[ring.const(values[i]) if i == j else ring.zero() for j in range(n)] for i in range(n)]


def companion_f2(ring):
    """Companion matrix of x^2 + x + 1, irreducible over F_2"""
    return [[ring.zero(), ring.one()], [ring.one(), ring.one()]]


# ---------------------------------------------------------------------------
# splittings
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2)])
def test_splitting_over_zero_section(p, d):
    R, Rp = rings(p, d)
    module = splitting_over_section(SectionData.zero(Rp))
    assert module.omega.is_zero()
    assert module.carrier.rank == p ** d
    assert module.end_dimension == p ** (2 * d)
    assert module.surjective


def test_splitting_over_constant_section():
    R, Rp = rings(3)
    module = splitting_over_section(SectionData.constant(Rp, [1]))
    assert module.omega == OneForm(R, [R.one()])
    psi = p_curvature(module.connection)
    assert psi.thetas[0] == [[R.one()]]


def test_splitting_over_nonconstant_section():
    R, Rp = rings(2)
    module = splitting_over_section(SectionData(Rp, [Rp.var(0)]))
    assert module.omega == OneForm(R, [R.var(0) + 1])
    assert module.surjective


def test_section_needs_r_prime():
    R, _ = rings(2)
    with pytest.raises(RingMismatch):
        SectionData(R, [R.one()])


def test_no_lift_within_bound():
    _, Rp = rings(2)
    with pytest.raises(NoLift):
        section_form(SectionData(Rp, [Rp.var(0) ** 3]), 1)


# ---------------------------------------------------------------------------
# spectral decomposition
# ---------------------------------------------------------------------------

def test_spectral_decompose_split():
    _, Rp = rings(3)
    dec = spectral_decompose(HiggsField(Rp, [diagonal(Rp, [1, 2])]))
    assert not dec.extended
    assert [comp.root for comp in dec.components] == [(Rp.field.element(1),), (Rp.field.element(2),)]
    assert all(comp.rank == 1 for comp in dec.components)


def test_spectral_decompose_needs_extension():
    _, Rp = rings(2)
    dec = spectral_decompose(HiggsField(Rp, [companion_f2(Rp)]))
    assert dec.extended
    assert dec.field == make_field(2, 2)
    assert len(dec.components) == 2


def test_spectral_decompose_rejects_repeated_root():
    _, Rp = rings(3)
    with pytest.raises(NotMultiplicityFree):
        spectral_decompose(HiggsField(Rp, [diagonal(Rp, [1, 1])]))


def test_spectral_decompose_rejects_varying_coefficients():
    _, Rp = rings(3)
    with pytest.raises(NotConstantCoefficients):
        spectral_decompose(HiggsField(Rp, [[[Rp.var(0)]]]))


# ---------------------------------------------------------------------------
# Cartier transform
# ---------------------------------------------------------------------------

def test_cartier_inverse_diagonal():
    R, Rp = rings(3)
    conn = cartier_inverse(HiggsField(Rp, [diagonal(Rp, [1, 2])]))
    assert conn.ring == R
    assert mat_equal(conn.A[0], diagonal(R, [1, 2]))


def test_cartier_inverse_descends_from_extension():
    R, Rp = rings(2)
    conn = cartier_inverse(HiggsField(Rp, [companion_f2(Rp)]))
    assert conn.ring == R
    # the square root of the companion C is C^2
    assert mat_equal(conn.A[0], [[R.one(), R.one()], [R.one(), R.zero()]])


def test_cartier_inverse_needs_r_prime():
    R, _ = rings(3)
    with pytest.raises(RingMismatch):
        cartier_inverse(HiggsField(R, [diagonal(R, [1, 2])]))


@pytest.mark.parametrize("method", ["kernel", "katz"])
def test_cartier_direct_recovers_constant_higgs(method):
    R, Rp = rings(2)
    theta = HiggsField(Rp, [companion_f2(Rp)])
    recovered = cartier_direct(cartier_inverse(theta), method=method)
    assert recovered == theta


def test_cartier_direct_with_roundtrip_check():
    _, Rp = rings(3)
    theta = HiggsField(Rp, [diagonal(Rp, [1, 2])])
    assert cartier_direct(cartier_inverse(theta), verify_roundtrip=True) == theta


def test_cartier_direct_rejects_twist():
    R, _ = rings(3)
    with pytest.raises(TwistMismatch):
        cartier_direct(Connection.trivial(R, 1, lam=2))


def test_cartier_direct_rejects_curved():
    R, _ = rings(3, 2)
    with pytest.raises(NotFlat):
        cartier_direct(Connection(R, 1, [[[R.var(1)]], [[R.zero()]]]))


def test_katz_projector_and_flat_sections():
    R, _ = rings(3)
    conn = Connection(R, 1, [[[R.zero(), R.one()], [R.zero(), R.zero()]]])
    v = katz_projector(conn, [R.zero(), R.one()])
    assert v == [-R.var(0), R.one()]
    assert all(f.is_zero() for f in conn.apply(0, v))
    assert len(flat_sections(conn, 1)) == 2


def test_unimodular_frame_skips_proper_submodule():
    R, _ = rings(2)
    t = R.var(0)
    # t^2 e_1 and e_2 are independent but only span t^2 R + R
    candidates = [[t ** 2, R.zero()], [R.zero(), R.one()], [R.one(), R.zero()]]
    V = unimodular_frame(candidates, R, 2)
    det = determinant(V, R)
    assert det.is_constant() and not det.is_zero()


def test_unimodular_frame_without_frame():
    R, _ = rings(2)
    t = R.var(0)
    with pytest.raises(KernelRankMismatch):
        unimodular_frame([[t ** 2, R.zero()], [R.zero(), R.one()]], R, 2)
    with pytest.raises(KernelRankMismatch):
        unimodular_frame([[R.one(), R.zero()]], R, 2)


def test_module_isomorphic_conjugate():
    _, Rp = rings(2)
    rng = np.random.default_rng(61)
    C = companion_f2(Rp)
    V = random_unimodular(Rp, rng, 2)
    Y = mat_mul(mat_mul(V, C), inverse_unimodular(V, Rp))
    result = module_isomorphic([C], [Y], degree_bound=2)
    assert result.found
    assert result.verdict == "found"
    assert mat_equal(mat_mul(result.intertwiner, C), mat_mul(Y, result.intertwiner))


def test_module_isomorphic_not_found():
    _, Rp = rings(3)
    result = module_isomorphic([diagonal(Rp, [1, 2])], [diagonal(Rp, [1, 1])], degree_bound=1)
    assert not result.found
    assert result.verdict == "not-found-within-bound"


@pytest.mark.parametrize("p,d,r", [(2, 1, 2), (3, 1, 2), (2, 2, 2)])
def test_correspondence_roundtrip(p, d, r):
    rng = np.random.default_rng(71)
    _, Rp = rings(p, d)
    theta = random_multiplicity_free_higgs(Rp, rng, r)
    report = correspondence_roundtrip(theta)
    assert report.ok
    assert report.recovered.rank == r


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
