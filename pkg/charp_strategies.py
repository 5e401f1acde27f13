#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
hypothesis strategies for fields, polynomials, forms, Weyl elements and Higgs fields.
"""

from itertools import product

from hypothesis import strategies as st

from basefield import make_field
from connection import HiggsField
from linalg import mat_add, mat_mul, mat_scalar, mat_scale
from polyring import OneForm, Poly, PolyRing, exterior_derivative, monomials_upto
from weyl import DerivationVec, WeylElement


def elements(field):
    return st.integers(0, field.q - 1).map(field.from_index)


def nonzero_elements(field):
    return st.integers(1, field.q - 1).map(field.from_index)


@st.composite
def fields(draw, primes=(2, 3), degrees=(1,)):
    return make_field(draw(st.sampled_from(primes)), draw(st.sampled_from(degrees)))


@st.composite
def coordinate_rings(draw, primes=(2, 3), dims=(1, 2), degrees=(1,), twist=False):
    field = draw(fields(primes, degrees))
    return PolyRing(field, draw(st.sampled_from(dims)), twist=twist)


@st.composite
def polys(draw, ring, max_degree=2):
    """Polynomial in the base variables of total degree <= max_degree"""
    pad = (0,) * len(ring.extra)
    monomials = monomials_upto(ring.d, max_degree)
    coeffs = draw(st.lists(elements(ring.field), min_size=len(monomials), max_size=len(monomials)))
    return Poly(ring, {e + pad: c for e, c in zip(monomials, coeffs)})


@st.composite
def closed_forms(draw, ring, max_degree=2):
    """dg plus sum_i h_i^p t_i^{p-1} dt_i"""
    p = ring.p
    exact = exterior_derivative(draw(polys(ring, max_degree + 1)))
    h_degree = max((max_degree - (p - 1)) // p, 0)
    comps = [f + draw(polys(ring, h_degree)) ** p * ring.var(i) ** (p - 1)
             for i, f in enumerate(exact.components)]
    return OneForm(ring, comps)


@st.composite
def derivations(draw, ring, max_degree=2):
    return DerivationVec(ring, [draw(polys(ring, max_degree)) for _ in range(ring.d)])


@st.composite
def weyl_elements(draw, lam, d, max_degree=2):
    """Normal-form element with sum(I) + sum(J) <= max_degree"""
    support = [(I, J)
               for I in product(range(max_degree + 1), repeat=d)
               for J in product(range(max_degree + 1), repeat=d)
               if sum(I) + sum(J) <= max_degree]
    coeffs = draw(st.lists(elements(lam.field), min_size=len(support), max_size=len(support)))
    return WeylElement(lam, d, dict(zip(support, coeffs)))


@st.composite
def commuting_higgs(draw, ring, r):
    """theta_1 arbitrary of degree <= 1, theta_i = theta_1^2 + c_i theta_1 + i"""
    base = [[draw(polys(ring, 1)) for _ in range(r)] for _ in range(r)]
    square = mat_mul(base, base)
    thetas = [base]
    for i in range(1, ring.d):
        c = draw(elements(ring.field))
        thetas.append(mat_add(mat_add(square, mat_scale(base, ring.const(c))), mat_scalar(ring, r, i)))
    return HiggsField(ring, thetas)
