#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Tests for prime and extension field arithmetic and root finding.
"""

import sys

import pytest

from basefield import (Embedding, embed_into_extension, find_roots, frobenius_root, irreducible_factor_degrees,
                       make_field, upoly_from_roots, upoly_mul)
from errors import BadDegree, NotPrime, TooLarge, ZeroPolynomial


def test_prime_field():
    field = make_field(2, 1)
    assert field.q == 2
    assert field.one + field.one == field.zero


def test_f9_modulus_is_x2_plus_1():
    field = make_field(3, 2)
    assert field.modulus == (1, 0, 1)
    x = field.generator()
    assert x * x == field.element(-1)


def test_f4_modulus():
    assert make_field(2, 2).modulus == (1, 1, 1)


def test_not_prime():
    with pytest.raises(NotPrime):
        make_field(4, 1)


def test_too_large():
    with pytest.raises(TooLarge):
        make_field(2, 21)


def test_bad_extension_degree():
    with pytest.raises(BadDegree):
        make_field(3, 0)


def test_deterministic_tables():
    a, b = make_field(5, 2), make_field(5, 2)
    assert a == b
    for x in a.elements():
        for y in a.elements():
            assert (x * y).rep == (b.element(list(x.rep)) * b.element(list(y.rep))).rep


def test_inverse_exhaustive():
    field = make_field(3, 2)
    for a in field.nonzero_elements():
        assert (a * a.inverse()).is_one()


@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_frobenius_root_exhaustive(p, e):
    field = make_field(p, e)
    for a in field.elements():
        assert frobenius_root(a) ** p == a


def test_frobenius_root_examples():
    f4 = make_field(2, 2)
    x = f4.generator()
    assert frobenius_root(f4.one) == f4.one
    assert frobenius_root(x) == x + 1
    f3 = make_field(3)
    assert frobenius_root(f3.element(2)) == f3.element(2)


def test_roots_x2_minus_1_over_f3():
    f3 = make_field(3)
    result = find_roots([f3.element(-1), f3.zero, f3.one])
    assert not result.extended
    assert result.roots == [(f3.element(1), 1), (f3.element(2), 1)]


def test_roots_x2_over_f2():
    f2 = make_field(2)
    result = find_roots([f2.zero, f2.zero, f2.one])
    assert result.roots == [(f2.zero, 2)]


def test_roots_need_extension():
    f2 = make_field(2)
    result = find_roots([f2.one, f2.one, f2.one])
    f4 = make_field(2, 2)
    assert result.field == f4
    assert result.extended
    x = f4.generator()
    assert result.roots == [(x, 1), (x + 1, 1)]


def test_roots_reassemble():
    f5 = make_field(5)
    f = upoly_mul([f5.element(3), f5.one], [f5.element(1), f5.element(0), f5.one])
    f = upoly_mul(f, [f5.element(3), f5.one])
    result = find_roots(f)
    assert sum(m for _, m in result.roots) == 4
    rebuilt = upoly_from_roots(result.roots, result.field.one)
    assert rebuilt == [result.embedding(c) for c in f]


def test_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        find_roots([])


def test_irreducible_factor_degrees():
    f2 = make_field(2)
    # (x^2 + x + 1) * x
    assert irreducible_factor_degrees([f2.zero, f2.one, f2.one, f2.one]) == [1, 2]


def test_embedding_is_a_homomorphism():
    f4 = make_field(2, 2)
    emb = embed_into_extension(f4, 2)
    assert isinstance(emb, Embedding)
    for a in f4.elements():
        assert emb.preimage(emb(a)) == a
        for b in f4.elements():
            assert emb(a * b) == emb(a) * emb(b)
            assert emb(a + b) == emb(a) + emb(b)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__]))
