#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Twisted characteristic polynomials, Cayley-Hamilton, the Hitchin map and
spectral-cover ideals.

The formal symbols w_1..w_d (a basis of K) and the polynomial variable T
are carried as extra variables of the coordinate ring, so a_m stays a
homogeneous degree-m polynomial in w with coefficients in R (or R').
"""

import logging
from itertools import product
from math import comb
from typing import Dict, List, Tuple

from connection import HiggsField
from linalg import (Matrix, berkowitz, mat_add, mat_identity, mat_is_zero, mat_map, mat_mul, mat_pow,
                    mat_scale, mat_zero, rank_over_fraction_field)
from polyring import Poly, PolyRing, lift_poly

logger = logging.getLogger("charp-higgs")


def omega_names(d: int) -> Tuple[str, ...]:
    return ("w",) if d == 1 else tuple(f"w{i + 1}" for i in range(d))


def spectral_names(d: int) -> Tuple[str, ...]:
    return ("D",) if d == 1 else tuple(f"D{i + 1}" for i in range(d))


def degree_r_monomials(r: int, d: int) -> List[Tuple[int, ...]]:
    """Exponents in N^d of total degree r, lex descending (w_1^r first)"""
    out = [e for e in product(range(r + 1), repeat=d) if sum(e) == r]
    return sorted(out, reverse=True)


def s_count(r: int, d: int) -> int:
    """S(r, d) = C(d + r - 1, r)"""
    return comb(d + r - 1, r)


class TwistedCharPoly:
    """chi(T) = T^r + sum_m (-1)^m a_m T^{r-m}, a_m in R[w] homogeneous of degree m"""

    def __init__(self, base: PolyRing, rank: int, coefficients: List[Poly]):
        self.base = base.base()
        self.rank = rank
        self.ring = self.base.with_extra(omega_names(self.base.d))
        if len(coefficients) != rank:
            raise ValueError(f"expected {rank} coefficients a_1..a_{rank}")
        self.coefficients = [lift_poly(a, self.ring) if a.ring != self.ring else a for a in coefficients]

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def poly_ring(self) -> PolyRing:
        return self.ring.with_extra(("T",))

    def a(self, m: int) -> Poly:
        """a_m, with a_0 = 1"""
        if m == 0:
            return self.ring.one()
        return self.coefficients[m - 1]

    def poly(self) -> Poly:
        """chi as a polynomial in (t, w, T)"""
        ring = self.poly_ring
        T = ring.var(ring.nvars - 1)
        chi = ring.zero()
        for m in range(self.rank + 1):
            term = lift_poly(self.a(m), ring) * T ** (self.rank - m)
            chi = chi + (term if m % 2 == 0 else -term)
        return chi

    def is_homogeneous(self) -> bool:
        d = self.d
        return all(sum(e[d:]) == m for m, a in enumerate(self.coefficients, 1) for e in a.terms)

    def is_constant(self) -> bool:
        """Every a_m has coefficients in the base field (only w appears)"""
        d = self.d
        return all(not any(e[:d]) for a in self.coefficients for e in a.terms)

    def map_coefficients(self, fn, base: PolyRing) -> "TwistedCharPoly":
        ring = base.base().with_extra(omega_names(base.d))
        return TwistedCharPoly(base, self.rank, [fn(a, ring) for a in self.coefficients])

    def base_change(self, embedding) -> "TwistedCharPoly":
        base = self.base.over(embedding.target)
        return self.map_coefficients(lambda a, ring: a.map_coeffs(embedding, ring), base)

    def __eq__(self, other):
        return (isinstance(other, TwistedCharPoly) and self.ring == other.ring
                and self.rank == other.rank and self.coefficients == other.coefficients)

    def __repr__(self):
        return repr(self.poly())


def higgs_field_matrix(theta: HiggsField, ring: PolyRing) -> Matrix:
    """Phi = sum_i theta_i w_i over R[w]"""
    d = theta.d
    phi = mat_zero(ring, theta.rank)
    for i, th in enumerate(theta.thetas):
        w = ring.var(d + i)
        phi = mat_add(phi, mat_scale(mat_map(th, lambda f: lift_poly(f, ring)), w))
    return phi


def twisted_char_poly(theta: HiggsField) -> TwistedCharPoly:
    """det(T Id - sum theta_i w_i) by Berkowitz over R[w]"""
    base = theta.ring.base()
    ring = base.with_extra(omega_names(base.d))
    coeffs = berkowitz(higgs_field_matrix(theta, ring), ring)
    a = [c if m % 2 == 0 else -c for m, c in enumerate(coeffs)][1:]
    chi = TwistedCharPoly(base, theta.rank, a)
    logger.debug(f"twisted characteristic polynomial of {theta}: {chi}")
    return chi


def cayley_hamilton_check(theta: HiggsField) -> bool:
    """sum_m (-1)^m a_m Phi^{r-m} = 0 in R[w]^{r x r}"""
    chi = twisted_char_poly(theta)
    ring = chi.ring
    phi = higgs_field_matrix(theta, ring)
    r = theta.rank
    total = mat_zero(ring, r)
    power = mat_identity(ring, r)
    for m in range(r, -1, -1):
        coeff = chi.a(m) if m % 2 == 0 else -chi.a(m)
        total = mat_add(total, mat_scale(power, coeff))
        power = mat_mul(power, phi)
    return mat_is_zero(total)


class HitchinPoint:
    """A Hitchin-base point chi with the constant-coefficients flag"""

    def __init__(self, chi: TwistedCharPoly):
        self.chi = chi
        self.constant = chi.is_constant()

    def __repr__(self):
        return f"HitchinPoint({self.chi!r}, constant={self.constant})"


def hitchin_point(theta: HiggsField) -> HitchinPoint:
    return HitchinPoint(twisted_char_poly(theta))


class SpectralIdeal:
    """Generators g_I in R[D_1..D_d], one per degree-r monomial I in w"""

    def __init__(self, chi: TwistedCharPoly, ring: PolyRing, generators: Dict[Tuple[int, ...], Poly]):
        self.chi = chi
        self.ring = ring
        self.generators = generators

    @property
    def rank(self) -> int:
        return self.chi.rank

    @property
    def d(self) -> int:
        return self.chi.d

    def keys(self) -> List[Tuple[int, ...]]:
        return degree_r_monomials(self.rank, self.d)

    @property
    def enlarged_generators(self) -> List[Poly]:
        """g_1..g_d: the coefficients of w_i^r"""
        r, d = self.rank, self.d
        out = []
        for i in range(d):
            key = [0] * d
            key[i] = r
            out.append(self.generators[tuple(key)])
        return out

    def __len__(self):
        return len(self.generators)


def spectral_ideal(chi: TwistedCharPoly) -> SpectralIdeal:
    """Expand chi(sum D_j w_j) and collect the coefficient of each degree-r monomial in w"""
    base = chi.base
    d, r = base.d, chi.rank
    gen_ring = base.with_extra(spectral_names(d))
    work = gen_ring.with_extra(omega_names(d))
    tautological = work.zero()
    for j in range(d):
        tautological = tautological + work.var(d + j) * work.var(2 * d + j)
    expanded = work.zero()
    power = work.one()
    powers = [power]
    for _ in range(r):
        power = power * tautological
        powers.append(power)
    for m in range(r + 1):
        # a_m lives in R[w]; move its w-exponents behind the D slots
        a = chi.a(m)
        moved = Poly(work, {e[:d] + (0,) * d + e[d:]: c for e, c in a.terms.items()})
        term = moved * powers[r - m]
        expanded = expanded + (term if m % 2 == 0 else -term)
    collected: Dict[Tuple[int, ...], Dict] = {I: {} for I in degree_r_monomials(r, d)}
    for e, c in expanded.terms.items():
        I = tuple(e[2 * d:])
        if I not in collected:
            raise AssertionError(f"chi(sum D_j w_j) has a term of w-degree {sum(I)} != {r}")
        collected[I][e[:2 * d]] = c
    generators = {I: Poly(gen_ring, terms) for I, terms in collected.items()}
    logger.debug(f"spectral ideal: {len(generators)} generators (S({r},{d}) = {s_count(r, d)})")
    return SpectralIdeal(chi, gen_ring, generators)


def evaluate_at_matrices(g: Poly, matrices: List[Matrix], ring: PolyRing) -> Matrix:
    """g(D_j -> matrices[j]) for g in R[D]; the matrices must commute"""
    d = ring.d
    r = len(matrices[0])
    cache: Dict[Tuple[int, int], Matrix] = {}
    total = mat_zero(ring, r)
    for e, c in g.terms.items():
        coeff = Poly(ring, {e[:d] + (0,) * (ring.nvars - d): c})
        term = mat_scale(mat_identity(ring, r), coeff)
        for j, k in enumerate(e[d:2 * d]):
            if k:
                if (j, k) not in cache:
                    cache[(j, k)] = mat_pow(matrices[j], k)
                term = mat_mul(term, cache[(j, k)])
        total = mat_add(total, term)
    return total


def annihilation_check(theta: HiggsField, ideal: SpectralIdeal, enlarged_only: bool = False) -> bool:
    """Every generator vanishes at D_j -> theta_j"""
    generators = ideal.enlarged_generators if enlarged_only else [ideal.generators[I] for I in ideal.keys()]
    base = theta.ring
    for g in generators:
        value = evaluate_at_matrices(g, theta.thetas, base)
        if not mat_is_zero(value):
            return False
    return True


def annihilator_degrees(theta: HiggsField) -> List[int]:
    """Degree of the minimal polynomial of each theta_i over Frac(R)"""
    ring, r = theta.ring, theta.rank
    degrees = []
    for th in theta.thetas:
        # columns vec(theta^0), ..., vec(theta^r)
        columns = []
        power = mat_identity(ring, r)
        for _ in range(r + 1):
            columns.append([f for row in power for f in row])
            power = mat_mul(power, th)
        krylov = [[columns[j][k] for j in range(r + 1)] for k in range(r * r)]
        degrees.append(rank_over_fraction_field(krylov, ring))
    return degrees


def enlarged_cover_basis(ideal: SpectralIdeal) -> List[Tuple[int, ...]]:
    """R-basis D^J, J in [0, r)^d, of R[D]/(g_1..g_d)"""
    return [tuple(J) for J in product(range(ideal.rank), repeat=ideal.d)]


def enlarged_generators_monic(ideal: SpectralIdeal) -> bool:
    """Each g_i is monic of degree r in D_i alone"""
    d, r = ideal.d, ideal.rank
    for i, g in enumerate(ideal.enlarged_generators):
        for e in g.terms:
            spectral = e[d:]
            if any(k for j, k in enumerate(spectral) if j != i):
                return False
            if spectral[i] > r:
                return False
        lead = [0] * g.ring.nvars
        lead[d + i] = r
        if not g.coefficient(lead).is_one():
            return False
    return True


def spectral_flatness_guaranteed(r: int, d: int) -> bool:
    """Z_chi itself is finite flat for every chi only when r = 1 or d = 1"""
    return r == 1 or d == 1


def univariate_char_poly(th: Matrix, ring: PolyRing):
    """Characteristic polynomial of a constant-coefficient matrix as a little-endian field list"""
    coeffs = berkowitz(th, ring)
    values = []
    for c in coeffs:
        if not c.is_constant():
            return None
        values.append(c.constant_coefficient())
    return list(reversed(values))