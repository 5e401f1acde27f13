#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Azumaya splittings and the Cartier transform.

* splitting_over_section: P = F_*(O, d + omega) for a rank-one form omega
  whose p-curvature is the given section, with its D-action verified.
* spectral_decompose: Lagrange projectors of a Higgs field whose spectral
  data are constant and multiplicity-free.
* cartier_inverse / cartier_direct: Higgs fields over R' <-> flat
  connections over R, assembled blockwise from rank-one splittings.
* module_isomorphic: degree-bounded search for an invertible intertwiner.
"""

import logging
from itertools import combinations, islice, product
from math import factorial, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from basefield import (Embedding, FieldElem, embed_into_extension, find_roots, frobenius_root,
                       irreducible_factor_degrees, upoly_gcd, upoly_trim)
from connection import Connection, HiggsField, is_flat, p_curvature
from errors import (DescentFailure, KernelRankMismatch, NoLift, NoSolution, NotConstantCoefficients,
                    NotFlat, NotInImage, NotMultiplicityFree, RingMismatch, TwistMismatch,
                    VerificationFailure)
from frobdescent import FrobModule, c_dR, pushforward_differential_operator, pushforward_operator
from higgs import hitchin_point, twisted_char_poly, univariate_char_poly
from linalg import (FpSystem, Matrix, determinant, inverse_unimodular, mat_add, mat_commutator,
                    mat_equal, mat_identity, mat_is_zero, mat_map, mat_mul, mat_pow, mat_scalar,
                    mat_scale, mat_sub, mat_zero, rank_over_fraction_field)
from polyring import (OneForm, Poly, PolyRing, frobenius_preimage, frobenius_pullback, monomials_upto,
                      random_poly, solve_w_minus_c)

logger = logging.getLogger("charp-azcorr")


def _bound(degree_bound: Optional[int]) -> int:
    return config.DEGREE_BOUND if degree_bound is None else degree_bound


# ---------------------------------------------------------------------------
# splittings over sections
# ---------------------------------------------------------------------------

class SectionData:
    """Values s_1..s_d in R' of the central generators psi(d_1)..psi(d_d)"""

    def __init__(self, ring: PolyRing, values: Sequence[Poly]):
        if not ring.twist:
            raise RingMismatch("a section takes values in R'")
        values = [ring(v) for v in values]
        if len(values) != ring.d:
            raise ValueError(f"a section over {ring} needs {ring.d} values")
        self.ring = ring
        self.values = values

    @classmethod
    def zero(cls, ring: PolyRing) -> "SectionData":
        return cls(ring, [ring.zero()] * ring.d)

    @classmethod
    def constant(cls, ring: PolyRing, values) -> "SectionData":
        return cls(ring, [ring.const(c) for c in values])

    def as_form(self) -> OneForm:
        return OneForm(self.ring, self.values)

    def is_constant(self) -> bool:
        return all(v.is_constant() for v in self.values)

    def __repr__(self):
        return f"SectionData({self.values})"


def section_form(section: SectionData, degree_bound: Optional[int] = None) -> OneForm:
    """The closed form omega over R whose rank-one p-curvature is F* of the section"""
    if section.is_constant():
        # psi of sum b_i dt_i is sum b_i^p
        ring = section.ring.unprimed()
        return OneForm(ring, [ring.const(frobenius_root(v.constant_coefficient())) for v in section.values])
    try:
        return solve_w_minus_c(section.as_form(), _bound(degree_bound))
    except NoSolution as exc:
        raise NoLift(str(exc))


class SplittingModule:
    """P = F_*(O, d + omega) with t_i, d_i acting as R'-matrices"""

    def __init__(self, section, omega, carrier, T, D, end_dimension, surjective):
        self.section = section
        self.omega = omega
        self.carrier = carrier
        self.T = T
        self.D = D
        self.end_dimension = end_dimension
        self.surjective = surjective

    @property
    def connection(self) -> Connection:
        return Connection.rank_one(self.omega)

    def __repr__(self):
        return (f"SplittingModule(rank={self.carrier.rank}, omega={self.omega}, "
                f"end_dimension={self.end_dimension}, surjective={self.surjective})")


def _products(T: List[Matrix], D: List[Matrix], exponents, ring: PolyRing, n: int) -> List[Matrix]:
    """T^I D^J for I, J in exponents"""
    def powers(mats):
        table = []
        for M in mats:
            row = [mat_identity(ring, n)]
            for _ in range(ring.p - 1):
                row.append(mat_mul(row[-1], M))
            table.append(row)
        return table

    t_pow, d_pow = powers(T), powers(D)
    out = []
    for I in exponents:
        left = mat_identity(ring, n)
        for i, k in enumerate(I):
            if k:
                left = mat_mul(left, t_pow[i][k])
        for J in exponents:
            M = left
            for i, k in enumerate(J):
                if k:
                    M = mat_mul(M, d_pow[i][k])
            out.append(M)
    return out


def splitting_over_section(section: SectionData, degree_bound: Optional[int] = None) -> SplittingModule:
    omega = section_form(section, degree_bound)
    conn = Connection.rank_one(omega)
    carrier = FrobModule(conn.ring, 1)
    ring, n, p, d = carrier.ring, carrier.rank, conn.ring.p, conn.d
    T = [pushforward_operator([[t]], conn.ring) for t in conn.ring.gens()]
    D = [pushforward_differential_operator(conn, i) for i in range(d)]
    identity = mat_identity(ring, n)
    for i in range(d):
        for j in range(d):
            expected = identity if i == j else mat_zero(ring, n)
            if not mat_equal(mat_commutator(D[i], T[j]), expected):
                raise VerificationFailure(f"[d_{i + 1}, t_{j + 1}] has the wrong value on P",
                                          identity="weyl-relations")
            if not mat_is_zero(mat_commutator(T[i], T[j])) or not mat_is_zero(mat_commutator(D[i], D[j])):
                raise VerificationFailure("generators of P do not commute", identity="weyl-relations")
    for i in range(d):
        if not mat_equal(mat_pow(D[i], p), mat_scalar(ring, n, section.values[i])):
            logger.error(f"psi(d_{i + 1}) does not act as {section.values[i]}")
            raise VerificationFailure(f"psi(d_{i + 1}) != s_{i + 1} on P", identity="central-action")
        if not mat_equal(mat_pow(T[i], p), mat_scalar(ring, n, ring.var(i))):
            raise VerificationFailure(f"t_{i + 1}^p != t'_{i + 1} on P", identity="central-action")
    products = _products(T, D, carrier.exponents, ring, n)
    # columns: vec(T^I D^J); square of size p^{2d}
    action = [[M[a][b] for M in products] for a in range(n) for b in range(n)]
    end_dimension = rank_over_fraction_field(action, ring)
    det = determinant(action, ring)
    surjective = det.is_constant() and not det.is_zero()
    if end_dimension != n * n or not surjective:
        logger.error(f"action on P spans {end_dimension} of {n * n} dimensions, det {det}")
        raise VerificationFailure("the action map onto End(P) is not an isomorphism", identity="balanced-module")
    logger.debug(f"splitting over {section}: omega = {omega}")
    return SplittingModule(section, omega, carrier, T, D, end_dimension, surjective)


# ---------------------------------------------------------------------------
# spectral decomposition
# ---------------------------------------------------------------------------

class SpectralComponent:
    def __init__(self, root: Tuple[FieldElem, ...], projector: Matrix, rank: int):
        self.root = root
        self.projector = projector
        self.rank = rank

    def __repr__(self):
        return f"SpectralComponent(root={self.root}, rank={self.rank})"


class SpectralDecomposition:
    """Projectors pi_c over the splitting extension, lex in root index"""

    def __init__(self, embedding: Embedding, ring: PolyRing, roots, components, thetas):
        self.embedding = embedding
        self.ring = ring
        self.roots = roots
        self.components = components
        self.thetas = thetas

    @property
    def field(self):
        return self.embedding.target

    @property
    def extended(self) -> bool:
        return not self.embedding.is_identity

    def __repr__(self):
        return f"SpectralDecomposition(field={self.field}, components={self.components})"


def _lagrange_factor(th: Matrix, ring: PolyRing, c: FieldElem, others: List[FieldElem]) -> Matrix:
    r = len(th)
    out = mat_identity(ring, r)
    for other in others:
        scale = (c - other).inverse()
        out = mat_mul(out, mat_scale(mat_sub(th, mat_scalar(ring, r, other)), ring.const(scale)))
    return out


def spectral_decompose(theta: HiggsField) -> SpectralDecomposition:
    point = hitchin_point(theta)
    if not point.constant:
        raise NotConstantCoefficients(f"characteristic polynomial {point.chi} has non-constant coefficients")
    ring, r = theta.ring, theta.rank
    polys = []
    for i, th in enumerate(theta.thetas):
        g = univariate_char_poly(th, ring)
        if g is None:
            raise NotConstantCoefficients(f"g_{i + 1} has non-constant coefficients")
        derivative = upoly_trim([c * k for k, c in enumerate(g)][1:])
        if len(upoly_gcd(g, derivative)) > 1:
            raise NotMultiplicityFree(f"g_{i + 1} has a repeated root")
        polys.append(g)
    m = lcm(*[lcm(*irreducible_factor_degrees(g)) for g in polys])
    embedding = embed_into_extension(ring.field, m)
    ext = ring.over(embedding.target)
    roots = []
    for i, g in enumerate(polys):
        found = find_roots([embedding(c) for c in g])
        if found.extended or len(found.cofactor) > 1:
            raise AssertionError(f"g_{i + 1} does not split over {embedding.target}")
        if any(mult > 1 for _, mult in found.roots):
            raise NotMultiplicityFree(f"g_{i + 1} has a repeated root")
        roots.append(sorted((c for c, _ in found.roots), key=lambda c: c.index()))
    thetas = [mat_map(th, lambda f: f.base_change(embedding)) for th in theta.thetas]
    factors: List[Dict] = []
    for i, th in enumerate(thetas):
        factors.append({c: _lagrange_factor(th, ext, c, [o for o in roots[i] if o != c]) for c in roots[i]})
    components = []
    for c in product(*roots):
        projector = mat_identity(ext, r)
        for i, ci in enumerate(c):
            projector = mat_mul(projector, factors[i][ci])
        if mat_is_zero(projector):
            continue
        components.append(SpectralComponent(tuple(c), projector, rank_over_fraction_field(projector, ext)))
    _verify_projectors(components, thetas, ext, r)
    logger.debug(f"spectral decomposition over {ext.field}: {components}")
    return SpectralDecomposition(embedding, ext, roots, components, thetas)


def _verify_projectors(components, thetas, ring, r):
    total = mat_zero(ring, r)
    for n, comp in enumerate(components):
        total = mat_add(total, comp.projector)
        if not mat_equal(mat_mul(comp.projector, comp.projector), comp.projector):
            raise VerificationFailure(f"pi_{comp.root} is not idempotent", identity="spectral-projectors")
        for other in components[n + 1:]:
            if not mat_is_zero(mat_mul(comp.projector, other.projector)):
                raise VerificationFailure("projectors are not orthogonal", identity="spectral-projectors")
        for th, c in zip(thetas, comp.root):
            if not mat_equal(mat_mul(th, comp.projector), mat_scale(comp.projector, ring.const(c))):
                raise VerificationFailure(f"theta does not act as {c} on its component",
                                          identity="spectral-projectors")
    if not mat_equal(total, mat_identity(ring, r)):
        raise VerificationFailure("projectors do not sum to the identity", identity="spectral-projectors")


def descend_coefficients(M: Matrix, embedding: Embedding, ring: PolyRing) -> Optional[Matrix]:
    """M with every coefficient pulled back along the embedding, or None if one is outside the base"""
    out = []
    for row in M:
        new_row = []
        for f in row:
            terms = {}
            for e, c in f.terms.items():
                pre = embedding.preimage(c)
                if pre is None:
                    return None
                terms[e] = pre
            new_row.append(Poly(ring, terms))
        out.append(new_row)
    return out


def _descend_all(matrices: List[Matrix], embedding: Embedding, ring: PolyRing) -> Optional[List[Matrix]]:
    if embedding.is_identity:
        return matrices
    out = []
    for M in matrices:
        down = descend_coefficients(M, embedding, ring)
        if down is None:
            return None
        out.append(down)
    return out


# ---------------------------------------------------------------------------
# Cartier transform
# ---------------------------------------------------------------------------

def cartier_inverse(theta: HiggsField, degree_bound: Optional[int] = None) -> Connection:
    """C^{-1}(theta): nabla_i = d_i + sum_c f_{c,i} F* pi_c on F*E"""
    if not theta.ring.twist:
        raise RingMismatch("cartier_inverse takes a Higgs field over R'")
    dec = spectral_decompose(theta)
    ext = dec.ring.unprimed()
    r = theta.rank
    A = [mat_zero(ext, r) for _ in range(theta.d)]
    for comp in dec.components:
        omega = section_form(SectionData.constant(dec.ring, comp.root), degree_bound)
        pulled = mat_map(comp.projector, frobenius_pullback)
        for i in range(theta.d):
            A[i] = mat_add(A[i], mat_scale(pulled, omega.components[i]))
    base = theta.ring.unprimed()
    descended = _descend_all(A, dec.embedding, base)
    if descended is None:
        logger.warning(f"C^-1 of {theta} keeps coefficients in {ext.field}")
        conn = Connection(ext, 1, A)
        target = [mat_map(th, frobenius_pullback) for th in dec.thetas]
    else:
        conn = Connection(base, 1, descended)
        target = [mat_map(th, frobenius_pullback) for th in theta.thetas]
    if not is_flat(conn):
        raise VerificationFailure("C^-1 produced a non-flat connection", identity="flatness-of-inverse")
    psi = p_curvature(conn)
    if any(not mat_equal(a, b) for a, b in zip(psi.thetas, target)):
        logger.error(f"p-curvature of C^-1({theta}) is not F* theta")
        raise VerificationFailure("p-curvature of C^-1(theta) differs from F* theta",
                                  identity="p-curvature-of-inverse")
    return conn


def katz_projector(conn: Connection, v: List[Poly]) -> List[Poly]:
    """prod_i sum_{j<p} (-t_i)^j / j! nabla_i^j (v); horizontal when the p-curvature vanishes"""
    if not conn.lam.is_one():
        raise TwistMismatch("the Katz projector is defined for lambda = 1")
    ring, p = conn.ring, conn.ring.p
    for i in range(conn.d):
        minus_t = -ring.var(i)
        acc = [ring.zero()] * conn.rank
        term = v
        for j in range(p):
            coeff = (minus_t ** j).scale(ring.field.element(factorial(j)).inverse())
            acc = [a + coeff * x for a, x in zip(acc, term)]
            term = conn.apply(i, term)
        v = acc
    return v


def flat_sections(conn: Connection, degree_bound: int) -> List[List[Poly]]:
    """F_p-basis of horizontal vectors with entries of degree <= degree_bound, graded order"""
    ring, r, field = conn.ring, conn.rank, conn.ring.field
    unknowns = []
    for e in monomials_upto(conn.d, degree_bound):
        for a in range(r):
            for k in range(field.e):
                unit = [0] * field.e
                unit[k] = 1
                v = [ring.zero()] * r
                v[a] = ring.monomial(e, unit)
                unknowns.append(v)
    system = FpSystem(field.p)
    for v in unknowns:
        coords = {}
        for i in range(conn.d):
            for a, f in enumerate(conn.apply(i, v)):
                for e, c in f.terms.items():
                    for k, val in enumerate(c.rep):
                        if val:
                            coords[(i, a, e, k)] = val
        system.add_column(coords)
    sections = []
    for vec in system.kernel():
        s = [ring.zero()] * r
        for coeff, v in zip(vec, unknowns):
            if coeff:
                s = [x + y.scale(field.element(int(coeff))) for x, y in zip(s, v)]
        sections.append(s)
    return sections


def _frame(sections: Sequence[List[Poly]], r: int) -> Matrix:
    return [[w[a] for w in sections] for a in range(r)]


def unimodular_frame(candidates: List[List[Poly]], ring: PolyRing, r: int, attempts: int = 256) -> Matrix:
    """r of the candidate sections whose matrix has a nonzero constant determinant"""
    chosen: List[List[Poly]] = []
    for v in candidates:
        trial = chosen + [v]
        if rank_over_fraction_field(_frame(trial, r), ring) == len(trial):
            chosen = trial
        if len(chosen) == r:
            break
    if len(chosen) < r:
        raise KernelRankMismatch(f"only {len(chosen)} of {r} independent flat sections; raise the degree bound")
    V = _frame(chosen, r)
    if _is_invertible(V, ring):
        return V
    # the greedy pick spans a proper submodule; scan other r-subsets in graded order
    for subset in islice(combinations(candidates, r), attempts):
        V = _frame(subset, r)
        if _is_invertible(V, ring):
            return V
    raise KernelRankMismatch(f"flat sections span a proper submodule (det {determinant(_frame(chosen, r), ring)}); "
                             f"raise the degree bound")


def cartier_direct(conn: Connection, degree_bound: Optional[int] = None, method: str = "kernel",
                   verify_roundtrip: bool = False) -> HiggsField:
    """C(nabla): the Higgs field over R' read off on flat sections of the untwisted connection"""
    if not conn.lam.is_one():
        raise TwistMismatch("cartier_direct expects lambda = 1")
    if not is_flat(conn):
        raise NotFlat(f"{conn} is not flat")
    bound = _bound(degree_bound)
    psi = p_curvature(conn)
    chi2 = c_dR(conn, twisted_char_poly(psi))
    if not chi2.is_constant():
        raise NotConstantCoefficients(f"chi'' = {chi2} has non-constant coefficients")
    dec = spectral_decompose(psi)
    ext = dec.ring
    lifted = conn if not dec.extended else conn.base_change(dec.embedding)
    r = conn.rank
    B = [mat_zero(ext, r) for _ in range(conn.d)]
    for comp in dec.components:
        for i, c in enumerate(comp.root):
            B[i] = mat_add(B[i], mat_scale(comp.projector, ext.const(frobenius_root(c))))
    untwisted = Connection(ext, 1, [mat_sub(A, b) for A, b in zip(lifted.A, B)])
    if method == "katz":
        candidates = [katz_projector(untwisted, [ext.one() if a == b else ext.zero() for b in range(r)])
                      for a in range(r)]
        for v in candidates:
            if any(not f.is_zero() for i in range(conn.d) for f in untwisted.apply(i, v)):
                raise KernelRankMismatch("Katz projection is not horizontal")
    elif method == "kernel":
        candidates = flat_sections(untwisted, bound)
    else:
        raise ValueError(f"unknown flat-section method {method!r}")
    V = unimodular_frame(candidates, ext, r)
    V_inv = inverse_unimodular(V, ext)
    prime = ext.primed()
    thetas = []
    for th in dec.thetas:
        M = mat_mul(mat_mul(V_inv, th), V)
        try:
            thetas.append(mat_map(M, frobenius_preimage))
        except NotInImage as exc:
            raise DescentFailure(f"p-curvature on flat sections is not a pullback: {exc}")
    base_prime = conn.ring.primed()
    descended = _descend_all(thetas, dec.embedding, base_prime)
    if descended is None:
        logger.warning(f"C({conn}) keeps coefficients in {ext.field}")
        theta = HiggsField(prime, thetas)
    else:
        theta = HiggsField(base_prime, descended)
    if verify_roundtrip:
        back = cartier_inverse(theta, degree_bound)
        if back.ring != conn.ring:
            conn = conn.base_change(dec.embedding)
        result = module_isomorphic(conn.A, back.A, bound, lam=conn.lam)
        if not result.found:
            raise VerificationFailure("C^-1(C(nabla)) is not isomorphic to nabla within the degree bound",
                                      identity="correspondence-roundtrip")
    return theta


# ---------------------------------------------------------------------------
# intertwiners
# ---------------------------------------------------------------------------

class IsomorphismResult:
    def __init__(self, found: bool, intertwiner: Optional[Matrix], degree_bound: int, kernel_dimension: int):
        self.found = found
        self.intertwiner = intertwiner
        self.degree_bound = degree_bound
        self.kernel_dimension = kernel_dimension

    @property
    def verdict(self) -> str:
        return "found" if self.found else "not-found-within-bound"

    def __repr__(self):
        return f"IsomorphismResult({self.verdict}, degree_bound={self.degree_bound})"


def _is_invertible(U: Matrix, ring: PolyRing) -> bool:
    det = determinant(U, ring)
    return det.is_constant() and not det.is_zero()


def module_isomorphic(X: Sequence[Matrix], Y: Sequence[Matrix], degree_bound: Optional[int] = None,
                      lam=None, seed: int = 0, attempts: int = 32) -> IsomorphismResult:
    """Invertible U with lam d_i(U) + Y_i U - U X_i = 0 (lam None: U X_i = Y_i U)"""
    bound = _bound(degree_bound)
    if len(X) != len(Y):
        raise ValueError("operator tuples of different lengths")
    ring = X[0][0][0].ring
    r = len(X[0])
    if Y[0][0][0].ring != ring or len(Y[0]) != r:
        raise RingMismatch("modules over different rings or of different ranks")
    field = ring.field
    weight = None if lam is None else ring.const(lam)
    unknowns = []
    for e in monomials_upto(ring.d, bound):
        exp = e + (0,) * len(ring.extra)
        for a in range(r):
            for b in range(r):
                for k in range(field.e):
                    unit = [0] * field.e
                    unit[k] = 1
                    U = mat_zero(ring, r)
                    U[a][b] = ring.monomial(exp, unit)
                    unknowns.append(U)
    system = FpSystem(field.p)
    for U in unknowns:
        coords = {}
        for i, (Xi, Yi) in enumerate(zip(X, Y)):
            image = mat_sub(mat_mul(Yi, U), mat_mul(U, Xi))
            if weight is not None:
                image = mat_add(image, mat_scale(mat_map(U, lambda f: f.partial_derivative(i)), weight))
            for a, row in enumerate(image):
                for b, f in enumerate(row):
                    for e, c in f.terms.items():
                        for k, val in enumerate(c.rep):
                            if val:
                                coords[(i, a, b, e, k)] = val
        system.add_column(coords)
    kernel = system.kernel()

    def assemble(vec) -> Matrix:
        U = mat_zero(ring, r)
        for coeff, basis_U in zip(vec, unknowns):
            if coeff:
                U = mat_add(U, mat_scale(basis_U, ring.const(int(coeff))))
        return U

    assembled = [assemble(vec) for vec in kernel]
    for U in assembled:
        if _is_invertible(U, ring):
            return IsomorphismResult(True, U, bound, len(kernel))
    # random combinations, low-degree kernel vectors first
    rng = np.random.default_rng(seed)
    degrees = [max(f.total_degree() for row in U for f in row) for U in assembled]
    for level in sorted(set(degrees)):
        chosen = [vec for vec, deg in zip(kernel, degrees) if deg <= level]
        stacked = np.array(chosen, dtype=np.int64)
        for _ in range(attempts):
            weights = rng.integers(0, field.p, size=len(chosen))
            U = assemble((weights @ stacked) % field.p)
            if _is_invertible(U, ring):
                return IsomorphismResult(True, U, bound, len(kernel))
    logger.info(f"no invertible intertwiner of degree <= {bound} (kernel dimension {len(kernel)})")
    return IsomorphismResult(False, None, bound, len(kernel))


# ---------------------------------------------------------------------------
# random inputs and the roundtrip
# ---------------------------------------------------------------------------

def random_unimodular(ring: PolyRing, rng, r: int, max_degree: int = 1, steps: int = 2) -> Matrix:
    """Product of elementary matrices Id + f e_ab"""
    V = mat_identity(ring, r)
    if r < 2:
        return V
    for _ in range(steps):
        a, b = rng.choice(r, size=2, replace=False)
        E = mat_identity(ring, r)
        E[int(a)][int(b)] = random_poly(ring, rng, max_degree)
        V = mat_mul(V, E)
    return V


def random_multiplicity_free_higgs(ring: PolyRing, rng, r: int, max_degree: int = 1) -> HiggsField:
    """theta_1 = V C V^{-1} (C a companion of a squarefree constant polynomial), theta_i = a_i + b_i theta_1"""
    field = ring.field
    while True:
        coeffs = [field.random_element(rng) for _ in range(r)] + [field.one]
        derivative = upoly_trim([c * k for k, c in enumerate(coeffs)][1:])
        if len(upoly_gcd(coeffs, derivative)) <= 1:
            break
    C = mat_zero(ring, r)
    for i in range(r):
        if i + 1 < r:
            C[i + 1][i] = ring.one()
        C[i][r - 1] = ring.const(-coeffs[i])
    V = random_unimodular(ring, rng, r, max_degree)
    theta_1 = mat_mul(mat_mul(V, C), inverse_unimodular(V, ring))
    thetas = [theta_1]
    for _ in range(1, ring.d):
        alpha = field.random_element(rng)
        beta = field.random_element(rng)
        while beta.is_zero():
            beta = field.random_element(rng)
        thetas.append(mat_add(mat_scalar(ring, r, alpha), mat_scale(theta_1, ring.const(beta))))
    return HiggsField(ring, thetas)


class RoundtripReport:
    def __init__(self, connection, flat, p_curvature_ok, recovered, isomorphism):
        self.connection = connection
        self.flat = flat
        self.p_curvature_ok = p_curvature_ok
        self.recovered = recovered
        self.isomorphism = isomorphism

    @property
    def ok(self) -> bool:
        return self.flat and self.p_curvature_ok and self.isomorphism.found


def correspondence_roundtrip(theta: HiggsField, degree_bound: Optional[int] = None) -> RoundtripReport:
    """C^{-1}, then C, then an intertwiner between theta and the recovered Higgs field"""
    conn = cartier_inverse(theta, degree_bound)
    recovered = cartier_direct(conn, degree_bound)
    source = theta
    if recovered.ring != theta.ring:
        embedding = embed_into_extension(theta.ring.field, recovered.ring.field.e // theta.ring.field.e)
        source = theta.map_entries(lambda f: f.base_change(embedding), recovered.ring)
    isomorphism = module_isomorphic(source.thetas, recovered.thetas, degree_bound)
    # cartier_inverse verified flatness and the p-curvature before returning
    return RoundtripReport(conn, True, True, recovered, isomorphism)
