#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Flat lambda-connections on free R-modules and their p-curvature.

A connection on E = R^r is given by matrices A_1..A_d; the operator
nabla_i = lambda d_i + A_i acts on column vectors. The p-curvature is
computed by applying nabla_i p times to each basis column; the rank-one
closed formula and the Cartier path are kept as independent cross-checks.
"""

import logging
from typing import List, Sequence

from basefield import FieldElem
from errors import LinearityFailure, NotClosed, NotFlat, NotHiggs, RingMismatch, VerificationFailure
from linalg import (Matrix, mat_add, mat_apply, mat_commutator, mat_is_zero, mat_map,
                    mat_pow, mat_scale, mat_sub, mat_zero)
from polyring import (OneForm, PolyRing, cartier_operator, frobenius_pullback_form, is_closed,
                      w_pullback_form)

logger = logging.getLogger("charp-connection")

BASIS_TAGS = ("K", "FrK", "wK")


class HiggsField:
    """Commuting tuple theta_1..theta_d of r x r matrices over a coordinate ring"""

    def __init__(self, ring: PolyRing, thetas: Sequence[Matrix], basis_tag: str = "K"):
        thetas = [list(map(list, th)) for th in thetas]
        if len(thetas) != ring.d:
            raise ValueError(f"a Higgs field over {ring} needs {ring.d} matrices, got {len(thetas)}")
        if basis_tag not in BASIS_TAGS:
            raise ValueError(f"unknown basis tag {basis_tag!r}")
        rank = len(thetas[0])
        for th in thetas:
            _check_square(th, rank, ring)
        for i in range(len(thetas)):
            for j in range(i + 1, len(thetas)):
                if not mat_is_zero(mat_commutator(thetas[i], thetas[j])):
                    raise NotHiggs(f"theta_{i + 1} and theta_{j + 1} do not commute")
        self.ring = ring
        self.rank = rank
        self.thetas = thetas
        self.basis_tag = basis_tag

    @property
    def d(self) -> int:
        return self.ring.d

    @classmethod
    def zero(cls, ring: PolyRing, rank: int, basis_tag: str = "K") -> "HiggsField":
        return cls(ring, [mat_zero(ring, rank) for _ in range(ring.d)], basis_tag)

    def map_entries(self, fn, ring: PolyRing, basis_tag=None) -> "HiggsField":
        return HiggsField(ring, [mat_map(th, fn) for th in self.thetas], basis_tag or self.basis_tag)

    def __eq__(self, other):
        return (isinstance(other, HiggsField) and self.ring == other.ring
                and self.thetas == other.thetas)

    def __repr__(self):
        return f"HiggsField(rank={self.rank}, ring={self.ring}, tag={self.basis_tag})"


class PCurvature(HiggsField):
    """p-curvature psi_1..psi_d of a flat connection (tag FrK)"""

    def __init__(self, ring: PolyRing, psis: Sequence[Matrix]):
        super().__init__(ring, psis, "FrK")


def _check_square(M: Matrix, rank: int, ring: PolyRing):
    if len(M) != rank or any(len(row) != rank for row in M):
        raise ValueError(f"expected a {rank} x {rank} matrix")
    for row in M:
        for f in row:
            if f.ring != ring:
                raise RingMismatch(f"matrix entry over {f.ring}, expected {ring}")


class Connection:
    """nabla_i = lambda d_i + A_i on R^r"""

    def __init__(self, ring: PolyRing, lam: FieldElem, matrices: Sequence[Matrix]):
        if ring.twist:
            raise RingMismatch("connections live over R, not R'")
        matrices = [list(map(list, A)) for A in matrices]
        if len(matrices) != ring.d:
            raise ValueError(f"a connection over {ring} needs {ring.d} matrices")
        self.rank = len(matrices[0])
        for A in matrices:
            _check_square(A, self.rank, ring)
        self.ring = ring
        self.lam = ring.field.element(lam)
        self.A = matrices

    @property
    def d(self) -> int:
        return self.ring.d

    @classmethod
    def trivial(cls, ring: PolyRing, rank: int, lam=1) -> "Connection":
        return cls(ring, lam, [mat_zero(ring, rank) for _ in range(ring.d)])

    @classmethod
    def rank_one(cls, omega: OneForm, lam=1) -> "Connection":
        """(O, lambda d + omega)"""
        return cls(omega.ring, lam, [[[f]] for f in omega.components])

    def apply(self, i: int, v: List) -> List:
        """nabla_i applied to a column vector"""
        lam = self.lam
        out = mat_apply(self.A[i], v)
        if lam.is_zero():
            return out
        return [w + f.partial_derivative(i).scale(lam) for w, f in zip(out, v)]

    def apply_power(self, i: int, v: List, n: int) -> List:
        for _ in range(n):
            v = self.apply(i, v)
        return v

    def base_change(self, embedding) -> "Connection":
        ring = self.ring.over(embedding.target)
        return Connection(ring, embedding(self.lam),
                          [mat_map(A, lambda f: f.base_change(embedding)) for A in self.A])

    def __repr__(self):
        return f"Connection(rank={self.rank}, lambda={self.lam!r}, ring={self.ring})"


def curvature(conn: Connection, i: int, j: int) -> Matrix:
    """lambda (d_i A_j - d_j A_i) + [A_i, A_j]"""
    lam = conn.ring.const(conn.lam)
    Ai, Aj = conn.A[i], conn.A[j]
    derivative = mat_sub(mat_map(Aj, lambda f: f.partial_derivative(i)),
                         mat_map(Ai, lambda f: f.partial_derivative(j)))
    return mat_add(mat_scale(derivative, lam), mat_commutator(Ai, Aj))


def is_flat(conn: Connection) -> bool:
    return all(mat_is_zero(curvature(conn, i, j))
               for i in range(conn.d) for j in range(i + 1, conn.d))


def _basis_column(ring: PolyRing, rank: int, j: int, f=None):
    v = [ring.zero()] * rank
    v[j] = f if f is not None else ring.one()
    return v


def p_curvature(conn: Connection) -> PCurvature:
    """psi_i = nabla_i^p by operator iteration, with linearity, commutation and horizontality asserted"""
    if not is_flat(conn):
        raise NotFlat(f"{conn} is not flat")
    ring, r, p = conn.ring, conn.rank, conn.ring.p
    psis = []
    for i in range(conn.d):
        columns = [conn.apply_power(i, _basis_column(ring, r, j), p) for j in range(r)]
        psi_i = [[columns[j][a] for j in range(r)] for a in range(r)]
        # R-linearity: nabla_i^p(t_k e_j) = t_k psi_i e_j
        for k, t in enumerate(ring.gens()):
            for j in range(r):
                lhs = conn.apply_power(i, _basis_column(ring, r, j, t), p)
                rhs = [t * x for x in columns[j]]
                if lhs != rhs:
                    logger.error(f"p-curvature of {conn} is not linear in direction {i + 1}")
                    raise LinearityFailure(f"nabla_{i + 1}^p(t_{k + 1} e_{j + 1}) != t_{k + 1} psi e_{j + 1}")
        psis.append(psi_i)
    lam = ring.const(conn.lam)
    for i in range(conn.d):
        for j in range(conn.d):
            if j > i and not mat_is_zero(mat_commutator(psis[i], psis[j])):
                logger.error("p-curvature components do not commute")
                raise VerificationFailure(f"psi_{i + 1} and psi_{j + 1} do not commute",
                                          identity="p-curvature-commutation")
            horizontal = mat_add(mat_scale(mat_map(psis[i], lambda f: f.partial_derivative(j)), lam),
                                 mat_commutator(conn.A[j], psis[i]))
            if not mat_is_zero(horizontal):
                logger.error("p-curvature is not horizontal")
                raise VerificationFailure(f"[nabla_{j + 1}, psi_{i + 1}] != 0", identity="horizontality")
    return PCurvature(ring, psis)


def p_curvature_rank1_formula(omega: OneForm, lam=1) -> OneForm:
    """psi_i = f_i^p + lambda^{p-1} d_i^{p-1}(f_i) for (O, lambda d + omega)"""
    if not is_closed(omega):
        raise NotClosed(f"{omega} is not closed")
    ring = omega.ring
    p = ring.p
    weight = ring.field.element(lam) ** (p - 1)
    components = []
    for i, f in enumerate(omega.components):
        derivative = f
        for _ in range(p - 1):
            derivative = derivative.partial_derivative(i)
        components.append(f ** p + derivative.scale(weight))
    return OneForm(ring, components)


def p_curvature_via_cartier(omega: OneForm) -> OneForm:
    """F*(w* omega - C(omega)), the lambda = 1 p-curvature of d + omega"""
    eta = w_pullback_form(omega) - cartier_operator(omega)
    return frobenius_pullback_form(eta)


def rank_one_agreement(omega: OneForm) -> dict:
    """The three rank-one p-curvature paths at lambda = 1"""
    ring = omega.ring
    operator = p_curvature(Connection.rank_one(omega))
    by_operator = OneForm(ring, [psi[0][0] for psi in operator.thetas])
    by_formula = p_curvature_rank1_formula(omega)
    by_cartier = p_curvature_via_cartier(omega)
    return {
        "operator": by_operator,
        "formula": by_formula,
        "cartier": by_cartier,
        "agree": by_operator == by_formula == by_cartier,
    }


def higgs_as_connection(theta: HiggsField) -> Connection:
    """A Higgs field over R read as a lambda = 0 connection"""
    return Connection(theta.ring, 0, theta.thetas)


def matrix_power_curvature(theta: HiggsField) -> List[Matrix]:
    """theta_i^p, the lambda = 0 p-curvature"""
    return [mat_pow(th, theta.ring.p) for th in theta.thetas]