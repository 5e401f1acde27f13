#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Frobenius pushforward of modules and operators, the induced Higgs field
psi' over R', the de Rham Hitchin map c_dR, and the descent identities

    F* chi' = chi^{p^d}        chi' = (chi'')^{p^d}

F_*E has the R'-basis e_a (x) t^I, I in {0..p-1}^d, ordered
lexicographically in (a, I).
"""

import logging
from typing import List, Optional, Sequence, Tuple

from connection import Connection, HiggsField, is_flat, p_curvature
from errors import DescentFailure, NotFlat, NotHiggs, NotInImage, VerificationFailure
from higgs import TwistedCharPoly, twisted_char_poly
from linalg import Matrix, mat_permute, mat_zero
from polyring import PolyRing, frobenius_basis, frobenius_decompose, frobenius_preimage, frobenius_pullback

logger = logging.getLogger("charp-frobdescent")


class FrobModule:
    """F_* of a free rank-r module over R: free of rank p^d r over R'"""

    def __init__(self, ring: PolyRing, rank: int):
        self.source = ring.unprimed()
        self.ring = ring.primed()
        self.source_rank = rank
        self.exponents = frobenius_basis(ring.p, ring.d)
        self.basis: List[Tuple[int, Tuple[int, ...]]] = [(a, I) for a in range(rank) for I in self.exponents]
        self._index = {key: n for n, key in enumerate(self.basis)}

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, a: int, I: Sequence[int]) -> int:
        return self._index[(a, tuple(I))]

    def basis_names(self) -> List[str]:
        names = self.source.names
        out = []
        for a, I in self.basis:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, I) if k) or "1"
            out.append(mono if self.source_rank == 1 else f"e{a + 1}*{mono}")
        return out

    def __repr__(self):
        return f"FrobModule(rank={self.rank} over {self.ring})"


def pushforward_module(ring: PolyRing, rank: int) -> FrobModule:
    return FrobModule(ring, rank)


def _scatter(module: FrobModule, matrix: Matrix, column: int, a: int, f):
    """Add the R'-coordinates of f * e_a (f in R) to `column`"""
    for J, part in frobenius_decompose(f).items():
        row = module.index(a, J)
        matrix[row][column] = matrix[row][column] + part


def pushforward_operator(T: Matrix, ring: Optional[PolyRing] = None) -> Matrix:
    """Matrix over R' of an R-linear endomorphism of R^r acting on F_*R^r"""
    r = len(T)
    ring = ring or T[0][0].ring
    module = FrobModule(ring, r)
    target = module.ring
    out = mat_zero(target, module.rank)
    for b in range(r):
        for I in module.exponents:
            col = module.index(b, I)
            mono = module.source.monomial(I)
            for a in range(r):
                if T[a][b].terms:
                    _scatter(module, out, col, a, T[a][b] * mono)
    return out


def pushforward_differential_operator(conn: Connection, i: int) -> Matrix:
    """Matrix over R' of nabla_i = lambda d_i + A_i on F_*E (R'-linear since d_i kills t^p)"""
    module = FrobModule(conn.ring, conn.rank)
    out = mat_zero(module.ring, module.rank)
    for b in range(conn.rank):
        for I in module.exponents:
            col = module.index(b, I)
            v = [conn.ring.zero()] * conn.rank
            v[b] = conn.ring.monomial(I)
            image = conn.apply(i, v)
            for a, f in enumerate(image):
                if f.terms:
                    _scatter(module, out, col, a, f)
    return out


def induced_psi_prime(conn: Connection, psi: Optional[HiggsField] = None) -> HiggsField:
    """psi'_i = F_* psi_i over R' (basis tag wK)"""
    psi = psi or p_curvature(conn)
    ring = conn.ring.primed()
    pushed = [pushforward_operator(th, conn.ring) for th in psi.thetas]
    try:
        return HiggsField(ring, pushed, "wK")
    except NotHiggs as exc:
        logger.error(f"pushforward of the p-curvature does not commute: {exc}")
        raise VerificationFailure(str(exc), identity="psi-prime-commutation")


def c_dR(conn: Connection, chi: Optional[TwistedCharPoly] = None) -> TwistedCharPoly:
    """chi'' over R' with F* chi'' = chi, by coefficientwise Frobenius preimage"""
    chi = chi or twisted_char_poly(p_curvature(conn))
    base = conn.ring.primed()
    try:
        return chi.map_coefficients(lambda a, ring: frobenius_preimage(a), base)
    except NotInImage as exc:
        logger.error(f"chi of {conn} does not descend: {exc}")
        raise DescentFailure(f"characteristic polynomial of the p-curvature is not a pullback: {exc}")


def pullback_char_poly(chi: TwistedCharPoly) -> TwistedCharPoly:
    """F* chi (R' -> R, w and T untouched)"""
    return chi.map_coefficients(lambda a, ring: frobenius_pullback(a), chi.base.unprimed())


class DescentReport:
    """chi over R, chi'' and chi' over R', and the two descent identities"""

    def __init__(self, chi, chi2prime, chiprime, identity_i: bool, identity_ii: bool):
        self.chi = chi
        self.chi2prime = chi2prime
        self.chiprime = chiprime
        self.identity_i = identity_i
        self.identity_ii = identity_ii

    @property
    def ok(self) -> bool:
        return self.identity_i and self.identity_ii

    def __repr__(self):
        return f"DescentReport(identity_i={self.identity_i}, identity_ii={self.identity_ii})"


def verify_descent(conn: Connection) -> DescentReport:
    if not is_flat(conn):
        raise NotFlat(f"{conn} is not flat")
    power = conn.ring.p ** conn.d
    psi = p_curvature(conn)
    chi = twisted_char_poly(psi)
    chi2prime = c_dR(conn, chi)
    chiprime = twisted_char_poly(induced_psi_prime(conn, psi))
    # (i) over R: F* chi' = chi^{p^d}
    identity_i = pullback_char_poly(chiprime).poly() == chi.poly() ** power
    # (ii) over R': chi' = (chi'')^{p^d}
    identity_ii = chiprime.poly() == chi2prime.poly() ** power
    if not (identity_i and identity_ii):
        logger.error(f"descent identities failed for {conn}: (i) {identity_i}, (ii) {identity_ii}")
    return DescentReport(chi, chi2prime, chiprime, identity_i, identity_ii)


def permuted_basis_check(conn: Connection, permutation: Sequence[int]) -> bool:
    """Reordering the basis of F_*E conjugates psi' and leaves chi' unchanged"""
    psi_prime = induced_psi_prime(conn)
    if sorted(permutation) != list(range(psi_prime.rank)):
        raise ValueError(f"{permutation} is not a permutation of 0..{psi_prime.rank - 1}")
    permuted = HiggsField(psi_prime.ring, [mat_permute(th, permutation) for th in psi_prime.thetas], "wK")
    return twisted_char_poly(permuted).poly() == twisted_char_poly(psi_prime).poly()
