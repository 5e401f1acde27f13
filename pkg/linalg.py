#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Linear algebra used across the toolkit.

* FpSystem: F_p-linear systems assembled column by column from sparse
  coordinate dicts and reduced with numpy int64 arithmetic mod p. Every
  F_q-linear (and p^{-1}-linear) problem is flattened to F_p coordinates.
* Matrices over a PolyRing are lists of rows of Poly. Characteristic
  polynomials use Berkowitz's division-free algorithm; ranks over Frac(R)
  use fraction-free (Bareiss) elimination with exact division.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Dict, Hashable, List, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from polyring import Poly, PolyRing

logger = logging.getLogger("charp-linalg")

Matrix = List[List["Poly"]]


# ---------------------------------------------------------------------------
# F_p systems
# ---------------------------------------------------------------------------

def fp_row_reduce(M: np.ndarray, p: int, ncols: Optional[int] = None):
    """Reduced row echelon form mod p; pivots are searched in the first ncols columns"""
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    ncols = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        pivot_row = r + int(nz[0])
        if pivot_row != r:
            M[[r, pivot_row]] = M[[pivot_row, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r] = (M[r] * inv) % p
        others = np.nonzero(M[:, c])[0]
        for o in others:
            if o != r:
                M[o] = (M[o] - M[o, c] * M[r]) % p
        pivots.append(c)
        r += 1
    return M, pivots


def fp_rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(fp_row_reduce(M, p)[1])


def fp_kernel(M: np.ndarray, p: int) -> List[np.ndarray]:
    """Basis of the right kernel, one vector per free column, in column order"""
    rows, cols = M.shape
    if rows == 0:
        return [np.eye(cols, dtype=np.int64)[j] for j in range(cols)]
    R, pivots = fp_row_reduce(M, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(pivots):
            v[pc] = (-R[row, f]) % p
        basis.append(v)
    return basis


class FpSystem:
    """Columns are images of unknowns given as {row key: value mod p}"""

    def __init__(self, p: int):
        self.p = p
        self.columns: List[Dict[Hashable, int]] = []

    def add_column(self, coords: Dict[Hashable, int]):
        self.columns.append({k: int(v) % self.p for k, v in coords.items() if int(v) % self.p})

    def _matrix(self, extra: Sequence[Dict[Hashable, int]] = ()):
        keys = set()
        for col in list(self.columns) + list(extra):
            keys.update(col)
        order = {k: n for n, k in enumerate(sorted(keys, key=repr))}
        M = np.zeros((len(order), len(self.columns) + len(extra)), dtype=np.int64)
        for j, col in enumerate(list(self.columns) + list(extra)):
            for k, v in col.items():
                M[order[k], j] = v % self.p
        return M

    def rank(self) -> int:
        return fp_rank(self._matrix(), self.p)

    def kernel(self) -> List[np.ndarray]:
        return fp_kernel(self._matrix(), self.p)

    def solve(self, target: Dict[Hashable, int]) -> Optional[List[int]]:
        """Particular solution with free unknowns set to 0, or None when inconsistent"""
        n = len(self.columns)
        M = self._matrix([target])
        R, pivots = fp_row_reduce(M, self.p, ncols=n)
        rows = R.shape[0]
        for row in range(len(pivots), rows):
            if R[row, n] % self.p:
                return None
        solution = [0] * n
        for row, pc in enumerate(pivots):
            solution[pc] = int(R[row, n])
        return solution


def field_coordinates(values, tag=()) -> Dict[Hashable, int]:
    """F_p coordinates of a sequence of FieldElem, keyed by (tag, position, k)"""
    coords = {}
    for n, c in enumerate(values):
        for k, v in enumerate(c.rep):
            if v:
                coords[(tag, n, k)] = v
    return coords


def fq_rank(vectors, field) -> int:
    """Rank over F_q of FieldElem vectors, via F_p rank of all x^k multiples"""
    if not vectors:
        return 0
    gen = field.generator() if field.e > 1 else field.one
    system = FpSystem(field.p)
    for vec in vectors:
        scaled = list(vec)
        for k in range(field.e):
            system.add_column(field_coordinates(scaled))
            scaled = [c * gen for c in scaled]
    return system.rank() // field.e


# ---------------------------------------------------------------------------
# matrices over a polynomial ring
# ---------------------------------------------------------------------------

def mat_zero(ring: PolyRing, rows: int, cols: Optional[int] = None) -> Matrix:
    cols = rows if cols is None else cols
    return [[ring.zero() for _ in range(cols)] for _ in range(rows)]


def mat_identity(ring: PolyRing, n: int) -> Matrix:
    M = mat_zero(ring, n)
    for i in range(n):
        M[i][i] = ring.one()
    return M


def mat_scalar(ring: PolyRing, n: int, c) -> Matrix:
    M = mat_zero(ring, n)
    c = ring(c)
    for i in range(n):
        M[i][i] = c
    return M


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(A: Matrix) -> Matrix:
    return [[-a for a in row] for row in A]


def mat_scale(A: Matrix, c) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0]) if B else 0
    inner = len(B)
    ring = A[0][0].ring
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero()
            for k in range(inner):
                a = A[i][k]
                if a.terms:
                    b = B[k][j]
                    if b.terms:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def mat_pow(A: Matrix, n: int) -> Matrix:
    ring = A[0][0].ring
    result = mat_identity(ring, len(A))
    base = A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def mat_commutator(A: Matrix, B: Matrix) -> Matrix:
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def mat_map(A: Matrix, fn) -> Matrix:
    return [[fn(a) for a in row] for row in A]


def mat_apply(A: Matrix, v: List[Poly]) -> List[Poly]:
    ring = A[0][0].ring
    out = []
    for row in A:
        acc = ring.zero()
        for a, x in zip(row, v):
            if a.terms and x.terms:
                acc = acc + a * x
        out.append(acc)
    return out


def mat_is_zero(A: Matrix) -> bool:
    return all(a.is_zero() for row in A for a in row)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_is_constant(A: Matrix) -> bool:
    return all(a.is_constant() for row in A for a in row)


def mat_transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_trace(A: Matrix) -> Poly:
    acc = A[0][0].ring.zero()
    for i in range(len(A)):
        acc = acc + A[i][i]
    return acc


def mat_permute(A: Matrix, perm: Sequence[int]) -> Matrix:
    """P A P^{-1} for the basis reordering new index n -> old index perm[n]"""
    return [[A[perm[i]][perm[j]] for j in range(len(A))] for i in range(len(A))]


def berkowitz(A: Matrix, ring: PolyRing) -> List[Poly]:
    """Coefficients [1, c_1, ..., c_n] of det(x Id - A) = x^n + c_1 x^{n-1} + ... + c_n"""
    n = len(A)
    if n == 0:
        return [ring.one()]
    # vect holds the characteristic polynomial of the leading r x r block, highest degree first
    vect = [ring.one(), -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]
        S = [A[i][r] for i in range(r)]
        Asub = [row[:r] for row in A[:r]]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        col = [ring.one(), -a]
        vec = S
        for _ in range(r):
            acc = ring.zero()
            for x, y in zip(R, vec):
                if x.terms and y.terms:
                    acc = acc + x * y
            col.append(-acc)
            vec = mat_apply(Asub, vec)
        new = []
        for i in range(r + 2):
            acc = ring.zero()
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    c, v = col[i - j], vect[j]
                    if c.terms and v.terms:
                        acc = acc + c * v
            new.append(acc)
        vect = new
    return vect


def charpoly_coefficients(A: Matrix, ring: PolyRing) -> List[Poly]:
    return berkowitz(A, ring)


def determinant(A: Matrix, ring: PolyRing) -> Poly:
    n = len(A)
    if n == 0:
        return ring.one()
    coeffs = berkowitz(A, ring)
    return coeffs[n] if n % 2 == 0 else -coeffs[n]


def inverse_unimodular(A: Matrix, ring: PolyRing) -> Optional[Matrix]:
    """Inverse of A when det(A) is a nonzero constant, via Cayley-Hamilton; None otherwise"""
    n = len(A)
    coeffs = berkowitz(A, ring)
    cn = coeffs[n]
    if cn.is_zero() or not cn.is_constant():
        return None
    # A^{-1} = -(A^{n-1} + c_1 A^{n-2} + ... + c_{n-1}) / c_n
    acc = mat_identity(ring, n)
    for k in range(1, n):
        acc = mat_add(mat_mul(acc, A), mat_scalar(ring, n, coeffs[k]))
    inv_c = cn.constant_coefficient().inverse()
    return mat_scale(acc, ring.const(-inv_c))


def exact_divide(a: Poly, b: Poly) -> Poly:
    """a / b, assuming b divides a exactly (lex leading-term division)"""
    if b.is_zero():
        raise ZeroDivisionError("exact division by zero")
    ring = a.ring
    lead_exp, lead_coeff = b.leading_term()
    inv = lead_coeff.inverse()
    quotient = ring.zero()
    rem = a
    while not rem.is_zero():
        exp, coeff = rem.leading_term()
        shift = tuple(x - y for x, y in zip(exp, lead_exp))
        if any(s < 0 for s in shift):
            raise ArithmeticError(f"{b} does not divide {a}")
        term = ring.monomial(shift, coeff * inv)
        quotient = quotient + term
        rem = rem - term * b
    return quotient


def rank_over_fraction_field(A: Matrix, ring: PolyRing) -> int:
    """Rank of a polynomial matrix over Frac(R), by Bareiss elimination with pivoting"""
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    prev = ring.one()
    rank = 0
    for c in range(cols):
        if rank >= rows:
            break
        pivot = next((r for r in range(rank, rows) if not M[r][c].is_zero()), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        for r in range(rank + 1, rows):
            for j in range(c + 1, cols):
                M[r][j] = exact_divide(M[rank][c] * M[r][j] - M[r][c] * M[rank][j], prev)
            M[r][c] = ring.zero()
        prev = M[rank][c]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# matrices over a finite field (lists of rows of FieldElem)
# ---------------------------------------------------------------------------

def fmat_identity(field, n: int):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def fmat_scalar(field, n: int, c):
    c = field.element(c)
    return [[c if i == j else field.zero for j in range(n)] for i in range(n)]


def fmat_mul(A, B):
    field = A[0][0].field
    inner = len(B)
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), field.zero)
             for j in range(len(B[0]))] for i in range(len(A))]


def fmat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def fmat_pow(A, n: int):
    result = fmat_identity(A[0][0].field, len(A))
    for _ in range(n):
        result = fmat_mul(result, A)
    return result


def fmat_equal(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))
