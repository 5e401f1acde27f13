#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Sparse multivariate polynomials over F_q.

A PolyRing has d "base" variables, either t_1..t_d (the ring R) or
t'_1..t'_d (its Frobenius twist R'), optionally followed by extra formal
variables (the omega symbols, the spectral variables, T). Frobenius maps
act on the base variables only and leave the extra variables alone.
"""

import logging
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from basefield import Embedding, Field, FieldElem, frobenius_root
from errors import NoSolution, NotClosed, NotInImage, RingMismatch
from linalg import FpSystem, determinant

logger = logging.getLogger("charp-polyring")

Exponent = Tuple[int, ...]


class PolyRing:
    """F_q[t_1..t_d, extra...] (twist=False) or F_q[t'_1..t'_d, extra...] (twist=True)"""

    __slots__ = ("field", "d", "twist", "extra", "nvars")

    def __init__(self, field: Field, d: int, twist: bool = False, extra: Sequence[str] = ()):
        if d < 1:
            raise ValueError("a coordinate ring needs d >= 1")
        self.field = field
        self.d = d
        self.twist = bool(twist)
        self.extra = tuple(extra)
        self.nvars = d + len(self.extra)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field and self.d == other.d
                and self.twist == other.twist and self.extra == other.extra)

    def __hash__(self):
        return hash((self.field, self.d, self.twist, self.extra))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def names(self) -> Tuple[str, ...]:
        mark = "'" if self.twist else ""
        if self.d == 1:
            base = (f"t{mark}",)
        else:
            base = tuple(f"t{i + 1}{mark}" for i in range(self.d))
        return base + self.extra

    @property
    def tag(self) -> str:
        return "Rprime" if self.twist else "R"

    # ring constructors -------------------------------------------------
    def primed(self) -> "PolyRing":
        return PolyRing(self.field, self.d, True, self.extra)

    def unprimed(self) -> "PolyRing":
        return PolyRing(self.field, self.d, False, self.extra)

    def base(self) -> "PolyRing":
        return PolyRing(self.field, self.d, self.twist)

    def with_extra(self, names: Sequence[str]) -> "PolyRing":
        return PolyRing(self.field, self.d, self.twist, self.extra + tuple(names))

    def over(self, field: Field) -> "PolyRing":
        return PolyRing(field, self.d, self.twist, self.extra)

    # elements ------------------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(self.field.one)

    def const(self, c) -> "Poly":
        c = self.field.element(c)
        return Poly(self, {(0,) * self.nvars: c} if not c.is_zero() else {})

    def var(self, i: int) -> "Poly":
        """The i-th variable (0-based, base variables first)"""
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): self.field.one})

    def gens(self) -> List["Poly"]:
        return [self.var(i) for i in range(self.d)]

    def monomial(self, exp: Sequence[int], coeff=1) -> "Poly":
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError(f"exponent {exp} does not fit {self}")
        return Poly(self, {exp: self.field.element(coeff)})

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} is not {self}")
            return value
        return self.const(value)


def _exp_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero coefficient"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[Exponent, FieldElem]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, FieldElem)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                terms[e] = terms[e] + c
            else:
                terms[e] = c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[Exponent, FieldElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                c = c1 * c2
                if e in terms:
                    terms[e] = terms[e] + c
                else:
                    terms[e] = c
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: FieldElem) -> "Poly":
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((e, c.rep) for e, c in self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self) -> FieldElem:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def coefficient(self, exp: Sequence[int]) -> FieldElem:
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def degree(self) -> int:
        """Total degree in the base variables (-1 for zero)"""
        d = self.ring.d
        return max((sum(e[:d]) for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Exponent, FieldElem]]:
        return sorted(self.terms.items())

    def leading_term(self) -> Tuple[Exponent, FieldElem]:
        """Lex-largest term"""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def map_coeffs(self, fn, ring: Optional[PolyRing] = None) -> "Poly":
        return Poly(ring or self.ring, {e: fn(c) for e, c in self.terms.items()})

    def base_change(self, embedding: Embedding) -> "Poly":
        return self.map_coeffs(embedding, self.ring.over(embedding.target))

    def partial_derivative(self, i: int) -> "Poly":
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            new = list(e)
            new[i] -= 1
            terms[tuple(new)] = c * e[i]
        return Poly(self.ring, terms)

    def eval(self, point: Sequence) -> FieldElem:
        """Evaluate at a full point (one field value per variable)"""
        field = self.ring.field
        point = [field.element(v) for v in point]
        if len(point) != self.ring.nvars:
            raise RingMismatch(f"point has {len(point)} values, ring has {self.ring.nvars} variables")
        total = field.zero
        for e, c in self.terms.items():
            value = c
            for v, k in zip(point, e):
                if k:
                    value = value * v ** k
            total = total + value
        return total

    def substitute(self, values: Dict[int, "Poly"], ring: Optional[PolyRing] = None) -> "Poly":
        """Replace variable i by values[i]; remaining variables keep their position in `ring`"""
        ring = ring or self.ring
        result = ring.zero()
        cache: Dict[Tuple[int, int], Poly] = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            rest = [0] * ring.nvars
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i in values:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = term * cache[key]
                else:
                    rest[i] = k
            if any(rest):
                term = term * ring.monomial(rest)
            result = result + term
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(repr(c))
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c!r})*{mono}")
        return " + ".join(parts)


def check_same_ring(*polys: Poly) -> PolyRing:
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring != ring:
            raise RingMismatch(f"{f.ring} is not {ring}")
    return ring


def lift_poly(f: Poly, ring: PolyRing) -> Poly:
    """f viewed in a ring with more extra variables appended (same field, d and twist)"""
    pad = (0,) * (ring.nvars - f.ring.nvars)
    if pad and (ring.base() != f.ring.base() or ring.extra[:len(f.ring.extra)] != f.ring.extra):
        raise RingMismatch(f"{f.ring} does not embed in {ring}")
    return Poly(ring, {e + pad: c for e, c in f.terms.items()})


def drop_extra(f: Poly, ring: PolyRing) -> Poly:
    """Inverse of lift_poly on polynomials free of the dropped variables"""
    n = ring.nvars
    terms = {}
    for e, c in f.terms.items():
        if any(e[n:]):
            raise RingMismatch(f"{f} involves variables outside {ring}")
        terms[e[:n]] = c
    return Poly(ring, terms)


# ---------------------------------------------------------------------------
# Frobenius
# ---------------------------------------------------------------------------

def frobenius_pullback(f: Poly) -> Poly:
    """R' -> R, t'_i -> t_i^p; coefficients and extra variables unchanged"""
    ring = f.ring
    if not ring.twist:
        raise RingMismatch(f"frobenius_pullback expects a polynomial over R', got {ring}")
    p, d = ring.p, ring.d
    target = ring.unprimed()
    return Poly(target, {tuple(k * p if i < d else k for i, k in enumerate(e)): c
                         for e, c in f.terms.items()})


def frobenius_preimage(f: Poly) -> Poly:
    """Inverse of frobenius_pullback on its image; NotInImage otherwise"""
    ring = f.ring
    if ring.twist:
        raise RingMismatch(f"frobenius_preimage expects a polynomial over R, got {ring}")
    p, d = ring.p, ring.d
    terms = {}
    for e, c in f.terms.items():
        if any(k % p for k in e[:d]):
            raise NotInImage(f"term with exponent {e} is not a p-th power monomial")
        terms[tuple(k // p if i < d else k for i, k in enumerate(e))] = c
    return Poly(ring.primed(), terms)


def in_frobenius_image(f: Poly) -> bool:
    p, d = f.ring.p, f.ring.d
    return all(k % p == 0 for e in f.terms for k in e[:d])


def w_pullback(f: Poly) -> Poly:
    """w*: R -> R', c t^J -> c^p t'^J (frobenius_pullback after w_pullback is f -> f^p)"""
    ring = f.ring
    if ring.twist:
        raise RingMismatch(f"w_pullback expects a polynomial over R, got {ring}")
    p = ring.p
    return Poly(ring.primed(), {e: c ** p for e, c in f.terms.items()})


def sigma(f: Poly) -> Poly:
    """R^p -> R', c t^{pJ} -> c^{1/p} t'^J; sigma(g^p) is g with t renamed to t'"""
    ring = f.ring
    p, d = ring.p, ring.d
    terms = {}
    for e, c in f.terms.items():
        if any(k % p for k in e[:d]):
            raise NotInImage(f"sigma is defined on p-th powers, exponent {e} is not")
        terms[tuple(k // p if i < d else k for i, k in enumerate(e))] = frobenius_root(c)
    return Poly(ring.primed(), terms)


def frobenius_basis(p: int, d: int) -> List[Exponent]:
    """The exponents I in {0..p-1}^d in lexicographic order"""
    return [tuple(I) for I in product(range(p), repeat=d)]


def frobenius_decompose(f: Poly) -> Dict[Exponent, Poly]:
    """Write f = sum_J t^J * F*(g_J) with J in {0..p-1}^d; returns J -> g_J over R'"""
    ring = f.ring
    if ring.twist:
        raise RingMismatch(f"frobenius_decompose expects a polynomial over R, got {ring}")
    p, d = ring.p, ring.d
    target = ring.primed()
    parts: Dict[Exponent, Dict[Exponent, FieldElem]] = {}
    for e, c in f.terms.items():
        J = tuple(k % p for k in e[:d])
        quotient = tuple(k // p for k in e[:d]) + tuple(e[d:])
        parts.setdefault(J, {})[quotient] = c
    return {J: Poly(target, terms) for J, terms in parts.items()}


def multiplication_matrix(g: Poly) -> List[List[Poly]]:
    """Matrix over R' of multiplication by g on R with basis t^I, I in {0..p-1}^d"""
    ring = g.ring
    basis = frobenius_basis(ring.p, ring.d)
    target = ring.primed()
    index = {J: n for n, J in enumerate(basis)}
    matrix = [[target.zero() for _ in basis] for _ in basis]
    for col, I in enumerate(basis):
        shifted = g * ring.monomial(I + (0,) * len(ring.extra))
        for J, part in frobenius_decompose(shifted).items():
            matrix[index[J]][col] = part
    return matrix


def norm_map(g: Poly) -> Poly:
    """Norm of F: determinant over R' of multiplication by g on the rank p^d module R"""
    matrix = multiplication_matrix(g)
    return determinant(matrix, g.ring.primed())


# ---------------------------------------------------------------------------
# one-forms and the Cartier operator
# ---------------------------------------------------------------------------

class OneForm:
    """omega = sum_i f_i dt_i (or dt'_i over R')"""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolyRing, components: Sequence[Poly]):
        components = tuple(components)
        if len(components) != ring.d:
            raise ValueError(f"a one-form over {ring} needs {ring.d} components")
        for f in components:
            if f.ring != ring:
                raise RingMismatch(f"component over {f.ring}, form over {ring}")
        self.ring = ring
        self.components = components

    @classmethod
    def zero(cls, ring: PolyRing) -> "OneForm":
        return cls(ring, [ring.zero()] * ring.d)

    def __add__(self, other: "OneForm") -> "OneForm":
        if other.ring != self.ring:
            raise RingMismatch(f"cannot add forms over {self.ring} and {other.ring}")
        return OneForm(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "OneForm") -> "OneForm":
        if other.ring != self.ring:
            raise RingMismatch(f"cannot subtract forms over {self.ring} and {other.ring}")
        return OneForm(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return OneForm(self.ring, [-a for a in self.components])

    def scale(self, f) -> "OneForm":
        return OneForm(self.ring, [f * a for a in self.components])

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.ring == other.ring and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components)

    def degree(self) -> int:
        return max(f.degree() for f in self.components)

    def __repr__(self):
        mark = "'" if self.ring.twist else ""
        parts = []
        for i, f in enumerate(self.components):
            if f.is_zero():
                continue
            name = f"dt{mark}" if self.ring.d == 1 else f"dt{i + 1}{mark}"
            parts.append(f"({f!r}){name}")
        return " + ".join(parts) if parts else "0"


def exterior_derivative(f: Poly) -> OneForm:
    return OneForm(f.ring, [f.partial_derivative(i) for i in range(f.ring.d)])


def closedness_defects(omega: OneForm) -> Dict[Tuple[int, int], Poly]:
    """d(omega) coefficients: (i, j) -> df_j/dt_i - df_i/dt_j for i < j"""
    d = omega.ring.d
    out = {}
    for i in range(d):
        for j in range(i + 1, d):
            out[(i, j)] = omega.components[j].partial_derivative(i) - omega.components[i].partial_derivative(j)
    return out


def is_closed(omega: OneForm) -> bool:
    return all(v.is_zero() for v in closedness_defects(omega).values())


def _cartier_unchecked(omega: OneForm) -> OneForm:
    ring = omega.ring
    p, d = ring.p, ring.d
    target = ring.primed()
    components = []
    for i, f in enumerate(omega.components):
        terms = {}
        for e, c in f.terms.items():
            shifted = list(e[:d])
            shifted[i] -= p - 1
            if shifted[i] < 0 or any(k % p for k in shifted):
                continue
            terms[tuple(k // p for k in shifted) + tuple(e[d:])] = frobenius_root(c)
        components.append(Poly(target, terms))
    return OneForm(target, components)


def cartier_operator(omega: OneForm) -> OneForm:
    """C on closed forms: c t^{pJ + (p-1)e_i} dt_i -> c^{1/p} t'^J dt'_i, other monomials -> 0"""
    if omega.ring.twist:
        raise RingMismatch("the Cartier operator takes forms over R")
    if not is_closed(omega):
        raise NotClosed(f"{omega} is not closed")
    return _cartier_unchecked(omega)


def w_pullback_form(omega: OneForm) -> OneForm:
    return OneForm(omega.ring.primed(), [w_pullback(f) for f in omega.components])


def frobenius_pullback_form(omega: OneForm) -> OneForm:
    """Components pulled back along F (the F*-twisted coordinates used for p-curvature)"""
    return OneForm(omega.ring.unprimed(), [frobenius_pullback(f) for f in omega.components])


def monomials_upto(d: int, degree_bound: int) -> List[Exponent]:
    """All exponents in N^d of total degree <= degree_bound, graded then lex"""
    out = [e for e in product(range(degree_bound + 1), repeat=d) if sum(e) <= degree_bound]
    return sorted(out, key=lambda e: (sum(e), e))


def _form_coordinates(omega: OneForm, tag: str) -> Dict[tuple, int]:
    coords = {}
    for i, f in enumerate(omega.components):
        for e, c in f.terms.items():
            for k, v in enumerate(c.rep):
                if v:
                    coords[(tag, i, e, k)] = v
    return coords


def solve_w_minus_c(eta: OneForm, degree_bound: int) -> OneForm:
    """A closed omega over R with w*omega - C(omega) = eta, searched in degrees <= degree_bound"""
    ring_prime = eta.ring
    if not ring_prime.twist:
        raise RingMismatch("solve_w_minus_c expects a target form over R'")
    if not is_closed(eta):
        raise NotClosed(f"target {eta} is not closed")
    ring = ring_prime.unprimed()
    field = ring.field
    system = FpSystem(field.p)
    unknowns = []
    for i in range(ring.d):
        for e in monomials_upto(ring.d, degree_bound):
            for k in range(field.e):
                basis_elem = [0] * field.e
                basis_elem[k] = 1
                comps = [ring.zero()] * ring.d
                comps[i] = ring.monomial(e, basis_elem)
                unknowns.append(OneForm(ring, comps))
    for form in unknowns:
        image = w_pullback_form(form) - _cartier_unchecked(form)
        coords = _form_coordinates(image, "eq")
        for (i, j), defect in closedness_defects(form).items():
            for e, c in defect.terms.items():
                for k, v in enumerate(c.rep):
                    if v:
                        coords[("closed", (i, j), e, k)] = v
        system.add_column(coords)
    solution = system.solve(_form_coordinates(eta, "eq"))
    if solution is None:
        raise NoSolution(f"no closed form of degree <= {degree_bound} maps to {eta}; raise the bound")
    omega = OneForm.zero(ring)
    for coeff, form in zip(solution, unknowns):
        if coeff:
            omega = omega + form.scale(ring.const(coeff))
    logger.debug(f"solve_w_minus_c: {eta} <- {omega}")
    return omega


# ---------------------------------------------------------------------------
# random generation (numpy Generator)
# ---------------------------------------------------------------------------

def random_poly(ring: PolyRing, rng, max_degree: int, density: float = 0.5) -> Poly:
    """Random polynomial in the base variables of total degree <= max_degree"""
    terms = {}
    pad = (0,) * len(ring.extra)
    for e in monomials_upto(ring.d, max_degree):
        if rng.random() < density:
            terms[e + pad] = ring.field.random_element(rng)
    return Poly(ring, terms)


def random_closed_form(ring: PolyRing, rng, max_degree: int) -> OneForm:
    """dg plus a Cartier-visible part sum_i h_i^p t_i^{p-1} dt_i"""
    p = ring.p
    omega = exterior_derivative(random_poly(ring, rng, max_degree + 1))
    h_degree = max((max_degree - (p - 1)) // p, 0)
    comps = list(omega.components)
    for i in range(ring.d):
        h = random_poly(ring, rng, h_degree)
        comps[i] = comps[i] + (h ** p) * ring.var(i) ** (p - 1)
    return OneForm(ring, comps)
