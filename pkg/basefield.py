#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exact arithmetic in F_p and F_{p^e}.

A Field is F_p[x]/(modulus) with the lexicographically least monic
irreducible modulus of the requested degree. Elements are immutable and
hashable. Univariate polynomials over a field are plain lists of FieldElem,
little-endian, trimmed (the empty list is the zero polynomial).
"""

import logging
from functools import lru_cache
from itertools import product
from math import lcm
from typing import List, Optional, Sequence, Tuple

import config
from errors import BadDegree, NotPrime, TooLarge, ZeroPolynomial

logger = logging.getLogger("charp-basefield")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# integer-coefficient helpers over F_p (used only to pick the modulus)
# ---------------------------------------------------------------------------

def _int_poly_mod(a: List[int], b: List[int], p: int) -> List[int]:
    """Remainder of a by monic b over F_p (little-endian int lists)"""
    a = [c % p for c in a]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        shift = len(a) - 1 - db
        lead = a[-1]
        for k in range(db + 1):
            a[shift + k] = (a[shift + k] - lead * b[k]) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible_int(poly: List[int], p: int) -> bool:
    """Brute-force factor search: no monic factor of degree 1..deg/2"""
    deg = len(poly) - 1
    for k in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=k):
            divisor = list(tail) + [1]
            if not _int_poly_mod(poly, divisor, p):
                return False
    return True


@lru_cache(maxsize=None)
def lex_least_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """Lex-least monic irreducible of degree e, coefficients compared from x^{e-1} down"""
    if e == 1:
        return (0, 1)
    for high_to_low in product(range(p), repeat=e):
        poly = list(reversed(high_to_low)) + [1]
        if poly[0] == 0:
            continue
        if _is_irreducible_int(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class Field:
    """F_{p^e} = F_p[x]/(modulus)"""

    __slots__ = ("p", "e", "modulus", "q", "_zero", "_one")

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.modulus = tuple(int(c) % p for c in modulus)
        self.q = p ** e
        self._zero = FieldElem(self, (0,) * e)
        self._one = FieldElem(self, (1,) + (0,) * (e - 1))

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.e}"

    @property
    def zero(self) -> "FieldElem":
        return self._zero

    @property
    def one(self) -> "FieldElem":
        return self._one

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __call__(self, value) -> "FieldElem":
        return self.element(value)

    def element(self, value) -> "FieldElem":
        """Coerce an int, a coefficient sequence or a FieldElem of this field"""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise ValueError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            rep = [value % self.p] + [0] * (self.e - 1)
            return FieldElem(self, tuple(rep))
        coeffs = [int(c) for c in value]
        if len(coeffs) > self.e:
            coeffs = _int_poly_mod(coeffs, list(self.modulus), self.p)
        coeffs = [c % self.p for c in coeffs] + [0] * (self.e - len(coeffs))
        return FieldElem(self, tuple(coeffs))

    def generator(self) -> "FieldElem":
        """The class of x in F_p[x]/(modulus); 0 for prime fields, whose modulus is x"""
        if self.e == 1:
            return self.element(-self.modulus[0])
        return FieldElem(self, (0, 1) + (0,) * (self.e - 2))

    def from_index(self, index: int) -> "FieldElem":
        digits = []
        for _ in range(self.e):
            digits.append(index % self.p)
            index //= self.p
        return FieldElem(self, tuple(digits))

    def elements(self):
        """All q elements in index order"""
        for i in range(self.q):
            yield self.from_index(i)

    def nonzero_elements(self):
        for i in range(1, self.q):
            yield self.from_index(i)

    def random_element(self, rng) -> "FieldElem":
        return self.from_index(int(rng.integers(0, self.q)))


class FieldElem:
    """Element of a Field, stored as its canonical reduced representative"""

    __slots__ = ("field", "rep")

    def __init__(self, field: Field, rep: Tuple[int, ...]):
        self.field = field
        self.rep = rep

    def _coerce(self, other) -> Optional["FieldElem"]:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise ValueError(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.rep, other.rep)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.rep))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self.rep, other.rep)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        field = self.field
        p, e = field.p, field.e
        if e == 1:
            return FieldElem(field, ((self.rep[0] * other.rep[0]) % p,))
        prod = [0] * (2 * e - 1)
        for i, a in enumerate(self.rep):
            if a:
                for j, b in enumerate(other.rep):
                    if b:
                        prod[i + j] += a * b
        mod = field.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                shift = k - e
                for j in range(e):
                    prod[shift + j] -= c * mod[j]
            prod[k] = 0
        return FieldElem(field, tuple(c % p for c in prod[:e]))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def is_zero(self) -> bool:
        return not any(self.rep)

    def is_one(self) -> bool:
        return self.rep[0] == 1 and not any(self.rep[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, int):
            return self.rep == self.field.element(other).rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def index(self) -> int:
        p = self.field.p
        return sum(c * p ** k for k, c in enumerate(self.rep))

    def __lt__(self, other):
        return self.index() < other.index()

    def to_list(self) -> List[int]:
        return list(self.rep)

    def __repr__(self):
        if self.field.e == 1:
            return str(self.rep[0])
        parts = []
        for k, c in enumerate(self.rep):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts) if parts else "0"


def make_field(p: int, e: int = 1) -> Field:
    """F_{p^e} with the lex-least monic irreducible modulus"""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise BadDegree(f"extension degree {e} must be at least 1")
    if p ** e > config.MAX_FIELD_SIZE:
        raise TooLarge(f"F_{p}^{e} has {p ** e} elements, above the guard {config.MAX_FIELD_SIZE}")
    return _make_field_cached(p, e)


@lru_cache(maxsize=None)
def _make_field_cached(p: int, e: int) -> Field:
    return Field(p, e, lex_least_irreducible(p, e))


def frobenius_root(a: FieldElem) -> FieldElem:
    """The unique b with b^p = a (Frobenius is bijective on a finite field)"""
    field = a.field
    return a ** (field.p ** (field.e - 1))


# ---------------------------------------------------------------------------
# embeddings between fields
# ---------------------------------------------------------------------------

class Embedding:
    """Field homomorphism source -> target fixed by the image of the generator"""

    def __init__(self, source: Field, target: Field, generator_image: Optional[FieldElem] = None):
        self.source = source
        self.target = target
        if generator_image is None:
            if source != target:
                raise ValueError("non-identity embedding needs a generator image")
            generator_image = target.generator()
        self.generator_image = generator_image
        self._powers = [target.one]
        for _ in range(1, source.e):
            self._powers.append(self._powers[-1] * generator_image)
        self._inverse = None

    @property
    def is_identity(self) -> bool:
        return self.source == self.target

    def __call__(self, a: FieldElem) -> FieldElem:
        if self.is_identity:
            return a
        result = self.target.zero
        for c, power in zip(a.rep, self._powers):
            if c:
                result = result + power * c
        return result

    def preimage(self, b: FieldElem) -> Optional[FieldElem]:
        """Inverse image of b, or None when b is not in the embedded subfield"""
        if self.is_identity:
            return b
        if self._inverse is None:
            self._inverse = {self(a): a for a in self.source.elements()}
        return self._inverse.get(b)

    def then(self, other: "Embedding") -> "Embedding":
        if self.target != other.source:
            raise ValueError("embeddings do not compose")
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        return Embedding(self.source, other.target, other(self.generator_image))


def identity_embedding(field: Field) -> Embedding:
    return Embedding(field, field)


def embed_into_extension(field: Field, m: int) -> Embedding:
    """Embedding of F_q into F_{q^m}, sending x to the least root of the modulus"""
    big = make_field(field.p, field.e * m)
    if m == 1:
        return identity_embedding(field)
    if field.e == 1:
        return Embedding(field, big, big.element(-field.modulus[0]))
    modulus = [big.element(c) for c in field.modulus]
    for candidate in big.elements():
        if upoly_eval(modulus, candidate).is_zero():
            return Embedding(field, big, candidate)
    raise AssertionError(f"{field} does not embed into {big}")


# ---------------------------------------------------------------------------
# univariate polynomials over a field: little-endian lists of FieldElem
# ---------------------------------------------------------------------------

def upoly_trim(f: List[FieldElem]) -> List[FieldElem]:
    f = list(f)
    while f and f[-1].is_zero():
        f.pop()
    return f


def upoly_add(f, g):
    n = max(len(f), len(g))
    out = []
    for k in range(n):
        if k < len(f) and k < len(g):
            out.append(f[k] + g[k])
        elif k < len(f):
            out.append(f[k])
        else:
            out.append(g[k])
    return upoly_trim(out)


def upoly_sub(f, g):
    return upoly_add(f, [-c for c in g])


def upoly_mul(f, g):
    if not f or not g:
        return []
    field = f[0].field
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return upoly_trim(out)


def upoly_divmod(f, g):
    g = upoly_trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    f = upoly_trim(f)
    field = g[0].field
    inv_lead = g[-1].inverse()
    quotient = [field.zero] * max(len(f) - len(g) + 1, 0)
    rem = list(f)
    while rem and len(rem) >= len(g):
        coeff = rem[-1] * inv_lead
        shift = len(rem) - len(g)
        quotient[shift] = coeff
        for k, c in enumerate(g):
            rem[shift + k] = rem[shift + k] - coeff * c
        rem = upoly_trim(rem)
    return upoly_trim(quotient), rem


def upoly_gcd(f, g):
    """Monic gcd"""
    f, g = upoly_trim(f), upoly_trim(g)
    while g:
        f, g = g, upoly_divmod(f, g)[1]
    if not f:
        return []
    inv = f[-1].inverse()
    return [c * inv for c in f]


def upoly_eval(f, x: FieldElem) -> FieldElem:
    result = x.field.zero
    for c in reversed(f):
        result = result * x + c
    return result


def upoly_powmod(base, n: int, modulus):
    field = modulus[0].field
    result = [field.one]
    base = upoly_divmod(base, modulus)[1]
    while n:
        if n & 1:
            result = upoly_divmod(upoly_mul(result, base), modulus)[1]
        base = upoly_divmod(upoly_mul(base, base), modulus)[1]
        n >>= 1
    return result


def upoly_from_roots(roots: List[Tuple[FieldElem, int]], lead: FieldElem) -> List[FieldElem]:
    field = lead.field
    f = [lead]
    for root, mult in roots:
        for _ in range(mult):
            f = upoly_mul(f, [-root, field.one])
    return f


def irreducible_factor_degrees(f: List[FieldElem]) -> List[int]:
    """Distinct degrees of the irreducible factors of f (distinct-degree splitting)"""
    f = upoly_trim(f)
    if not f:
        raise ZeroPolynomial("zero polynomial has no factorization")
    field = f[0].field
    degrees = []
    remaining = f
    x = [field.zero, field.one]
    k = 0
    while len(remaining) > 1:
        k += 1
        h = upoly_sub(upoly_powmod(x, field.q ** k, remaining), x)
        g = upoly_gcd(remaining, h)
        if len(g) > 1:
            degrees.append(k)
            while len(g) > 1:
                remaining = upoly_divmod(remaining, g)[0]
                g = upoly_gcd(remaining, g)
    return degrees


class RootResult:
    """Roots with multiplicities over `field`, reached from the input field by `embedding`"""

    def __init__(self, roots, field: Field, embedding: Embedding, cofactor):
        self.roots = roots
        self.field = field
        self.embedding = embedding
        self.cofactor = cofactor

    @property
    def extended(self) -> bool:
        return not self.embedding.is_identity

    def __repr__(self):
        return f"RootResult(roots={self.roots}, field={self.field})"


def _roots_by_search(f, field: Field):
    roots = []
    remaining = f
    for c in field.elements():
        mult = 0
        while len(remaining) > 1 and upoly_eval(remaining, c).is_zero():
            remaining = upoly_divmod(remaining, [-c, field.one])[0]
            mult += 1
        if mult:
            roots.append((c, mult))
        if len(remaining) <= 1:
            break
    return roots, remaining


def find_roots(f: List[FieldElem], field: Optional[Field] = None) -> RootResult:
    """Roots of f with multiplicities, over a splitting extension when needed"""
    f = upoly_trim(f)
    if not f:
        raise ZeroPolynomial("find_roots of the zero polynomial")
    field = field or f[0].field
    if len(f) == 1:
        return RootResult([], field, identity_embedding(field), f)
    degrees = irreducible_factor_degrees(f)
    m = lcm(*degrees) if degrees else 1
    embedding = embed_into_extension(field, m)
    target = embedding.target
    if m > 1:
        logger.debug(f"splitting {len(f) - 1}-degree polynomial over {target}")
    mapped = [embedding(c) for c in f]
    roots, cofactor = _roots_by_search(mapped, target)
    return RootResult(roots, target, embedding, cofactor)
