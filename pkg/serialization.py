#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
JSON encoders and decoders for fields, polynomials, forms, Weyl elements,
connections, Higgs fields and the reports built on them.

Field elements are little-endian coefficient arrays in the power basis;
plain integers are accepted on input. Terms are emitted in sorted order so
that reports are byte-stable under json.dumps(sort_keys=True).
"""

import json
from typing import Any, Dict, List

from basefield import Field, FieldElem, make_field
from connection import Connection, HiggsField
from errors import SchemaError
from higgs import TwistedCharPoly, omega_names
from polyring import OneForm, Poly, PolyRing
from weyl import WeylElement

RING_TAGS = {"R": False, "Rprime": True}


def dumps(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def _require(obj: Dict, key: str, kind: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{kind} must be a JSON object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"{kind} is missing {key!r}")
    return obj[key]


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

def encode_field(field: Field) -> Dict[str, int]:
    return {"p": field.p, "e": field.e}


def decode_field(obj: Dict) -> Field:
    p = _require(obj, "p", "field")
    e = obj.get("e", 1)
    if not isinstance(p, int) or not isinstance(e, int):
        raise SchemaError("field needs integer p and e")
    return make_field(p, e)


def encode_elem(c: FieldElem) -> List[int]:
    return c.to_list()


def decode_elem(field: Field, value) -> FieldElem:
    if isinstance(value, bool) or not isinstance(value, (int, list)):
        raise SchemaError(f"field element must be an int or a coefficient array, got {value!r}")
    if isinstance(value, list) and (len(value) > field.e or not all(isinstance(v, int) for v in value)):
        raise SchemaError(f"{value!r} is not a coefficient array of {field}")
    return field.element(value)


# ---------------------------------------------------------------------------
# polynomials and forms
# ---------------------------------------------------------------------------

def ring_from_tag(tag: str, field: Field, d: int) -> PolyRing:
    if tag not in RING_TAGS:
        raise SchemaError(f"ring must be 'R' or 'Rprime', got {tag!r}")
    return PolyRing(field, d, RING_TAGS[tag])


def encode_poly(f: Poly) -> Dict[str, Any]:
    return {
        "ring": f.ring.tag,
        "terms": [{"exp": list(e), "coeff": encode_elem(c)} for e, c in f.sorted_terms()],
    }


def decode_poly(obj, ring: PolyRing) -> Poly:
    """A Poly object, or a bare integer constant"""
    if isinstance(obj, int) and not isinstance(obj, bool):
        return ring.const(obj)
    tag = obj.get("ring", ring.tag) if isinstance(obj, dict) else None
    if tag != ring.tag:
        raise SchemaError(f"polynomial over {tag!r} where {ring.tag!r} is expected")
    terms = {}
    for term in _require(obj, "terms", "polynomial"):
        exp = _require(term, "exp", "term")
        if not isinstance(exp, list) or len(exp) != ring.nvars or any(
                not isinstance(k, int) or k < 0 for k in exp):
            raise SchemaError(f"exponent {exp!r} does not fit {ring}")
        c = decode_elem(ring.field, _require(term, "coeff", "term"))
        key = tuple(exp)
        terms[key] = terms.get(key, ring.field.zero) + c
    return Poly(ring, {e: c for e, c in terms.items() if not c.is_zero()})


def encode_form(omega: OneForm) -> List[Dict[str, Any]]:
    return [encode_poly(f) for f in omega.components]


def decode_form(obj, ring: PolyRing) -> OneForm:
    if not isinstance(obj, list) or len(obj) != ring.d:
        raise SchemaError(f"a one-form over {ring} is an array of {ring.d} polynomials")
    return OneForm(ring, [decode_poly(f, ring) for f in obj])


def encode_matrix(M) -> List[List[Dict[str, Any]]]:
    return [[encode_poly(f) for f in row] for row in M]


def decode_matrix(obj, ring: PolyRing, rank: int):
    if not isinstance(obj, list) or len(obj) != rank or any(
            not isinstance(row, list) or len(row) != rank for row in obj):
        raise SchemaError(f"expected a {rank} x {rank} row-major matrix")
    return [[decode_poly(f, ring) for f in row] for row in obj]


# ---------------------------------------------------------------------------
# Weyl elements
# ---------------------------------------------------------------------------

def encode_weyl(a: WeylElement) -> Dict[str, Any]:
    return {
        "lambda": encode_elem(a.lam),
        "terms": [{"t_exp": list(I), "d_exp": list(J), "coeff": encode_elem(c)}
                  for (I, J), c in a.sorted_terms()],
    }


def decode_weyl(obj, field: Field, d: int) -> WeylElement:
    lam = decode_elem(field, obj.get("lambda", 1) if isinstance(obj, dict) else None)
    terms = {}
    for term in _require(obj, "terms", "Weyl element"):
        I = _require(term, "t_exp", "Weyl term")
        J = _require(term, "d_exp", "Weyl term")
        if len(I) != d or len(J) != d:
            raise SchemaError(f"Weyl exponents must have length {d}")
        key = (tuple(I), tuple(J))
        terms[key] = terms.get(key, field.zero) + decode_elem(field, _require(term, "coeff", "Weyl term"))
    return WeylElement(lam, d, {k: c for k, c in terms.items() if not c.is_zero()})


# ---------------------------------------------------------------------------
# connections and Higgs fields
# ---------------------------------------------------------------------------

def encode_connection(conn: Connection) -> Dict[str, Any]:
    return {
        "field": encode_field(conn.ring.field),
        "lambda": encode_elem(conn.lam),
        "rank": conn.rank,
        "A": [encode_matrix(A) for A in conn.A],
    }


def decode_connection(obj, field: Field, d: int) -> Connection:
    rank = _require(obj, "rank", "connection")
    ring = PolyRing(field, d)
    matrices = _require(obj, "A", "connection")
    if not isinstance(matrices, list) or len(matrices) != d:
        raise SchemaError(f"connection needs {d} matrices A_1..A_{d}")
    lam = decode_elem(field, obj.get("lambda", 1))
    return Connection(ring, lam, [decode_matrix(A, ring, rank) for A in matrices])


def encode_higgs(theta: HiggsField) -> Dict[str, Any]:
    return {
        "field": encode_field(theta.ring.field),
        "ring": theta.ring.tag,
        "rank": theta.rank,
        "basis_tag": theta.basis_tag,
        "theta": [encode_matrix(th) for th in theta.thetas],
    }


def decode_higgs(obj, field: Field, d: int, default_ring: str = "Rprime") -> HiggsField:
    rank = _require(obj, "rank", "Higgs field")
    ring = ring_from_tag(obj.get("ring", default_ring), field, d)
    matrices = _require(obj, "theta", "Higgs field")
    if not isinstance(matrices, list) or len(matrices) != d:
        raise SchemaError(f"Higgs field needs {d} matrices theta_1..theta_{d}")
    return HiggsField(ring, [decode_matrix(th, ring, rank) for th in matrices], obj.get("basis_tag", "K"))


# ---------------------------------------------------------------------------
# characteristic polynomials and spectral ideals
# ---------------------------------------------------------------------------

def _split_terms(f: Poly, d: int, names=("exp", "omega")) -> List[Dict[str, Any]]:
    out = []
    for e, c in f.sorted_terms():
        term = {names[0]: list(e[:d]), names[1]: list(e[d:2 * d]), "coeff": encode_elem(c)}
        if len(e) > 2 * d:
            term["T"] = e[2 * d]
        out.append(term)
    return out


def encode_char_poly(chi) -> Dict[str, Any]:
    d = chi.d
    return {
        "ring": chi.base.tag,
        "rank": chi.rank,
        "constant": chi.is_constant(),
        "a": [{"m": m, "terms": _split_terms(chi.a(m), d)} for m in range(1, chi.rank + 1)],
        "terms": _split_terms(chi.poly(), d),
    }


def decode_char_poly(obj, field: Field, d: int) -> TwistedCharPoly:
    """{"ring", "rank", "a": [{"m", "terms": [{"exp", "omega", "coeff"}]}]}; missing a_m are zero"""
    base = ring_from_tag(obj.get("ring", "R") if isinstance(obj, dict) else None, field, d)
    rank = _require(obj, "rank", "characteristic polynomial")
    if not isinstance(rank, int) or rank < 1:
        raise SchemaError("rank must be a positive integer")
    ring = base.with_extra(omega_names(d))
    coefficients = [ring.zero() for _ in range(rank)]
    for entry in obj.get("a", []):
        m = _require(entry, "m", "coefficient")
        if not isinstance(m, int) or not 1 <= m <= rank:
            raise SchemaError(f"coefficient index {m!r} outside 1..{rank}")
        terms = {}
        for term in _require(entry, "terms", "coefficient"):
            exp = list(_require(term, "exp", "term")) + list(_require(term, "omega", "term"))
            if len(exp) != 2 * d:
                raise SchemaError(f"exp and omega must both have length {d}")
            key = tuple(exp)
            terms[key] = terms.get(key, field.zero) + decode_elem(field, _require(term, "coeff", "term"))
        coefficients[m - 1] = Poly(ring, {e: c for e, c in terms.items() if not c.is_zero()})
    chi = TwistedCharPoly(base, rank, coefficients)
    if not chi.is_homogeneous():
        raise SchemaError("a_m must be homogeneous of degree m in omega")
    return chi


def encode_spectral_ideal(ideal) -> Dict[str, Any]:
    d = ideal.d
    return {
        "ring": ideal.ring.tag,
        "count": len(ideal),
        "generators": [{"omega": list(I), "terms": _split_terms(ideal.generators[I], d, ("exp", "d_exp"))}
                       for I in ideal.keys()],
        "enlarged": [_split_terms(g, d, ("exp", "d_exp")) for g in ideal.enlarged_generators],
    }


def encode_descent_report(report) -> Dict[str, Any]:
    return {
        "chi": encode_char_poly(report.chi),
        "chi2prime": encode_char_poly(report.chi2prime),
        "chiprime": encode_char_poly(report.chiprime),
        "identity_i": report.identity_i,
        "identity_ii": report.identity_ii,
    }


# ---------------------------------------------------------------------------
# Azumaya / correspondence reports
# ---------------------------------------------------------------------------

def encode_splitting(module) -> Dict[str, Any]:
    return {
        "section": [encode_poly(v) for v in module.section.values],
        "omega": encode_form(module.omega),
        "rank": module.carrier.rank,
        "basis": module.carrier.basis_names(),
        "T": [encode_matrix(M) for M in module.T],
        "D": [encode_matrix(M) for M in module.D],
        "end_dimension": module.end_dimension,
        "surjective": module.surjective,
    }


def encode_decomposition(dec) -> Dict[str, Any]:
    return {
        "field": encode_field(dec.field),
        "roots": [[encode_elem(c) for c in roots] for roots in dec.roots],
        "components": [{"root": [encode_elem(c) for c in comp.root],
                        "rank": comp.rank,
                        "projector": encode_matrix(comp.projector)} for comp in dec.components],
    }


def encode_isomorphism(result) -> Dict[str, Any]:
    return {
        "verdict": result.verdict,
        "degree_bound": result.degree_bound,
        "kernel_dimension": result.kernel_dimension,
        "intertwiner": encode_matrix(result.intertwiner) if result.found else None,
    }
