#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command line entry point.

    python cli.py --input problem.json [--seed N] [--degree-bound N] [--jobs N] [--json]

A problem file is a JSON object with a field ({"p", "e"} at the top
level or under "field"), the dimension d, a mode and a mode-specific
payload. The report goes to stdout; logs go to stderr.

Exit codes: 0 success, 1 bad input, 2 a verified identity failed.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, Tuple

import config
from azcorr import (SectionData, cartier_direct, correspondence_roundtrip, module_isomorphic, spectral_decompose,
                    splitting_over_section)
from basefield import Field
from connection import p_curvature, rank_one_agreement
from errors import CharPError, IdentityFailure, InputError, SchemaError
from frobdescent import verify_descent
from higgs import (annihilation_check, annihilator_degrees, cayley_hamilton_check, enlarged_generators_monic,
                   hitchin_point, spectral_flatness_guaranteed, spectral_ideal, twisted_char_poly)
from polyring import PolyRing, cartier_operator, solve_w_minus_c, w_pullback_form
from selftest import run_selftest
from serialization import (decode_char_poly, decode_connection, decode_elem, decode_field, decode_form,
                           decode_higgs, decode_poly, dumps, encode_char_poly, encode_connection,
                           encode_decomposition, encode_descent_report, encode_form, encode_higgs,
                           encode_isomorphism, encode_spectral_ideal, encode_splitting)
from weyl import fiber_matrix_rep

logger = logging.getLogger("charp-cli")

MODES = ("pcurv", "charpoly", "spectral", "descent", "azumaya", "cartier", "correspond", "selftest")
RANDOMIZED_MODES = ("selftest",)


class Problem:
    """A parsed problem file"""

    def __init__(self, field: Field, d: int, mode: str, payload: Dict[str, Any], degree_bound: int, seed):
        self.field = field
        self.d = d
        self.mode = mode
        self.payload = payload
        self.degree_bound = degree_bound
        self.seed = seed

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, self.d)

    @property
    def ring_prime(self) -> PolyRing:
        return PolyRing(self.field, self.d, twist=True)


def parse_problem(obj: Dict[str, Any], seed=None, degree_bound=None) -> Problem:
    """Validate a problem object; flags override the file's seed and degree bound"""
    if not isinstance(obj, dict):
        raise SchemaError("a problem file must be a JSON object")
    mode = obj.get("mode")
    if mode not in MODES:
        raise SchemaError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
    field = decode_field(obj.get("field", obj))
    d = obj.get("d", 1)
    if not isinstance(d, int) or d < 1:
        raise SchemaError(f"d must be a positive integer, got {d!r}")
    payload = obj.get("payload", {})
    if not isinstance(payload, dict):
        raise SchemaError("payload must be a JSON object")
    bound = degree_bound if degree_bound is not None else obj.get("degree_bound", config.DEGREE_BOUND)
    if not isinstance(bound, int) or bound < 0:
        raise SchemaError(f"degree_bound must be a non-negative integer, got {bound!r}")
    seed = seed if seed is not None else obj.get("seed")
    if mode in RANDOMIZED_MODES and seed is None:
        raise SchemaError(f"mode {mode} needs a seed")
    return Problem(field, d, mode, payload, bound, seed)


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

def _pick(payload: Dict[str, Any], *keys: str) -> str:
    for key in keys:
        if key in payload:
            return key
    raise SchemaError(f"payload needs one of {', '.join(keys)}")


def _require_payload(problem: Problem, key: str):
    if key not in problem.payload:
        raise SchemaError(f"payload needs {key!r}")
    return problem.payload[key]


def run_pcurv(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "connection", "form")
    if key == "form":
        omega = decode_form(problem.payload["form"], problem.ring)
        result = rank_one_agreement(omega)
        if not result["agree"]:
            raise IdentityFailure(f"rank-one p-curvature paths disagree on {omega}")
        return {
            "operator": encode_form(result["operator"]),
            "formula": encode_form(result["formula"]),
            "cartier": encode_form(result["cartier"]),
            "agree": result["agree"],
        }
    conn = decode_connection(problem.payload["connection"], problem.field, problem.d)
    return {"p_curvature": encode_higgs(p_curvature(conn))}


def run_charpoly(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "higgs", "connection")
    if key == "connection":
        theta = p_curvature(decode_connection(problem.payload["connection"], problem.field, problem.d))
    else:
        theta = decode_higgs(problem.payload["higgs"], problem.field, problem.d, default_ring="R")
    point = hitchin_point(theta)
    return {
        "chi": encode_char_poly(point.chi),
        "constant": point.constant,
        "cayley_hamilton": cayley_hamilton_check(theta),
        "annihilator_degrees": annihilator_degrees(theta),
    }


def run_spectral(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "higgs", "char_poly")
    report: Dict[str, Any] = {}
    if key == "higgs":
        theta = decode_higgs(problem.payload["higgs"], problem.field, problem.d, default_ring="R")
        chi = twisted_char_poly(theta)
        ideal = spectral_ideal(chi)
        report["annihilation"] = annihilation_check(theta, ideal)
    else:
        chi = decode_char_poly(problem.payload["char_poly"], problem.field, problem.d)
        ideal = spectral_ideal(chi)
    report.update({
        "chi": encode_char_poly(chi),
        "ideal": encode_spectral_ideal(ideal),
        "enlarged_monic": enlarged_generators_monic(ideal),
        "flatness_guaranteed": spectral_flatness_guaranteed(chi.rank, chi.d),
    })
    return report


def run_descent(problem: Problem) -> Dict[str, Any]:
    conn = decode_connection(_require_payload(problem, "connection"), problem.field, problem.d)
    report = verify_descent(conn)
    return encode_descent_report(report)


def run_azumaya(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "section", "point")
    if key == "point":
        point = problem.payload["point"]
        if not isinstance(point, dict) or "a" not in point or "b" not in point:
            raise SchemaError("point needs coordinate arrays a and b")
        a = [decode_elem(problem.field, v) for v in point["a"]]
        b = [decode_elem(problem.field, v) for v in point["b"]]
        if len(a) != problem.d or len(b) != problem.d:
            raise SchemaError(f"a and b need {problem.d} coordinates each")
        rep = fiber_matrix_rep(a, b, problem.field)
        return {"size": rep.size, "image_dimension": rep.image_dimension, "is_isomorphism": rep.is_isomorphism}
    values = problem.payload["section"]
    if not isinstance(values, list):
        raise SchemaError("section is an array of d polynomials over R'")
    section = SectionData(problem.ring_prime, [decode_poly(v, problem.ring_prime) for v in values])
    return encode_splitting(splitting_over_section(section, problem.degree_bound))


def run_cartier(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "form", "eta")
    if key == "eta":
        eta = decode_form(problem.payload["eta"], problem.ring_prime)
        return {"omega": encode_form(solve_w_minus_c(eta, problem.degree_bound))}
    omega = decode_form(problem.payload["form"], problem.ring)
    c = cartier_operator(omega)
    return {"cartier": encode_form(c), "w_minus_c": encode_form(w_pullback_form(omega) - c)}


def run_correspond(problem: Problem) -> Dict[str, Any]:
    key = _pick(problem.payload, "higgs", "connection", "isomorphic")
    if key == "isomorphic":
        pair = problem.payload["isomorphic"]
        if not isinstance(pair, dict) or "X" not in pair or "Y" not in pair:
            raise SchemaError("isomorphic needs two Higgs fields X and Y")
        X = decode_higgs(pair["X"], problem.field, problem.d)
        Y = decode_higgs(pair["Y"], problem.field, problem.d)
        return {"isomorphism": encode_isomorphism(module_isomorphic(X.thetas, Y.thetas, problem.degree_bound))}
    if key == "connection":
        conn = decode_connection(problem.payload["connection"], problem.field, problem.d)
        theta = cartier_direct(conn, problem.degree_bound, problem.payload.get("method", "kernel"),
                               verify_roundtrip=True)
        return {"higgs": encode_higgs(theta)}
    theta = decode_higgs(problem.payload["higgs"], problem.field, problem.d)
    report = correspondence_roundtrip(theta, problem.degree_bound)
    return {
        "decomposition": encode_decomposition(spectral_decompose(theta)),
        "connection": encode_connection(report.connection),
        "flat": report.flat,
        "p_curvature_ok": report.p_curvature_ok,
        "recovered": encode_higgs(report.recovered),
        "isomorphism": encode_isomorphism(report.isomorphism),
    }


def run_selftest_mode(problem: Problem, jobs=None) -> Dict[str, Any]:
    scale = problem.payload.get("scale")
    only = problem.payload.get("criteria")
    return run_selftest(problem.seed, scale, jobs, only)


HANDLERS: Dict[str, Callable[[Problem], Dict[str, Any]]] = {
    "pcurv": run_pcurv,
    "charpoly": run_charpoly,
    "spectral": run_spectral,
    "descent": run_descent,
    "azumaya": run_azumaya,
    "cartier": run_cartier,
    "correspond": run_correspond,
}


def run(obj: Dict[str, Any], seed=None, degree_bound=None, jobs=None) -> Tuple[Dict[str, Any], int]:
    """Report and exit code for a problem object"""
    try:
        problem = parse_problem(obj, seed, degree_bound)
        if problem.mode == "selftest":
            result = run_selftest_mode(problem, jobs)
            code = 0 if result["ok"] else 2
        else:
            result = HANDLERS[problem.mode](problem)
            code = 0
        report = {"mode": problem.mode, "field": {"p": problem.field.p, "e": problem.field.e}, "d": problem.d}
        report.update(result)
        return report, code
    except CharPError as exc:
        if isinstance(exc, InputError):
            logger.warning(f"input error: {exc}")
        else:
            logger.error(f"identity {exc.identity} failed: {exc}")
        return exc.to_dict(), exc.exit_code
    except (ValueError, KeyError, TypeError) as exc:
        logger.warning(f"malformed problem: {exc}")
        return SchemaError(str(exc)).to_dict(), 1
    except Exception as exc:
        logger.error(f"unexpected error: {exc}", exc_info=True)
        return {"error": type(exc).__name__, "identity": None, "message": str(exc)}, 2


def _summary(report: Dict[str, Any], code: int) -> str:
    if "error" in report:
        return f"{report['error']}: {report['message']}"
    lines = [f"mode: {report['mode']}  field: F_{report['field']['p']}^{report['field']['e']}  d: {report['d']}"]
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (bool, int)) and key not in ("d",):
            lines.append(f"  {key}: {value}")
    lines.append(f"exit code: {code}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description='Exact char-p Simpson correspondence toolkit')
    parser.add_argument('--input', type=str, required=True, help='Problem file (JSON); "-" reads stdin')
    parser.add_argument('--seed', type=int, default=None, help='Seed for randomized modes (overrides the file)')
    parser.add_argument('--degree-bound', type=int, default=None, help='Degree bound for linear searches')
    parser.add_argument('--jobs', type=int, default=None, help='Worker processes for selftest sweeps')
    parser.add_argument('--json', action='store_true', help='Print the full JSON report')
    parser.add_argument('--log-level', type=str, default=None, help='Logging level (default from LOG_LEVEL)')
    args = parser.parse_args(argv)

    config.setup_logging(args.log_level)
    try:
        if args.input == "-":
            obj = json.load(sys.stdin)
        else:
            with open(args.input, "r", encoding="utf-8") as f:
                obj = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        report, code = SchemaError(f"cannot read {args.input}: {exc}").to_dict(), 1
    else:
        report, code = run(obj, args.seed, args.degree_bound, args.jobs)

    if args.json:
        print(dumps(report))
    else:
        print(_summary(report, code))
    return code


if __name__ == "__main__":
    sys.exit(main())
