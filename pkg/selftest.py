#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Seeded property sweeps over every identity the toolkit relies on.

Each (criterion, configuration) pair is one task. Tasks receive child seeds
from numpy.random.SeedSequence(seed).spawn(n) in a fixed order, so the
report does not depend on the number of workers. Failures name the
identity that broke.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

import config
from azcorr import SectionData, correspondence_roundtrip, random_multiplicity_free_higgs, splitting_over_section
from basefield import make_field
from connection import Connection, HiggsField, rank_one_agreement
from errors import CharPError
from frobdescent import verify_descent
from higgs import annihilation_check, cayley_hamilton_check, s_count, spectral_ideal, twisted_char_poly
from linalg import mat_add, mat_scalar, mat_scale
from polyring import (OneForm, PolyRing, exterior_derivative, frobenius_pullback, norm_map, random_closed_form,
                      random_poly)
from weyl import WeylElement, center_basis_upto, center_membership, check_identity, fiber_matrix_rep, random_weyl

logger = logging.getLogger("charp-selftest")


def _count(base: int, scale: float) -> int:
    return max(1, int(round(base * scale)))


def _failure(case: int, identity: str, message: str) -> Dict[str, Any]:
    return {"case": case, "identity": identity, "message": message}


def _guarded(case: int, fn, failures: List[Dict[str, Any]]):
    """Run one case; CharPError becomes a named failure"""
    try:
        fn()
    except CharPError as exc:
        failures.append(_failure(case, exc.identity or type(exc).__name__, str(exc)))


# ---------------------------------------------------------------------------
# one function per criterion: (cfg, seed) -> (cases, failures)
# ---------------------------------------------------------------------------

def weyl_kernel(cfg: Dict[str, Any], seed: int):
    p, d, n = cfg["p"], cfg["d"], cfg["count"]
    rng = np.random.default_rng(seed)
    field = make_field(p)
    failures: List[Dict[str, Any]] = []
    for case in range(n):
        lam = field.random_element(rng)
        a, b, c = (random_weyl(lam, d, rng, cfg["degree"]) for _ in range(3))

        def one_case():
            one = WeylElement.one(lam, d)
            if (a * b) * c != a * (b * c):
                failures.append(_failure(case, "associativity", f"({a})({b})({c})"))
            if one * a != a or a * one != a:
                failures.append(_failure(case, "unitality", repr(a)))
            if not check_identity("jacobson", a, b):
                failures.append(_failure(case, "Jacobson", f"x = {a}, y = {b}"))

        _guarded(case, one_case, failures)
    return n, failures


def center(cfg: Dict[str, Any], seed: int):
    p, d = cfg["p"], cfg["d"]
    N = 2 * p
    failures: List[Dict[str, Any]] = []
    basis = center_basis_upto(N, p, d)
    lam = make_field(p).one
    expected = set()
    for I in range(0, N + 1, p):
        for J in range(0, N + 1 - I, p):
            expected.add(((I,), (J,)))
    found = set()
    for n, z in enumerate(basis):
        if len(z.terms) != 1:
            failures.append(_failure(n, "center-basis", f"{z} is not a monomial"))
            continue
        (key, _), = z.terms.items()
        found.add(key)
        if not center_membership(z):
            failures.append(_failure(n, "center-basis", f"{z} is not central"))
    if found != expected:
        failures.append(_failure(0, "center-basis", f"found {sorted(found)}, expected {sorted(expected)}"))
    # brute force: each expected monomial commutes with the generators
    for n, (I, J) in enumerate(sorted(expected)):
        if not center_membership(WeylElement.monomial(lam, I, J)):
            failures.append(_failure(n, "center-basis", f"t^{I} D^{J} is not central"))
    return 1, failures


def azumaya_fibers(cfg: Dict[str, Any], seed: int):
    p, d, e = cfg["p"], cfg["d"], cfg["e"]
    field = make_field(p, e)
    failures: List[Dict[str, Any]] = []
    points = list(np.ndindex(*([field.q] * (2 * d))))
    for case, point in enumerate(points):
        a = [field.from_index(int(k)) for k in point[:d]]
        b = [field.from_index(int(k)) for k in point[d:]]

        def one_case():
            rep = fiber_matrix_rep(a, b, field)
            if not rep.is_isomorphism:
                failures.append(_failure(case, "azumaya-fiber",
                                         f"image dimension {rep.image_dimension} at a={a}, b={b}"))

        _guarded(case, one_case, failures)
    return len(points), failures


def _witness_form(ring: PolyRing) -> OneForm:
    p = ring.p
    return OneForm(ring, [ring.var(i) ** (p - 1) for i in range(ring.d)])


def p_curvature_agreement(cfg: Dict[str, Any], seed: int):
    p, d, n = cfg["p"], cfg["d"], cfg["count"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d)
    failures: List[Dict[str, Any]] = []
    forms = [_witness_form(ring)] + [random_closed_form(ring, rng, cfg["degree"]) for _ in range(n)]
    for case, omega in enumerate(forms):

        def one_case():
            result = rank_one_agreement(omega)
            if not result["agree"]:
                failures.append(_failure(case, "p-curvature-agreement", f"omega = {omega}"))
            if case == 0:
                t = ring.var(0)
                if result["operator"].components[0] != t ** (p * (p - 1)) - 1:
                    failures.append(_failure(case, "p-curvature-witness", repr(result["operator"])))

        _guarded(case, one_case, failures)
    return len(forms), failures


def _random_connection(ring: PolyRing, rng, rank: int, degree: int) -> Connection:
    if rank == 1:
        return Connection.rank_one(random_closed_form(ring, rng, degree))
    if ring.d != 1:
        raise ValueError("random higher-rank connections are generated for d = 1 only")
    A = [[random_poly(ring, rng, degree) for _ in range(rank)] for _ in range(rank)]
    return Connection(ring, 1, [A])


def descent(cfg: Dict[str, Any], seed: int):
    p, d, r, n = cfg["p"], cfg["d"], cfg["r"], cfg["count"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d)
    failures: List[Dict[str, Any]] = []
    for case in range(n):
        conn = _random_connection(ring, rng, r, cfg["degree"])

        def one_case():
            report = verify_descent(conn)
            if not report.identity_i:
                failures.append(_failure(case, "char-descent", repr(conn.A)))
            if not report.identity_ii:
                failures.append(_failure(case, "chi-prime-power", repr(conn.A)))

        _guarded(case, one_case, failures)
    return n, failures


def _random_commuting_higgs(ring: PolyRing, rng, r: int, degree: int) -> HiggsField:
    """theta_i = f_i Id + g_i M for one random M"""
    M = [[random_poly(ring, rng, degree) for _ in range(r)] for _ in range(r)]
    thetas = [M]
    for _ in range(1, ring.d):
        f, g = random_poly(ring, rng, degree), random_poly(ring, rng, degree)
        thetas.append(mat_add(mat_scalar(ring, r, f), mat_scale(M, g)))
    return HiggsField(ring, thetas)


def cayley_hamilton(cfg: Dict[str, Any], seed: int):
    p, d, r, n = cfg["p"], cfg["d"], cfg["r"], cfg["count"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d)
    failures: List[Dict[str, Any]] = []
    for case in range(n):
        theta = _random_commuting_higgs(ring, rng, r, cfg["degree"])

        def one_case():
            if not cayley_hamilton_check(theta):
                failures.append(_failure(case, "Cayley-Hamilton", repr(theta.thetas)))
            ideal = spectral_ideal(twisted_char_poly(theta))
            if len(ideal) != s_count(r, d):
                failures.append(_failure(case, "S(r,d)-count", f"{len(ideal)} generators"))
            if not annihilation_check(theta, ideal):
                failures.append(_failure(case, "annihilation", repr(theta.thetas)))

        _guarded(case, one_case, failures)
    return n, failures


def norm_law(cfg: Dict[str, Any], seed: int):
    p, d, n = cfg["p"], cfg["d"], cfg["count"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d)
    failures: List[Dict[str, Any]] = []
    for case in range(n):
        g = random_poly(ring, rng, cfg["degree"])

        def one_case():
            if frobenius_pullback(norm_map(g)) != g ** (p ** d):
                failures.append(_failure(case, "norm-law", repr(g)))

        _guarded(case, one_case, failures)
    return n, failures


def _random_section(ring: PolyRing, rng, kind: str, degree: int) -> SectionData:
    if kind == "zero":
        return SectionData.zero(ring)
    if kind == "constant":
        return SectionData.constant(ring, [ring.field.random_element(rng) for _ in range(ring.d)])
    values = list(exterior_derivative(random_poly(ring, rng, degree + 1)).components)
    values[0] = values[0] + ring.var(0) ** degree
    return SectionData(ring, values)


def balanced(cfg: Dict[str, Any], seed: int):
    p, d = cfg["p"], cfg["d"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d, twist=True)
    kinds = ["zero"] + ["constant"] * cfg["constant"] + ["nonconstant"] * cfg["nonconstant"]
    failures: List[Dict[str, Any]] = []
    for case, kind in enumerate(kinds):
        section = _random_section(ring, rng, kind, cfg["degree"])

        def one_case():
            module = splitting_over_section(section, config.DEGREE_BOUND)
            if not module.surjective or module.end_dimension != p ** (2 * d):
                failures.append(_failure(case, "balanced-module", repr(section)))

        _guarded(case, one_case, failures)
    return len(kinds), failures


def roundtrip(cfg: Dict[str, Any], seed: int):
    p, d, r, n = cfg["p"], cfg["d"], cfg["r"], cfg["count"]
    rng = np.random.default_rng(seed)
    ring = PolyRing(make_field(p), d, twist=True)
    failures: List[Dict[str, Any]] = []
    for case in range(n):
        theta = random_multiplicity_free_higgs(ring, rng, r, cfg["degree"])

        def one_case():
            report = correspondence_roundtrip(theta, config.DEGREE_BOUND)
            if report.connection.rank != r:
                failures.append(_failure(case, "rank-preservation", repr(theta.thetas)))
            if not report.isomorphism.found:
                failures.append(_failure(case, "correspondence-roundtrip", repr(theta.thetas)))

        _guarded(case, one_case, failures)
    return n, failures


CRITERIA: List[Tuple[int, str, Callable]] = [
    (1, "weyl-kernel", weyl_kernel),
    (2, "center", center),
    (3, "azumaya-fibers", azumaya_fibers),
    (4, "p-curvature-agreement", p_curvature_agreement),
    (5, "descent", descent),
    (6, "cayley-hamilton", cayley_hamilton),
    (7, "norm-law", norm_law),
    (8, "balanced", balanced),
    (9, "roundtrip", roundtrip),
]


def build_tasks(scale: float = 1.0, only=None) -> List[Tuple[int, str, Dict[str, Any]]]:
    """(criterion, name, cfg) in a fixed order"""
    tasks = []

    def add(number, cfg):
        if only is None or number in only:
            name = CRITERIA[number - 1][1]
            tasks.append((number, name, cfg))

    for p in (2, 3, 5):
        for d in (1, 2):
            add(1, {"p": p, "d": d, "count": _count(100, scale), "degree": 3})
    for p in (2, 3):
        add(2, {"p": p, "d": 1})
    for p, d in ((2, 1), (2, 2), (3, 1)):
        for e in (1, 2):
            add(3, {"p": p, "d": d, "e": e})
    for p in (2, 3):
        for d in (1, 2):
            add(4, {"p": p, "d": d, "count": _count(50, scale), "degree": 3})
    for p, d, r in ((2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1)):
        add(5, {"p": p, "d": d, "r": r, "count": _count(25, scale), "degree": 2})
    for p in (2, 3, 5):
        for d in (1, 2):
            for r in (1, 2, 3):
                add(6, {"p": p, "d": d, "r": r, "count": _count(100, scale), "degree": 1})
    for p in (2, 3):
        for d in (1, 2):
            add(7, {"p": p, "d": d, "count": _count(100, scale), "degree": 2})
    for p, d in ((2, 1), (3, 1), (2, 2)):
        add(8, {"p": p, "d": d, "constant": _count(10, scale), "nonconstant": _count(5, scale), "degree": 2})
    for p in (2, 3):
        for d in (1, 2):
            for r in (1, 2):
                add(9, {"p": p, "d": d, "r": r, "count": _count(25, scale), "degree": 1})
    return tasks


def _run_task(args):
    number, name, cfg, seed = args
    fn = CRITERIA[number - 1][2]
    logger.info(f"criterion {number} ({name}) {cfg}")
    cases, failures = fn(cfg, seed)
    return {"criterion": number, "name": name, "config": cfg, "cases": cases, "failures": failures}


def run_selftest(seed: int = config.DEFAULT_SEED, scale: float = None, jobs: int = None, only=None) -> Dict[str, Any]:
    scale = config.SWEEP_SCALE if scale is None else scale
    jobs = config.JOBS if jobs is None else jobs
    # seeds are spawned over the full task list so a criterion filter does not shift them
    tasks = build_tasks(scale)
    children = np.random.SeedSequence(seed).spawn(len(tasks))
    payload = [(number, name, cfg, int(child.generate_state(1)[0]))
               for (number, name, cfg), child in zip(tasks, children)
               if only is None or number in only]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, payload))
    else:
        results = [_run_task(args) for args in payload]
    failed = sum(len(r["failures"]) for r in results)
    if failed:
        logger.error(f"selftest: {failed} failures")
    return {
        "seed": seed,
        "scale": scale,
        "criteria": results,
        "cases": sum(r["cases"] for r in results),
        "failures": failed,
        "ok": failed == 0,
    }
