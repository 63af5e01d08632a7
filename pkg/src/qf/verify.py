"""The acceptance sweep: one aggregated report per checked property, over the built-in catalog."""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .adjoint import (
    CONJ, CORE, adjointness_count_check, extension_transport_alex, extension_transport_qw, make_extension,
    product_transport_report, r4_adjoint_report,
)
from .algebra import (
    cyclic_group, dihedral_group, group_automorphisms, identity_perm, klein_group, power_map, symmetric_group,
)
from .bridge import build_module_extension, lambda_map, verify_gamma, verify_lambda
from .catalog import CATALOG_GROUPS, catalog_quandles, parse_group
from .cohomology import (
    ClassAction, FiniteAbelianCoefficients, QuandleCohomology, check_theta_derivation, enumerate_Z2_B2,
    one_cocycles, orbit_lower_bound, verify_wells_abelian,
)
from .dynamical import (
    DynamicalCocycle, abelian_dynamical, build_extension, fibers_isomorphic_report, make_dynamical, product_dynamical,
    splitting_section, trivial_dynamical, twist_dynamical, verify_wells_dynamical,
)
from .errors import CapExceeded, QfError
from .quandle import (
    alexander_quandle, are_isomorphic, conj_quandle, core_quandle, dihedral_quandle, inn_orbits, is_connected,
    quandle_axiom_violation, trivial_quandle,
)
from .report import SKIPPED, Report, make_report

Z2 = FiniteAbelianCoefficients((2,))
Z3 = FiniteAbelianCoefficients((3,))


def _combine(claim: str, parts: list[Report], started: float, data: dict | None = None) -> Report:
    checks = {f"{i}:{p.claim}": p.ok for i, p in enumerate(parts)}
    bad = next((p for p in parts if not p.ok), None)
    witness = None if bad is None else {"claim": bad.claim, "witness": bad.witness, "data": bad.data}
    out = dict(data or {})
    out["parts"] = len(parts)
    return make_report(claim, checks, out, witness, started)


def _catalog_group_objects():
    return [(g, parse_group(g)) for g in CATALOG_GROUPS]


# ---------------------------------------------------------------------------
# individual properties
# ---------------------------------------------------------------------------

def check_axioms() -> Report:
    """Dihedral 1..12, and Conj_n (n = 0, 1, 2), Core and every Alexander quandle over catalog groups."""
    started = time.perf_counter()
    checks = {}
    for n in range(1, 13):
        checks[f"R{n}"] = quandle_axiom_violation(dihedral_quandle(n).table) is None
    for name, G in _catalog_group_objects():
        if G.size > 8:
            continue
        for k in (0, 1, 2):
            checks[f"Conj{k}({name})"] = quandle_axiom_violation(conj_quandle(G, k).table) is None
        checks[f"Core({name})"] = quandle_axiom_violation(core_quandle(G).table) is None
        for i, f in enumerate(group_automorphisms(G)):
            checks[f"Alex({name},{i})"] = quandle_axiom_violation(alexander_quandle(G, f).table) is None
    return make_report("quandle-axioms", checks, {"instances": len(checks)}, None, started)


def check_constructions() -> Report:
    """Core(Z_n) = R_n, Alex(Z_n, −1) = R_n, Alex(G, id) = T_|G|, Conj(abelian) trivial, as tables."""
    started = time.perf_counter()
    checks = {}
    for n in range(2, 9):
        Zn = cyclic_group(n)
        checks[f"Core(Z{n})"] = core_quandle(Zn).table == dihedral_quandle(n).table
        checks[f"Alex(Z{n},-1)"] = alexander_quandle(Zn, power_map(Zn, -1)).table == dihedral_quandle(n).table
    for name, G in _catalog_group_objects():
        checks[f"Alex({name},id)"] = alexander_quandle(G, identity_perm(G.size)).table == trivial_quandle(G.size).table
        if G.is_abelian:
            checks[f"Conj({name})"] = conj_quandle(G).table == trivial_quandle(G.size).table
    return make_report("quandle-constructions", checks, {"instances": len(checks)}, None, started)


def check_h2_double_path() -> Report:
    """Smith-form H²(X;A) equals the exhaustive Z²/B² count for catalog quandles of size ≤ 4."""
    started = time.perf_counter()
    checks, rows = {}, []
    for name, X in catalog_quandles():
        if X.size > 4:
            continue
        for A in (Z2, Z3):
            snf = QuandleCohomology(X, 2, A).structure
            brute = enumerate_Z2_B2(X, A).structure
            checks[f"{name}/{A.name}"] = snf == brute
            rows.append([name, A.name, str(snf), str(brute)])
    return make_report("h2-double-path", checks, {"rows": rows}, None, started)


def check_anchors() -> Report:
    """H²(T_2;Z_2) has order 4 with B² = 0, H²(T_3;Z_2) has order 64, |H¹| = |A|^{#orbits}."""
    started = time.perf_counter()
    t2 = enumerate_Z2_B2(trivial_quandle(2), Z2)
    checks = {
        "H2(T2;Z2)=4": QuandleCohomology(trivial_quandle(2), 2, Z2).order == 4 and t2.order == 4,
        "B2(T2;Z2)=0": len(t2.coboundaries) == 1,
        "H2(T3;Z2)=64": QuandleCohomology(trivial_quandle(3), 2, Z2).order == 64,
    }
    for name, X in catalog_quandles():
        orbits = len(inn_orbits(X))
        for A in (Z2, Z3):
            h1 = QuandleCohomology(X, 1, A).order
            checks[f"H1({name};{A.name})"] = h1 == A.order ** orbits == len(one_cocycles(X, A))
    return make_report("cohomology-anchors", checks, {"instances": len(checks)}, None, started)


def check_wells_abelian() -> Report:
    """|Aut_A(E)| = |Z¹|·|stabiliser| with kernel and image identified, for every class representative."""
    started = time.perf_counter()
    parts = []
    for X, A in [(trivial_quandle(2), Z2), (trivial_quandle(3), Z2), (dihedral_quandle(3), Z3),
                 (dihedral_quandle(4), Z2)]:
        H = QuandleCohomology(X, 2, A)
        action = ClassAction(H)
        for c in H.classes():
            table = H.to_table(H.representative(c))
            parts.append(verify_wells_abelian(X, A, table, action))
            parts.append(orbit_lower_bound(X, A, table, action))
    return _combine("wells-abelian", parts, started)


def r4_over_t2_cocycle() -> DynamicalCocycle:
    return abelian_dynamical(trivial_quandle(2), [[0, 1], [1, 0]], 2)


def check_wells_dynamical() -> Report:
    started = time.perf_counter()
    T2, R3, R4 = trivial_quandle(2), dihedral_quandle(3), dihedral_quandle(4)
    parts = [
        verify_wells_dynamical(trivial_dynamical(T2, 2), 0),
        verify_wells_dynamical(product_dynamical(R3, T2), 0, S_quandle=T2),
        verify_wells_dynamical(r4_over_t2_cocycle(), 0),
        verify_wells_dynamical(product_dynamical(T2, R3), 0, S_quandle=R3),
        splitting_section(R3, T2, 0),
        splitting_section(T2, T2, 0),
        splitting_section(R4, R3, 0),
    ]
    return _combine("wells-dynamical", parts, started)


def check_theta() -> Report:
    """Θ is a derivation and Θ − Θ' is inner, for every base class over (T_2,Z_2) and (R_4,Z_2)."""
    started = time.perf_counter()
    parts = []
    for X, A in [(trivial_quandle(2), Z2), (dihedral_quandle(4), Z2)]:
        H = QuandleCohomology(X, 2, A)
        action = ClassAction(H)
        for c in H.classes():
            parts.append(check_theta_derivation(X, A, H.to_table(H.representative(c)), action))
    return _combine("theta-derivation", parts, started)


def check_transport() -> Report:
    started = time.perf_counter()
    Z4, D4 = cyclic_group(4), dihedral_group(4)
    core = extension_transport_qw(make_extension(Z4, [0, 2]), CORE)
    r4 = are_isomorphic(build_extension(core.cocycle), dihedral_quandle(4)) is not None
    mu_expected = core.mu == [[0, 1], [1, 0]]
    alpha_formula = all(core.cocycle.alpha[x][y][s][t] == (core.mu[x][y] + s) % 2
                        for x, y, s, t in itertools.product(range(2), repeat=4))
    parts = [core.report,
             make_report("transport-core-Z4", {"isomorphic_to_R4": r4, "mu": mu_expected, "alpha_formula": alpha_formula},
                         {"mu": core.mu}, None, started),
             extension_transport_qw(make_extension(D4, [0, 2]), CONJ(1)).report,
             extension_transport_alex(make_extension(Z4, [0, 2]), power_map(Z4, -1)).report,
             extension_transport_alex(make_extension(Z4, [0, 2]), identity_perm(4)).report]
    Z2g, Z3g, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
    for G, A in [(Z2g, Z2g), (S3, Z2g), (Z3g, cyclic_group(4))]:
        parts.append(product_transport_report(G, A, CORE))
        parts.append(product_transport_report(G, A, CONJ(1)))
    for G, A in [(Z2g, Z2g), (Z3g, cyclic_group(4)), (cyclic_group(5), Z3g)]:
        parts.append(product_transport_report(G, A, None, power_map(G, -1), power_map(A, -1)))
    parts.append(product_transport_report(S3, Z3g, None, identity_perm(6), power_map(Z3g, -1)))
    return _combine("transport", parts, started)


def check_r4_adjoint() -> Report:
    return r4_adjoint_report()


def check_adjoint_counts() -> Report:
    started = time.perf_counter()
    parts = [adjointness_count_check(X, G, w)
             for X in (trivial_quandle(2), dihedral_quandle(3), dihedral_quandle(4))
             for G in (cyclic_group(2), cyclic_group(4), symmetric_group(3))
             for w in (CORE, CONJ(1))]
    return _combine("adjoint-counts", parts, started)


def check_bridge(twists: int = 100, seed: int = 0) -> Report:
    started = time.perf_counter()
    Z2g, Z4g, V4, S3 = cyclic_group(2), cyclic_group(4), klein_group(), symmetric_group(3)
    parts = []
    for G in (Z2g, Z4g, V4):
        parts.append(verify_lambda(G, Z2, twists, seed))
    for G in (Z2g, Z4g, V4, S3):
        parts.append(verify_gamma(G, Z2, twists, seed))
    carry = [[0, 0], [0, 1]]
    fs = lambda_map(Z2g, Z2, carry)
    rebuilt = are_isomorphic(build_module_extension(fs), dihedral_quandle(4)) is not None
    values = fs.mu[0][1] == 1 and fs.mu[1][0] == 1 and fs.mu[0][0] == 0 and fs.mu[1][1] == 0
    parts.append(make_report("lambda-carry-R4", {"values": values, "rebuilds_R4": rebuilt},
                             {"mu": [list(r) for r in fs.mu]}, None, started))
    return _combine("bridge-maps", parts, started)


def _fiber_test_cocycles(X, rng: random.Random) -> list[DynamicalCocycle]:
    T2, R3 = trivial_quandle(2), dihedral_quandle(3)
    base = [trivial_dynamical(X, 2), product_dynamical(X, R3), product_dynamical(X, T2)]
    # negation/doubling module over Z_3 with zero factor set: α(s,t) = −s + 2t
    alpha = [[[[(-s + 2 * t) % 3 for t in range(3)] for s in range(3)] for _ in X.elements()] for _ in X.elements()]
    base.append(make_dynamical(X, alpha, 3))
    out = list(base)
    for c in base:
        m = c.fiber_size
        for _ in range(2):
            lam = []
            for _x in X.elements():
                p = list(range(m))
                rng.shuffle(p)
                lam.append(tuple(p))
            out.append(twist_dynamical(c, lam))
    return out


def check_fibers(seed: int = 0) -> Report:
    started = time.perf_counter()
    rng = random.Random(seed)
    parts = []
    for name, X in catalog_quandles():
        if not is_connected(X)[0] or X.size > 8:
            continue
        for c in _fiber_test_cocycles(X, rng):
            make_dynamical(X, c.alpha, c.fiber_size)
            rep = fibers_isomorphic_report(c)
            rep.data["base"] = name
            parts.append(rep)
    return _combine("fibers-isomorphic", parts, started)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def acceptance_checks(scale: str = "default", seed: int = 0) -> list[tuple[str, Callable[[], Report]]]:
    twists = 100 if scale == "default" else 10
    return [
        ("quandle-axioms", check_axioms),
        ("quandle-constructions", check_constructions),
        ("h2-double-path", check_h2_double_path),
        ("cohomology-anchors", check_anchors),
        ("wells-abelian", check_wells_abelian),
        ("wells-dynamical", check_wells_dynamical),
        ("theta-derivation", check_theta),
        ("transport", check_transport),
        ("adjoint-r4", check_r4_adjoint),
        ("adjoint-counts", check_adjoint_counts),
        ("bridge-maps", lambda: check_bridge(twists, seed)),
        ("fibers-isomorphic", lambda: check_fibers(seed)),
    ]


def _run_one(args) -> Report:
    name, scale, seed = args
    fn = dict(acceptance_checks(scale, seed))[name]
    return run_guarded(name, fn)


def run_guarded(name: str, fn: Callable[[], Report]) -> Report:
    started = time.perf_counter()
    try:
        return fn()
    except CapExceeded as exc:
        rep = Report(name, SKIPPED, {"reason": str(exc)})
        rep.elapsed = time.perf_counter() - started
        return rep
    except QfError as exc:
        rep = make_report(name, {"no_error": False}, {}, {"error": f"{type(exc).__name__}: {exc}"}, started)
        return rep


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("QF_MAX_THREADS", "1")))
    except ValueError:
        return 1


def verify_all(scale: str = "default", seed: int = 0, workers: int | None = None) -> list[Report]:
    """Run every acceptance property; report order is fixed whatever the worker count."""
    if scale not in ("small", "default"):
        raise ValueError("scale must be 'small' or 'default'")
    names = [n for n, _ in acceptance_checks(scale, seed)]
    workers = max_threads() if workers is None else workers
    if workers <= 1:
        return [_run_one((n, scale, seed)) for n in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, [(n, scale, seed) for n in names]))
