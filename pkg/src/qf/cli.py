"""Command-line entry point: ``qf <command> ...``.

Exit codes: 0 when every emitted verdict passes (or is skipped), 1 when a check
fails, 2 for usage and input validation errors. With ``--strict`` a skipped
check counts as a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from . import quandle as qmod
from .adjoint import (
    abelianization, adj_phi_presentation, adj_w_presentation, adjointness_count_check, extension_transport_alex,
    extension_transport_qw, make_extension, parse_word, projection_kernel_report, r4_adjoint_report,
)
from .algebra import identity_perm, power_map
from .bridge import GroupCohomology2, check_naturality, is_symmetric, verify_gamma, verify_lambda
from .catalog import catalog_entries, parse_group, parse_quandle
from .cohomology import (
    ADDITIVE_NOTE, ClassAction, build_abelian_extension, check_cocycle2, check_theta_derivation, cohomology_group,
    orbit_lower_bound, parse_coefficients, semidirect_action_check, verify_wells_abelian,
)
from .dynamical import (
    act_on_dynamical, build_extension, cohomologous_dynamical, fibers_isomorphic_report, product_dynamical,
    trivial_dynamical, verify_wells_dynamical,
)
from .errors import CapExceeded, QfError
from .io import (
    cochain_from_json, dynamical_from_json, dynamical_to_json, presentation_to_json,
    quandle_to_json,
)
from .report import FAIL, SKIPPED, Report, make_report
from .verify import verify_all


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

class Emitter:
    def __init__(self, as_json: bool, strict: bool):
        self.as_json = as_json
        self.strict = strict
        self.reports: list[Report] = []

    def info(self, obj: dict[str, Any]) -> None:
        if self.as_json:
            print(json.dumps(obj, default=_jsonable))
        else:
            for k, v in obj.items():
                print(f"{k}: {_plain(v)}")

    def report(self, rep: Report) -> None:
        self.reports.append(rep)
        if self.as_json:
            print(json.dumps(rep.to_json(), default=_jsonable))
        else:
            print(rep.line())

    def skipped(self, claim: str, reason: str) -> None:
        self.report(Report(claim, SKIPPED, {"reason": reason}))

    def exit_code(self) -> int:
        verdicts = {r.verdict for r in self.reports}
        if FAIL in verdicts or (self.strict and SKIPPED in verdicts):
            return 1
        return 0


def _jsonable(obj):
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    return str(obj)


def _plain(v) -> str:
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, default=_jsonable)
    return str(v)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise UsageError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


def _quandle(args):
    spec = getattr(args, "spec", None) or getattr(args, "quandle", None)
    if spec is None:
        raise UsageError("a quandle is required (--spec or --quandle)")
    return parse_quandle(spec)


# ---------------------------------------------------------------------------
# quandle
# ---------------------------------------------------------------------------

def cmd_quandle(args, out: Emitter) -> None:
    action = args.action
    if action == "check":
        _check_axioms(args, out)
        return
    X = _quandle(args)
    if action == "make":
        out.info(quandle_to_json(X))
    elif action == "aut":
        auts = qmod.automorphism_group(X, max_size=args.max_quandle)
        out.info({"quandle": X.name, "order": len(auts), "automorphisms": auts})
    elif action == "inn":
        inn = qmod.inner_group(X, cap=args.max_search)
        out.info({"quandle": X.name, "order": len(inn), "generators": sorted(set(X.columns))})
    elif action == "orbits":
        connected, orbits = qmod.is_connected(X)
        out.info({"quandle": X.name, "orbits": orbits, "connected": connected})
    elif action in ("homs", "iso"):
        if args.target is None:
            raise UsageError(f"quandle {action} needs --target")
        Y = parse_quandle(args.target)
        if action == "homs":
            homs = qmod.quandle_homs(X, Y, limit=args.max_search)
            out.info({"source": X.name, "target": Y.name, "count": len(homs), "homomorphisms": homs})
        else:
            if max(X.size, Y.size) > args.max_quandle:
                raise CapExceeded(f"quandle size exceeds --max-quandle {args.max_quandle}")
            f = qmod.are_isomorphic(X, Y, max_size=args.max_quandle)
            out.info({"source": X.name, "target": Y.name, "isomorphic": f is not None, "map": f})


def _check_axioms(args, out: Emitter) -> None:
    # a file is checked as a raw table so that a failing axiom is a verdict, not an input error
    if args.quandle.startswith("@"):
        obj = _load_json(args.quandle[1:])
        table, name = obj.get("table"), obj.get("name", args.quandle)
        n = len(table) if isinstance(table, list) else 0
        if n == 0 or any(not isinstance(r, list) or len(r) != n for r in table) or \
                any(not isinstance(v, int) or not 0 <= v < n for r in table for v in r):
            raise UsageError("table must be a non-empty square array of entries in range(size)")
    else:
        X = parse_quandle(args.quandle)
        table, name = X.table, X.name
    bad = qmod.quandle_axiom_violation(table)
    checks = {"idempotent": True, "right_invertible": True, "right_distributive": True}
    witness = None
    if bad is not None:
        key = {"Q1": "idempotent", "Q2": "right_invertible", "Q3": "right_distributive"}[bad[0]]
        checks[key] = False
        witness = {"axiom": key, "elements": bad[1]}
    out.report(make_report("quandle-axioms", checks, {"quandle": name, "size": len(table)}, witness))


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------

def cmd_cohomology(args, out: Emitter) -> None:
    X = _quandle(args)
    for coeff in args.coeff.split(","):
        A = parse_coefficients(coeff)
        H = cohomology_group(X, args.degree, A, cap=args.max_search)
        info = {"quandle": X.name, "degree": args.degree, "coeff": A.name,
                "invariant_factors": list(H.factors), "structure": str(H.structure), "order": H.order,
                "cocycles": H.cocycle_count, "note": ADDITIVE_NOTE}
        if args.degree == 2 and H.order <= args.max_search:
            info["representatives"] = [{"class": list(c), "table": H.to_table(H.representative(c))}
                                       for c in H.classes()]
        out.info(info)


def _cocycle_tables(args, X, A, H) -> list[list[list[int]]]:
    if getattr(args, "cocycle", None):
        table, _ = cochain_from_json(_load_json(args.cocycle), X.size, A)
        check_cocycle2(X, A, table)
        return [table]
    if getattr(args, "all_cocycles", False):
        return [H.to_table(v) for v in H.cocycles(args.max_search)]
    return [H.to_table(H.representative(c)) for c in H.classes()]


def cmd_wells_abelian(args, out: Emitter) -> None:
    X = _quandle(args)
    A = parse_coefficients(args.coeff)
    H = cohomology_group(X, 2, A, cap=args.max_search)
    action = ClassAction(H)
    for table in _cocycle_tables(args, X, A, H):
        out.report(verify_wells_abelian(X, A, table, action, cap=args.max_search))
        if args.orbit_bound:
            out.report(orbit_lower_bound(X, A, table, action))


def cmd_theta(args, out: Emitter) -> None:
    X = _quandle(args)
    A = parse_coefficients(args.coeff)
    H = cohomology_group(X, 2, A, cap=args.max_search)
    action = ClassAction(H)
    tables = _cocycle_tables(args, X, A, H)
    if args.action == "derivation":
        for table in tables:
            out.report(check_theta_derivation(X, A, table, action))
        if args.semidirect:
            out.report(semidirect_action_check(X, A, action, cap=args.max_search))
        return
    for table in tables:
        base = H.class_of(H.from_table(table))
        rows = [{"phi": g[0], "theta": g[1], "value": list(action.theta(base, g))} for g in action.group]
        out.info({"quandle": X.name, "coeff": A.name, "class": list(base), "map": rows, "note": ADDITIVE_NOTE})


# ---------------------------------------------------------------------------
# extensions
# ---------------------------------------------------------------------------

def _dynamical(args, path_attr: str = "dynamical"):
    path = getattr(args, path_attr, None)
    if path:
        return dynamical_from_json(_load_json(path))
    X = _quandle(args)
    if getattr(args, "fiber", None):
        return product_dynamical(X, parse_quandle(args.fiber))
    return trivial_dynamical(X, args.trivial)


def cmd_extension(args, out: Emitter) -> None:
    action = args.action
    if action == "build":
        if args.dynamical or args.fiber:
            E = build_extension(_dynamical(args))
        else:
            X = _quandle(args)
            if args.coeff is None:
                E = build_extension(trivial_dynamical(X, args.trivial))
            else:
                A = parse_coefficients(args.coeff)
                table = [[0] * X.size for _ in X.elements()]
                if args.cocycle:
                    table, _ = cochain_from_json(_load_json(args.cocycle), X.size, A)
                E = build_abelian_extension(X, A, table)
        out.info(quandle_to_json(E))
    elif action == "fibers":
        out.report(fibers_isomorphic_report(_dynamical(args)))
    elif action == "act":
        c = _dynamical(args)
        phi = _int_list(args.phi) if args.phi else list(c.base.elements())
        theta = _int_list(args.theta) if args.theta else list(range(c.fiber_size))
        out.info(dynamical_to_json(act_on_dynamical(phi, theta, c)))
    elif action == "cohomologous":
        if not args.other:
            raise UsageError("extension cohomologous needs --other")
        a = _dynamical(args)
        b = dynamical_from_json(_load_json(args.other))
        lam = cohomologous_dynamical(a, b, cap=args.max_search)
        out.info({"cohomologous": lam is not None, "twist": lam})


def cmd_wells_dynamical(args, out: Emitter) -> None:
    c = _dynamical(args)
    S = parse_quandle(args.fiber) if args.fiber and not args.dynamical else None
    out.report(verify_wells_dynamical(c, args.x0, S_quandle=S, cap=args.max_search, max_size=args.max_quandle))


# ---------------------------------------------------------------------------
# bridge
# ---------------------------------------------------------------------------

def cmd_bridge(args, out: Emitter) -> None:
    G = parse_group(args.group)
    A = parse_coefficients(args.coeff)
    if args.action == "lambda":
        out.report(verify_lambda(G, A, args.twists, args.seed, cap=args.max_search))
    elif args.action == "gamma":
        out.report(verify_gamma(G, A, args.twists, args.seed, cap=args.max_search))
    elif args.action == "h2group":
        H = GroupCohomology2(G, A)
        info = {"group": G.name, "coeff": A.name, "invariant_factors": list(H.factors),
                "structure": str(H.structure), "order": H.order, "cocycles": H.cocycle_count}
        if G.is_abelian and H.cocycle_count <= args.max_search:
            sym = {H.class_of(v) for v in H.cocycles(args.max_search) if is_symmetric(H.to_table(v))}
            info["symmetric_classes"] = sorted(list(c) for c in sym)
        out.info(info)
    elif args.action == "naturality":
        if args.conj is not None:
            t, inv = G.table, G.inverse
            f = [t[t[inv[args.conj]][x]][args.conj] for x in G.elements()]
        elif args.power is not None:
            if not G.is_abelian:
                raise UsageError("--power needs an abelian group; use --conj otherwise")
            f = list(power_map(G, args.power))
        else:
            f = list(identity_perm(G.size))
        h = A.scalar_map(args.coeff_power)
        out.report(check_naturality(args.direction, G, G, f, A, A, h))


# ---------------------------------------------------------------------------
# adjoint
# ---------------------------------------------------------------------------

def _parse_ext(text: str):
    """``E:a,b,...`` or ``E:center``."""
    if ":" not in text:
        raise UsageError("--ext must look like E:a1,a2,... or E:center")
    gname, sub = text.split(":", 1)
    E = parse_group(gname)
    if sub == "center":
        A = [z for z in E.elements() if all(E.table[z][g] == E.table[g][z] for g in E.elements())]
    else:
        A = _int_list(sub)
    return make_extension(E, A)


def cmd_adjoint(args, out: Emitter) -> None:
    action = args.action
    if action == "r4-report":
        out.report(r4_adjoint_report())
        return
    if action == "transport":
        if not args.ext:
            raise UsageError("adjoint transport needs --ext")
        ext = _parse_ext(args.ext)
        if args.word.startswith("alex:"):
            k = args.word.split(":", 1)[1]
            f = identity_perm(ext.E.size) if k == "id" else power_map(ext.E, int(k))
            tr = extension_transport_alex(ext, f)
        else:
            tr = extension_transport_qw(ext, parse_word(args.word))
        out.report(tr.report)
        return
    if action == "abelianize" and (args.dynamical or args.fiber):
        out.report(projection_kernel_report(_dynamical(args), parse_word(args.word)))
        return
    X = _quandle(args)
    if action == "count":
        if not args.group:
            raise UsageError("adjoint count needs --group")
        out.report(adjointness_count_check(X, parse_group(args.group), parse_word(args.word), cap=args.max_search))
        return
    P = adj_phi_presentation(X, _int_list(args.phi)) if args.phi else adj_w_presentation(X, parse_word(args.word))
    if action == "present":
        out.info(presentation_to_json(P))
    else:
        ab = abelianization(P)
        out.info({"quandle": X.name, "invariant_factors": list(ab.invariant_factors), "structure": str(ab)})


# ---------------------------------------------------------------------------
# catalog and sweep
# ---------------------------------------------------------------------------

def cmd_catalog(args, out: Emitter) -> None:
    for e in catalog_entries():
        obj = e.build()
        if out.as_json:
            out.info({"name": e.name, "kind": e.kind, "size": obj.size})
        else:
            print(f"{e.kind:8s} {e.name:12s} size {obj.size}")


def cmd_verify_all(args, out: Emitter) -> None:
    started = time.perf_counter()
    for rep in verify_all(args.scale, args.seed):
        out.report(rep)
    if not out.as_json:
        print(f"total {time.perf_counter() - started:.1f}s")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qf", description="Finite quandles, their extensions and cohomology.")
    p.add_argument("--json", action="store_true", help="one JSON object per output line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="treat skipped checks as failures")
    p.add_argument("--max-quandle", type=int, default=24, help="largest quandle searched for automorphisms")
    p.add_argument("--max-search", type=int, default=10**6, help="cap on enumerations")
    sub = p.add_subparsers(dest="command", required=True)

    def quandle_opt(sp, required=False):
        sp.add_argument("--quandle", "--spec", dest="quandle", required=required,
                        help="named quandle (dihedral:4, conj:S3:1, core:Z4, alex:Z5:2, trivial:3) or @file.json")

    q = sub.add_parser("quandle", help="construct and inspect quandles")
    q.add_argument("action", choices=["make", "check", "aut", "inn", "orbits", "homs", "iso"])
    quandle_opt(q, True)
    q.add_argument("--target")
    q.set_defaults(func=cmd_quandle)

    c = sub.add_parser("cohomology", help="H^n(X;A) for n = 1, 2, 3")
    quandle_opt(c, True)
    c.add_argument("--degree", type=int, default=2)
    c.add_argument("--coeff", default="Z2", help="comma-separated list; each entry is one coefficient group")
    c.set_defaults(func=cmd_cohomology)

    e = sub.add_parser("extension", help="dynamical and abelian extensions")
    e.add_argument("action", choices=["build", "fibers", "act", "cohomologous"])
    quandle_opt(e)
    e.add_argument("--dynamical", help="dynamical cocycle JSON file")
    e.add_argument("--fiber", help="fibre quandle for the product cocycle")
    e.add_argument("--trivial", type=int, default=2, help="fibre size of the trivial cocycle")
    e.add_argument("--coeff")
    e.add_argument("--cocycle", help="degree-2 cochain JSON file")
    e.add_argument("--phi")
    e.add_argument("--theta")
    e.add_argument("--other", help="second dynamical cocycle JSON file")
    e.set_defaults(func=cmd_extension)

    wd = sub.add_parser("wells-dynamical", help="exact sequence for dynamical extensions")
    quandle_opt(wd)
    wd.add_argument("--dynamical")
    wd.add_argument("--fiber")
    wd.add_argument("--trivial", type=int, default=2)
    wd.add_argument("--x0", type=int, default=0)
    wd.set_defaults(func=cmd_wells_dynamical)

    wa = sub.add_parser("wells-abelian", help="exact sequence for abelian extensions")
    quandle_opt(wa, True)
    wa.add_argument("--coeff", default="Z2")
    g = wa.add_mutually_exclusive_group()
    g.add_argument("--all-cocycles", action="store_true")
    g.add_argument("--cocycle")
    wa.add_argument("--orbit-bound", action="store_true", help="also emit the orbit-count bound")
    wa.set_defaults(func=cmd_wells_abelian)

    t = sub.add_parser("theta", help="the class-valued map on Aut(X) x Aut(A)")
    t.add_argument("action", choices=["map", "derivation"])
    quandle_opt(t, True)
    t.add_argument("--coeff", default="Z2")
    t.add_argument("--semidirect", action="store_true", help="also check the action of H2 x| (Aut(X) x Aut(A))")
    g = t.add_mutually_exclusive_group()
    g.add_argument("--all-cocycles", action="store_true")
    g.add_argument("--cocycle")
    t.set_defaults(func=cmd_theta)

    b = sub.add_parser("bridge", help="group 2-cocycles to quandle cocycles and factor sets")
    b.add_argument("action", choices=["lambda", "gamma", "h2group", "naturality"])
    b.add_argument("--group", required=True)
    b.add_argument("--coeff", default="Z2")
    b.add_argument("--twists", type=int, default=100)
    b.add_argument("--direction", choices=["lambda", "gamma"], default="gamma")
    b.add_argument("--power", type=int, help="naturality along x -> x^k")
    b.add_argument("--conj", type=int, help="naturality along conjugation by this element")
    b.add_argument("--coeff-power", type=int, default=1, help="naturality along a -> k a on the coefficients")
    b.set_defaults(func=cmd_bridge)

    a = sub.add_parser("adjoint", help="adjoint group presentations and extension transport")
    a.add_argument("action", choices=["present", "abelianize", "count", "transport", "r4-report"])
    quandle_opt(a)
    a.add_argument("--word", default="conj:1", help="core, conj:n, or alex:k / alex:id for transport")
    a.add_argument("--phi", help="automorphism for the twisted presentation")
    a.add_argument("--group")
    a.add_argument("--ext", help="E:a1,a2,... or E:center")
    a.add_argument("--dynamical", help="abelianize: compare Adj of this extension with Adj of its base")
    a.add_argument("--fiber", help="abelianize: as --dynamical, for the product cocycle with this fibre")
    a.add_argument("--trivial", type=int, default=2, help=argparse.SUPPRESS)
    a.set_defaults(func=cmd_adjoint)

    cat = sub.add_parser("catalog", help="built-in objects")
    cat.add_argument("action", choices=["list"])
    cat.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify-all", help="run the full acceptance sweep")
    v.add_argument("--scale", choices=["small", "default"], default="default")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Emitter(args.json, args.strict)
    try:
        args.func(args, out)
    except CapExceeded as exc:
        action = getattr(args, "action", None)
        out.skipped(args.command if action is None else f"{args.command}-{action}", str(exc))
    except (UsageError, QfError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness}", file=sys.stderr)
        return 2
    return out.exit_code()


if __name__ == "__main__":
    sys.exit(main())
