"""JSON forms of groups, quandles, cocycles, cochains and presentations."""

from __future__ import annotations

from typing import Any

from .adjoint import GroupPresentation
from .algebra import FiniteGroup, make_group
from .cohomology import FiniteAbelianCoefficients, parse_coefficients
from .dynamical import DynamicalCocycle, GeneralizedPair, make_dynamical, make_generalized
from .errors import ShapeMismatch
from .quandle import FiniteQuandle, make_quandle


def _require(obj: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ShapeMismatch(f"JSON object is missing {missing}")


def group_to_json(G: FiniteGroup) -> dict[str, Any]:
    return {"size": G.size, "table": [list(r) for r in G.table]}


def group_from_json(obj: dict) -> FiniteGroup:
    _require(obj, "table")
    G = make_group(obj["table"], obj.get("name", ""))
    if "size" in obj and obj["size"] != G.size:
        raise ShapeMismatch("size does not match the table")
    if G.identity != 0:
        raise ShapeMismatch("the identity must be element 0")
    return G


def quandle_to_json(X: FiniteQuandle) -> dict[str, Any]:
    return {"size": X.size, "name": X.name, "table": [list(r) for r in X.table]}


def quandle_from_json(obj: dict) -> FiniteQuandle:
    _require(obj, "table")
    X = make_quandle(obj["table"], obj.get("name", ""))
    if "size" in obj and obj["size"] != X.size:
        raise ShapeMismatch("size does not match the table")
    return X


def dynamical_to_json(c: DynamicalCocycle) -> dict[str, Any]:
    return {"base": quandle_to_json(c.base), "fiber_size": c.fiber_size,
            "alpha": [[[list(r) for r in axy] for axy in ax] for ax in c.alpha]}


def dynamical_from_json(obj: dict) -> DynamicalCocycle:
    _require(obj, "base", "fiber_size", "alpha")
    return make_dynamical(quandle_from_json(obj["base"]), obj["alpha"], obj["fiber_size"])


def generalized_to_json(p: GeneralizedPair) -> dict[str, Any]:
    return {"X_size": p.x_size, "S_size": p.s_size, "alpha": p.alpha, "beta": p.beta}


def generalized_from_json(obj: dict) -> GeneralizedPair:
    _require(obj, "X_size", "S_size", "alpha", "beta")
    return make_generalized(obj["X_size"], obj["S_size"], obj["alpha"], obj["beta"])


def cochain_to_json(table, A: FiniteAbelianCoefficients, degree: int = 2) -> dict[str, Any]:
    """Degree-2 cochain as {"degree", "coeff", "entries": [[x, y, [a-tuple]], ...]}; zero entries omitted."""
    n = len(table)
    entries = [[x, y, list(A.coords(table[x][y]))] for x in range(n) for y in range(n)
               if x != y and table[x][y] != 0]
    return {"degree": degree, "coeff": A.name, "entries": entries}


def cochain_from_json(obj: dict, size: int, A: FiniteAbelianCoefficients | None = None) -> tuple[list[list[int]], FiniteAbelianCoefficients]:
    _require(obj, "degree", "entries")
    if obj["degree"] != 2:
        raise ShapeMismatch("only degree-2 cochains are read from JSON")
    if A is None:
        A = parse_coefficients(obj.get("coeff", "Z2"))
    table = [[0] * size for _ in range(size)]
    for entry in obj["entries"]:
        x, y, value = entry
        if not (0 <= x < size and 0 <= y < size):
            raise ShapeMismatch(f"entry {entry} is outside the quandle")
        if x == y:
            if any(value):
                raise ShapeMismatch(f"degenerate pair {(x, y)} must carry zero")
            continue
        value = [value] if isinstance(value, int) else value
        if len(value) != len(A.factors):
            raise ShapeMismatch(f"entry {entry} does not match {A.name}")
        table[x][y] = A.index(value)
    return table, A


def presentation_to_json(P: GroupPresentation) -> dict[str, Any]:
    return {"generators": P.generators, "relators": [list(r) for r in P.relators]}


def presentation_from_json(obj: dict) -> GroupPresentation:
    _require(obj, "generators", "relators")
    return GroupPresentation(obj["generators"], tuple(tuple(r) for r in obj["relators"]))
