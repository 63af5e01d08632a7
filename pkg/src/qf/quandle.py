"""Finite quandles stored as operation tables, ``table[x][y] = x*y``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import (
    FiniteGroup, Permutation, compose, cycle_type, is_group_hom, orbits_of, perm_closure, perm_inverse,
)
from .errors import CapExceeded, DomainError, QuandleAxiomError, ValidationError

DEFAULT_MAX_QUANDLE = 16
DEFAULT_MAX_MAPS = 200_000


@dataclass(frozen=True)
class FiniteQuandle:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def right_map(self, y: int) -> Permutation:
        """The inner map S_y : x ↦ x*y."""
        return self.columns[y]

    @cached_property
    def columns(self) -> tuple[Permutation, ...]:
        n = len(self.table)
        return tuple(tuple(self.table[x][y] for x in range(n)) for y in range(n))

    @cached_property
    def is_trivial(self) -> bool:
        return all(self.table[x][y] == x for x in self.elements() for y in self.elements())

    def __repr__(self) -> str:
        return f"FiniteQuandle({self.name or '?'}, size={self.size})"


def quandle_axiom_violation(table: Sequence[Sequence[int]]) -> tuple[str, tuple] | None:
    """First failing axiom with its witness, or None when the table is a quandle."""
    n = len(table)
    for x in range(n):
        if table[x][x] != x:
            return "Q1", (x,)
    for y in range(n):
        col = [table[x][y] for x in range(n)]
        if len(set(col)) != n:
            dup = next(v for v, c in Counter(col).items() if c > 1)
            return "Q2", (y, dup)
    for x in range(n):
        rx = table[x]
        for y in range(n):
            ry, rxy = table[y], table[rx[y]]
            for z in range(n):
                if rxy[z] != table[rx[z]][ry[z]]:
                    return "Q3", (x, y, z)
    return None


def make_quandle(table: Sequence[Sequence[int]], name: str = "") -> FiniteQuandle:
    n = len(table)
    if n == 0:
        raise ValidationError("empty table", kind="ShapeMismatch")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for x, row in enumerate(rows):
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise ValidationError(f"row {x} malformed", witness=(x,), kind="ShapeMismatch")
    bad = quandle_axiom_violation(rows)
    if bad is not None:
        axiom, witness = bad
        messages = {
            "Q1": "x*x != x",
            "Q2": "column {0} is not a bijection (value {1} repeats)",
            "Q3": "(x*y)*z != (x*z)*(y*z)",
        }
        raise QuandleAxiomError(f"{axiom} violated at {witness}: " + messages[axiom].format(*witness),
                                witness=witness, kind=axiom)
    return FiniteQuandle(rows, name)


def _unchecked(table, name: str) -> FiniteQuandle:
    return FiniteQuandle(tuple(tuple(r) for r in table), name)


def trivial_quandle(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return _unchecked([[x] * n for x in range(n)], f"T{n}")


def dihedral_quandle(n: int) -> FiniteQuandle:
    if n < 1:
        raise ValueError("n must be positive")
    return _unchecked([[(2 * j - i) % n for j in range(n)] for i in range(n)], f"R{n}")


def conj_quandle(G: FiniteGroup, n: int = 1) -> FiniteQuandle:
    """a*b = b^{-n} a b^{n}."""
    t = G.table
    pw = [G.power(b, n) for b in G.elements()]
    table = [[t[t[G.inverse[pw[b]]][a]][pw[b]] for b in G.elements()] for a in G.elements()]
    return make_quandle(table, f"Conj{n}({G.name})" if n != 1 else f"Conj({G.name})")


def core_quandle(G: FiniteGroup) -> FiniteQuandle:
    """a*b = b a^{-1} b."""
    t = G.table
    table = [[t[t[b][G.inverse[a]]][b] for b in G.elements()] for a in G.elements()]
    return make_quandle(table, f"Core({G.name})")


def alexander_quandle(G: FiniteGroup, f: Sequence[int], name: str | None = None) -> FiniteQuandle:
    """x*y = f(x y^{-1}) y for an automorphism f of G."""
    f = tuple(f)
    if sorted(f) != list(G.elements()) or not is_group_hom(f, G, G):
        raise DomainError("FNotAutomorphism: f is not an automorphism of G")
    t = G.table
    table = [[t[f[t[x][G.inverse[y]]]][y] for y in G.elements()] for x in G.elements()]
    return make_quandle(table, name or f"Alex({G.name})")


def product_quandle(X: FiniteQuandle, Y: FiniteQuandle) -> FiniteQuandle:
    """Coordinatewise operation on X×Y, (x, y) stored at x·|Y| + y."""
    m = Y.size
    table = [[X.table[a // m][b // m] * m + Y.table[a % m][b % m] for b in range(X.size * m)]
             for a in range(X.size * m)]
    return _unchecked(table, f"{X.name}x{Y.name}")


def is_quandle_hom(f: Sequence[int], X: FiniteQuandle, Y: FiniteQuandle) -> bool:
    if len(f) != X.size:
        return False
    tx, ty = X.table, Y.table
    return all(f[tx[x][y]] == ty[f[x]][f[y]] for x in X.elements() for y in X.elements())


# ---------------------------------------------------------------------------
# inner group, orbits
# ---------------------------------------------------------------------------

def inner_group(X: FiniteQuandle, cap: int | None = None) -> list[Permutation]:
    """Closure of the inner maps S_y, identity first."""
    return perm_closure(set(X.columns), X.size, cap)


def inn_orbits(X: FiniteQuandle) -> list[list[int]]:
    return orbits_of(set(X.columns), X.size)


def is_connected(X: FiniteQuandle) -> tuple[bool, list[list[int]]]:
    orbits = inn_orbits(X)
    return len(orbits) == 1, orbits


# ---------------------------------------------------------------------------
# homomorphism / automorphism search
# ---------------------------------------------------------------------------

def fingerprints(X: FiniteQuandle) -> list[tuple]:
    """Isomorphism-invariant data per element: column cycle type, row fibre profile, orbit size."""
    orbit_size = {}
    for orb in inn_orbits(X):
        for x in orb:
            orbit_size[x] = len(orb)
    out = []
    for x in X.elements():
        row_profile = tuple(sorted(Counter(X.table[x]).values()))
        out.append((cycle_type(X.columns[x]), row_profile, orbit_size[x]))
    return out


def _search(X: FiniteQuandle, Y: FiniteQuandle, allowed: list[list[int]], injective: bool,
            limit: int | None, first_only: bool = False) -> list[tuple[int, ...]]:
    n = X.size
    tx, ty = X.table, Y.table
    f = [-1] * n
    used = [False] * Y.size
    assigned: list[int] = []
    allowed_sets = [set(a) for a in allowed]
    results: list[tuple[int, ...]] = []

    def undo(trail):
        for a in reversed(trail):
            if injective:
                used[f[a]] = False
            f[a] = -1
            assigned.pop()

    def assign(x, v):
        trail = []
        queue = [(x, v)]
        while queue:
            a, va = queue.pop()
            if f[a] != -1:
                if f[a] != va:
                    undo(trail)
                    return None
                continue
            if va not in allowed_sets[a] or (injective and used[va]):
                undo(trail)
                return None
            f[a] = va
            if injective:
                used[va] = True
            trail.append(a)
            assigned.append(a)
            for b in assigned:
                vb = f[b]
                for p, q, vp, vq in ((a, b, va, vb), (b, a, vb, va)):
                    c = tx[p][q]
                    vc = ty[vp][vq]
                    if f[c] == -1:
                        queue.append((c, vc))
                    elif f[c] != vc:
                        undo(trail)
                        return None
        return trail

    def rec():
        x = next((i for i in range(n) if f[i] == -1), None)
        if x is None:
            results.append(tuple(f))
            if limit is not None and len(results) > limit:
                raise CapExceeded(f"more than {limit} maps")
            return first_only
        for v in allowed[x]:
            trail = assign(x, v)
            if trail is None:
                continue
            stop = rec()
            undo(trail)
            if stop:
                return True
        return False

    rec()
    return results


def automorphism_group(X: FiniteQuandle, max_size: int | None = None, limit: int | None = None) -> list[Permutation]:
    """All automorphisms of X, identity first."""
    max_size = DEFAULT_MAX_QUANDLE if max_size is None else max_size
    if X.size > max_size:
        raise CapExceeded(f"quandle of size {X.size} exceeds search cap {max_size}")
    fp = fingerprints(X)
    allowed = [[y for y in X.elements() if fp[y] == fp[x]] for x in X.elements()]
    auts = _search(X, X, allowed, injective=True, limit=DEFAULT_MAX_MAPS if limit is None else limit)
    ident = tuple(X.elements())
    auts.sort(key=lambda p: (p != ident, p))
    return auts


def stabilizer_aut(X: FiniteQuandle, x0: int, auts: list[Permutation] | None = None) -> list[Permutation]:
    if not 0 <= x0 < X.size:
        raise ValueError("base point out of range")
    auts = automorphism_group(X) if auts is None else auts
    return [p for p in auts if p[x0] == x0]


def quandle_homs(X: FiniteQuandle, Y: FiniteQuandle, limit: int | None = None) -> list[tuple[int, ...]]:
    """Every map f with f(x*y) = f(x)*f(y)."""
    allowed = [list(Y.elements()) for _ in X.elements()]
    return _search(X, Y, allowed, injective=False, limit=DEFAULT_MAX_MAPS if limit is None else limit)


def are_isomorphic(X: FiniteQuandle, Y: FiniteQuandle, max_size: int | None = None) -> Permutation | None:
    """An isomorphism X → Y, or None when none exists."""
    if X.size != Y.size:
        return None
    max_size = 4 * DEFAULT_MAX_QUANDLE if max_size is None else max_size
    if X.size > max_size:
        raise CapExceeded(f"quandle of size {X.size} exceeds isomorphism cap {max_size}")
    fx, fy = fingerprints(X), fingerprints(Y)
    if Counter(fx) != Counter(fy):
        return None
    allowed = [[y for y in Y.elements() if fy[y] == fx[x]] for x in X.elements()]
    found = _search(X, Y, allowed, injective=True, limit=None, first_only=True)
    return found[0] if found else None


def relabel(X: FiniteQuandle, sigma: Sequence[int]) -> FiniteQuandle:
    """The quandle transported along the bijection sigma (so sigma is an isomorphism)."""
    inv = perm_inverse(sigma)
    n = X.size
    table = [[sigma[X.table[inv[a]][inv[b]]] for b in range(n)] for a in range(n)]
    return _unchecked(table, X.name)


def compose_maps(f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return compose(f, g)
