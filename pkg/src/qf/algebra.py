"""Finite groups on index sets, permutations, exact integer matrices and Smith normal form.

Elements of every group are the integers ``0..n-1``; constructors always put the
identity at index 0.  Permutations are plain tuples ``p`` with ``p[i]`` the image
of ``i``; composition follows function notation, ``compose(p, q)(i) == p[q[i]]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapExceeded, NoIdentity, NoInverse, NotAHomomorphism, NotAssociative, ValidationError

Permutation = tuple

DEFAULT_MAX_GROUP_ORDER = 512
DEFAULT_MAX_SEARCH = 10**6


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def identity_perm(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """Return p∘q."""
    return tuple(p[i] for i in q)


def perm_inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(images: Sequence[int], n: int | None = None) -> bool:
    n = len(images) if n is None else n
    return len(images) == n and sorted(images) == list(range(n))


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        k, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = p[i]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


def perm_closure(generators: Iterable[Sequence[int]], n: int, cap: int | None = None) -> list[Permutation]:
    """All products of the generators, identity first, in breadth-first order."""
    gens = [tuple(g) for g in generators]
    ident = identity_perm(n)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    order.append(q)
                    nxt.append(q)
                    if cap is not None and len(order) > cap:
                        raise CapExceeded(f"permutation group larger than {cap}")
        frontier = nxt
    return order


def orbits_of(generators: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Orbit partition of ``range(n)`` under the group generated by ``generators``."""
    gens = [tuple(g) for g in generators]
    label = [-1] * n
    parts: list[list[int]] = []
    for start in range(n):
        if label[start] >= 0:
            continue
        label[start] = len(parts)
        part = [start]
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if label[y] < 0:
                    label[y] = len(parts)
                    part.append(y)
                    stack.append(y)
        parts.append(sorted(part))
    return parts


# ---------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its Cayley table, ``table[a][b] = a·b``."""

    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def prod(self, *elems: int) -> int:
        x = self.identity
        for e in elems:
            x = self.table[x][e]
        return x

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.element_order(a) for a in self.elements())

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = len(t)
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def conjugate(self, a: int, b: int) -> int:
        """b⁻¹ a b."""
        t = self.table
        return t[t[self.inverse[b]][a]][b]

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.size})"


def make_group(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Validate a Cayley table and wrap it; raises with a witness on failure."""
    n = len(table)
    if n == 0:
        raise ValidationError("empty table", witness=None, kind="ShapeMismatch")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for a, row in enumerate(rows):
        if len(row) != n:
            raise ValidationError(f"row {a} has length {len(row)}, expected {n}", witness=(a,), kind="ShapeMismatch")
        for b, v in enumerate(row):
            if not 0 <= v < n:
                raise ValidationError(f"entry ({a},{b}) = {v} out of range", witness=(a, b), kind="ShapeMismatch")
    identity = next((e for e in range(n)
                     if all(rows[e][a] == a and rows[a][e] == a for a in range(n))), None)
    if identity is None:
        raise NoIdentity("no two-sided identity element", witness=None)
    inverse = []
    for a in range(n):
        b = next((b for b in range(n) if rows[a][b] == identity and rows[b][a] == identity), None)
        if b is None:
            raise NoInverse(f"element {a} has no inverse", witness=(a,))
        inverse.append(b)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            rab, rb = rows[ab], rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative(f"(a·b)·c != a·(b·c) for {(a, b, c)}", witness=(a, b, c))
    return FiniteGroup(rows, identity, tuple(inverse), name)


def _group_from_mul(n: int, mul, name: str) -> FiniteGroup:
    table = tuple(tuple(mul(a, b) for b in range(n)) for a in range(n))
    inverse = tuple(next(b for b in range(n) if table[a][b] == 0) for a in range(n))
    return FiniteGroup(table, 0, inverse, name)


def _check_order(n: int, cap: int | None) -> None:
    cap = DEFAULT_MAX_GROUP_ORDER if cap is None else cap
    if n > cap:
        raise CapExceeded(f"group order {n} exceeds cap {cap}")


def cyclic_group(m: int, cap: int | None = None) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic group order must be positive")
    _check_order(m, cap)
    return _group_from_mul(m, lambda a, b: (a + b) % m, f"Z{m}")


def direct_product(G: FiniteGroup, H: FiniteGroup, cap: int | None = None) -> FiniteGroup:
    """G×H with (g, h) stored at index g·|H| + h."""
    if G.identity != 0 or H.identity != 0:
        raise ValueError("direct_product expects identity at index 0 in both factors")
    nh = H.size
    _check_order(G.size * nh, cap)

    def mul(a, b):
        g1, h1 = divmod(a, nh)
        g2, h2 = divmod(b, nh)
        return G.table[g1][g2] * nh + H.table[h1][h2]

    return _group_from_mul(G.size * nh, mul, f"{G.name}x{H.name}")


def dihedral_group(m: int, cap: int | None = None) -> FiniteGroup:
    """Order-2m dihedral group; s^f r^i is stored at index f·m + i."""
    if m < 1:
        raise ValueError("dihedral parameter must be positive")
    _check_order(2 * m, cap)

    def mul(a, b):
        f1, i = divmod(a, m)
        f2, j = divmod(b, m)
        # r^i s = s r^{-i}
        k = (j - i) if f2 else (i + j)
        return ((f1 + f2) % 2) * m + k % m

    return _group_from_mul(2 * m, mul, f"D{m}")


def symmetric_group(k: int, cap: int | None = None) -> FiniteGroup:
    """Permutations of range(k) in lexicographic order, product (a·b)(x) = a(b(x))."""
    if not 1 <= k <= 5:
        raise ValueError("symmetric_group supports 1 <= k <= 5")
    perms = list(itertools.permutations(range(k)))
    _check_order(len(perms), cap)
    index = {p: i for i, p in enumerate(perms)}
    return _group_from_mul(len(perms), lambda a, b: index[compose(perms[a], perms[b])], f"S{k}")


def klein_group() -> FiniteGroup:
    g = direct_product(cyclic_group(2), cyclic_group(2))
    return FiniteGroup(g.table, 0, g.inverse, "V4")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> list[int]:
    elems = {G.identity}
    frontier = [G.identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.table[x][g]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(elems)


def is_normal_subgroup(G: FiniteGroup, N: Iterable[int]) -> bool:
    Nset = set(N)
    if G.identity not in Nset:
        return False
    t = G.table
    if any(t[a][b] not in Nset for a in Nset for b in Nset):
        return False
    return all(G.conjugate(a, g) in Nset for a in Nset for g in G.elements())


def subgroup_as_group(G: FiniteGroup, elems: Iterable[int], name: str = "") -> tuple[FiniteGroup, list[int]]:
    """Restrict G to a subgroup; returns the subgroup on local indices and the embedding."""
    elems = sorted(set(elems))
    elems.remove(G.identity)
    embed = [G.identity] + elems
    local = {g: i for i, g in enumerate(embed)}
    try:
        table = tuple(tuple(local[G.table[a][b]] for b in embed) for a in embed)
        inverse = tuple(local[G.inverse[a]] for a in embed)
    except KeyError as exc:
        raise ValidationError("subset is not closed under the group law", witness=(exc.args[0],)) from None
    return FiniteGroup(table, 0, inverse, name), embed


def quotient_group(G: FiniteGroup, N: Iterable[int]) -> tuple[FiniteGroup, list[int], list[int]]:
    """G/N with cosets ordered by their least element.

    Returns ``(Q, pi, reps)``: ``pi[g]`` is the coset index of g and ``reps[c]`` the
    least element of coset c (so ``reps[0]`` is the identity when it is index 0).
    """
    N = sorted(set(N))
    if not is_normal_subgroup(G, N):
        raise ValidationError("subset is not a normal subgroup", witness=tuple(N))
    pi = [-1] * G.size
    reps: list[int] = []
    for g in G.elements():
        if pi[g] >= 0:
            continue
        for a in N:
            pi[G.table[g][a]] = len(reps)
        reps.append(g)
    k = len(reps)
    table = tuple(tuple(pi[G.table[reps[a]][reps[b]]] for b in range(k)) for a in range(k))
    ident = pi[G.identity]
    inverse = tuple(pi[G.inverse[reps[a]]] for a in range(k))
    return FiniteGroup(table, ident, inverse, f"{G.name}/N"), pi, reps


def is_group_hom(f: Sequence[int], G: FiniteGroup, H: FiniteGroup) -> bool:
    if len(f) != G.size or any(not 0 <= v < H.size for v in f):
        return False
    return all(f[G.table[a][b]] == H.table[f[a]][f[b]] for a in G.elements() for b in G.elements())


def check_group_hom(f: Sequence[int], G: FiniteGroup, H: FiniteGroup) -> None:
    if len(f) != G.size or any(not 0 <= v < H.size for v in f):
        raise NotAHomomorphism("map has the wrong shape", witness=None)
    for a in G.elements():
        for b in G.elements():
            if f[G.table[a][b]] != H.table[f[a]][f[b]]:
                raise NotAHomomorphism(f"f(ab) != f(a)f(b) at {(a, b)}", witness=(a, b))


def power_map(G: FiniteGroup, k: int) -> Permutation:
    return tuple(G.power(a, k) for a in G.elements())


def _generating_set(G: FiniteGroup) -> list[int]:
    """Greedy generators, largest element order first."""
    gens: list[int] = []
    span = {G.identity}
    for a in sorted(G.elements(), key=lambda x: (-G.orders[x], x)):
        if a not in span:
            gens.append(a)
            span = set(subgroup_closure(G, gens))
        if len(span) == G.size:
            break
    return gens


def _word_tree(G: FiniteGroup, gens: Sequence[int]) -> list[tuple[int, int]]:
    """BFS spanning tree: list of (element, parent, generator index) in BFS order."""
    order = [(G.identity, -1, -1)]
    seen = {G.identity}
    i = 0
    while i < len(order):
        x = order[i][0]
        for k, g in enumerate(gens):
            y = G.table[x][g]
            if y not in seen:
                seen.add(y)
                order.append((y, x, k))
        i += 1
    return order


def group_automorphisms(G: FiniteGroup, cap: int | None = None) -> list[Permutation]:
    """All automorphisms of G as permutations of its indices, identity first.

    Images of a generating set are chosen among elements of equal order; each
    choice is extended along a spanning tree and kept when it is a bijective
    homomorphism.
    """
    cap = DEFAULT_MAX_SEARCH if cap is None else cap
    _check_order(G.size, None)
    if G.size == 1:
        return [(0,)]
    gens = _generating_set(G)
    tree = _word_tree(G, gens)
    candidates = [[b for b in G.elements() if G.orders[b] == G.orders[g]] for g in gens]
    if math.prod(len(c) for c in candidates) > cap:
        raise CapExceeded("automorphism search space exceeds cap")
    t = G.table
    result = []
    for images in itertools.product(*candidates):
        f = [-1] * G.size
        f[G.identity] = G.identity
        for y, parent, k in tree[1:]:
            f[y] = t[f[parent]][images[k]]
        if len(set(f)) != G.size:
            continue
        if all(f[t[a][g]] == t[f[a]][f[g]] for a in G.elements() for g in gens):
            result.append(tuple(f))
    ident = identity_perm(G.size)
    result.sort(key=lambda p: (p != ident, p))
    return result


# ---------------------------------------------------------------------------
# exact integer matrices
# ---------------------------------------------------------------------------

class IntMatrix:
    """Dense matrix of Python ints (exact, no overflow)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None, cols: int | None = None):
        self.data = [[int(v) for v in row] for row in data]
        self.rows = len(self.data) if rows is None else rows
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        self.cols = cols
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("inconsistent matrix dimensions")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = cls.zeros(rows, cols)
        for i, v in enumerate(values):
            m.data[i][i] = v
        return m

    def copy(self) -> "IntMatrix":
        return IntMatrix([row[:] for row in self.data], self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self) -> str:
        return f"IntMatrix({self.data})"

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)],
                         self.cols, self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for row in self.data:
            nz = [(k, v) for k, v in enumerate(row) if v]
            out.append([sum(v * col[k] for k, v in nz) for col in ocols])
        return IntMatrix(out, self.rows, other.cols)

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.data]

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix([a + b for a, b in zip(self.data, other.data)], self.rows, self.cols + other.cols)

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [row[:] for row in self.data]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def tolist(self) -> list[list[int]]:
        return [row[:] for row in self.data]


@dataclass
class SmithForm:
    """D = U·M·V with U, V unimodular; ``U_inv``/``V_inv`` are filled when requested."""

    D: IntMatrix
    U: IntMatrix | None
    V: IntMatrix | None
    U_inv: IntMatrix | None = None
    V_inv: IntMatrix | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D.data[i][i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def __iter__(self):
        return iter((self.D, self.U, self.V))


def smith_normal_form(M: IntMatrix, *, u: bool = True, v: bool = True,
                      u_inv: bool = False, v_inv: bool = False) -> SmithForm:
    """Smith normal form over the integers with optional transform tracking."""
    m, n = M.rows, M.cols
    A = [row[:] for row in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if u else None
    Ui = [[int(i == j) for j in range(m)] for i in range(m)] if u_inv else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if v else None
    Vi = [[int(i == j) for j in range(n)] for i in range(n)] if v_inv else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j
        ri, rj = A[i], A[j]
        for k in range(n):
            if rj[k]:
                ri[k] += c * rj[k]
        if U is not None:
            ri, rj = U[i], U[j]
            for k in range(m):
                if rj[k]:
                    ri[k] += c * rj[k]
        if Ui is not None:
            for row in Ui:
                if row[i]:
                    row[j] -= c * row[i]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]
        if Ui is not None:
            for row in Ui:
                row[i] = -row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for row in A:
            if row[j]:
                row[i] += c * row[j]
        if V is not None:
            for row in V:
                if row[j]:
                    row[i] += c * row[j]
        if Vi is not None:
            ri, rj = Vi[i], Vi[j]
            for k in range(n):
                if ri[k]:
                    rj[k] -= c * ri[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                if i != t:
                    swap_rows(t, i)
                elif j != t:
                    swap_cols(t, j)
                continue
            bad = next((i for i in range(t + 1, m) if any(x % p for x in A[i][t + 1:])), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    wrap = lambda data, r, c: None if data is None else IntMatrix(data, r, c)
    return SmithForm(IntMatrix(A, m, n), wrap(U, m, m), wrap(V, n, n), wrap(Ui, m, m), wrap(Vi, n, n))


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Finitely generated abelian group ⊕ Z/d_i with d_1 | d_2 | …; 0 means a copy of Z."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        f = self.invariant_factors
        finite = [d for d in f if d]
        if any(d < 2 for d in finite) or any(f[i] == 0 and f[i + 1] != 0 for i in range(len(f) - 1)):
            raise ValueError(f"not a canonical invariant-factor list: {f}")
        if any(finite[i + 1] % finite[i] for i in range(len(finite) - 1)):
            raise ValueError(f"divisibility chain violated: {f}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> "AbelianGroupStructure":
        """Canonical form of a direct sum of cyclic groups of the given orders."""
        orders = list(orders)
        return cokernel_structure(IntMatrix.zeros(len(orders), 0), orders)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    @property
    def order(self) -> int | None:
        """Group order, or None for an infinite group."""
        return None if self.rank else math.prod(self.torsion)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join("Z" if d == 0 else f"Z_{d}" for d in self.invariant_factors)


def cokernel_structure(M: IntMatrix, modulus_vector: Sequence[int] | None = None) -> AbelianGroupStructure:
    """Structure of (⊕_i Z/modulus_i) / (column span of M); modulus 0 means Z."""
    moduli = [0] * M.rows if modulus_vector is None else [abs(int(x)) for x in modulus_vector]
    if len(moduli) != M.rows:
        raise ValueError("modulus vector length must equal the row count")
    extra = [mod for mod in moduli if mod]
    rel = M.copy()
    if extra:
        cols = []
        for i, mod in enumerate(moduli):
            if mod:
                c = [0] * M.rows
                c[i] = mod
                cols.append(c)
        rel = rel.hstack(IntMatrix([list(r) for r in zip(*cols)], M.rows, len(cols)))
    snf = smith_normal_form(rel, u=False, v=False)
    diag = snf.diagonal
    factors = [diag[i] if i < len(diag) else 0 for i in range(M.rows)]
    finite = [d for d in factors if d not in (0, 1)]
    zeros = [0] * sum(1 for d in factors if d == 0)
    return AbelianGroupStructure(tuple(finite + zeros))
