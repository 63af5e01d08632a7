"""Quandle (co)homology with coefficients in a finite abelian group, abelian extensions,
and the automorphism/cohomology exact sequence for them.

Coefficients are written additively.  A group A = Z/m_1 ⊕ … ⊕ Z/m_k is encoded by
mixed-radix indices (first factor most significant), so an element of A is an int
and maps on A are tuples of ints.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterator, Sequence

import numpy as np

from .algebra import (
    AbelianGroupStructure, FiniteGroup, IntMatrix, Permutation, compose, cyclic_group, direct_product,
    group_automorphisms, identity_perm, perm_inverse, trivial_group,
)
from .errors import CapExceeded, CocycleError, NotAHomomorphism
from .modular import CyclicCoefficientCohomology
from .quandle import FiniteQuandle, automorphism_group, is_quandle_hom, make_quandle
from .report import Report, make_report

DEFAULT_MAX_CHAINS = 20_000
DEFAULT_MAX_BRUTE = 2 * 10**6
DEFAULT_MAX_ENUM = 10**6

ADDITIVE_NOTE = "coefficients written additively: a sum here is a product in multiplicative notation"


# ---------------------------------------------------------------------------
# coefficient groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianCoefficients:
    """A = ⊕ Z/m_i, elements encoded as mixed-radix indices."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if any(m < 2 for m in self.factors):
            raise ValueError("cyclic factors must have order at least 2")

    @classmethod
    def cyclic(cls, m: int) -> "FiniteAbelianCoefficients":
        return cls(() if m == 1 else (m,))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def name(self) -> str:
        return "x".join(f"Z{m}" for m in self.factors) or "0"

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.factors):
            a, r = divmod(a, m)
            out.append(r)
        return tuple(reversed(out))

    def index(self, coords: Sequence[int]) -> int:
        a = 0
        for c, m in zip(coords, self.factors):
            a = a * m + c % m
        return a

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        cs = [self.coords(a) for a in self.elements()]
        return tuple(tuple(self.index([x + y for x, y in zip(cs[a], cs[b])]) for b in self.elements())
                     for a in self.elements())

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.index([-c for c in self.coords(a)]) for a in self.elements())

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def sum(self, *terms: int) -> int:
        return reduce(self.add, terms, 0)

    def scale(self, k: int, a: int) -> int:
        return self.index([k * c for c in self.coords(a)])

    def scalar_map(self, k: int) -> tuple[int, ...]:
        return tuple(self.scale(k, a) for a in self.elements())

    def as_group(self) -> FiniteGroup:
        if not self.factors:
            return trivial_group()
        G = reduce(direct_product, (cyclic_group(m) for m in self.factors))
        return FiniteGroup(G.table, G.identity, G.inverse, self.name)

    def is_endomorphism(self, f: Sequence[int]) -> bool:
        return len(f) == self.order and f[0] == 0 and all(
            f[self.add_table[a][b]] == self.add_table[f[a]][f[b]] for a in self.elements() for b in self.elements())

    @cached_property
    def automorphisms(self) -> tuple[Permutation, ...]:
        return tuple(group_automorphisms(self.as_group()))


def parse_coefficients(text: str) -> FiniteAbelianCoefficients:
    """'Z2', 'Z2xZ4', 'Z1' or '0' (trivial)."""
    text = text.strip()
    if text in ("0", "Z1", "1"):
        return FiniteAbelianCoefficients(())
    parts = [p.strip() for p in text.replace("×", "x").split("x") if p.strip()]
    orders = []
    for p in parts:
        if not p.upper().startswith("Z") or not p[1:].isdigit():
            raise ValueError(f"cannot parse coefficient group {text!r}")
        m = int(p[1:])
        if m < 1:
            raise ValueError("cyclic order must be positive")
        if m > 1:
            orders.append(m)
    return FiniteAbelianCoefficients(tuple(orders))


# ---------------------------------------------------------------------------
# chain complex
# ---------------------------------------------------------------------------

def nondegenerate_tuples(size: int, n: int) -> list[tuple[int, ...]]:
    """n-tuples with no two equal neighbours, lexicographic; degree 0 is the empty tuple."""
    if n == 0:
        return [()]
    out = [(x,) for x in range(size)]
    for _ in range(n - 1):
        out = [t + (x,) for t in out for x in range(size) if x != t[-1]]
    return out


def _count_tuples(size: int, n: int) -> int:
    return 1 if n == 0 else size * (size - 1) ** (n - 1)


def boundary_matrix(X: FiniteQuandle, n: int, cap: int | None = None) -> IntMatrix:
    """∂_n : C_n → C_{n-1} on non-degenerate bases (rows: degree n-1, columns: degree n)."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    cap = DEFAULT_MAX_CHAINS if cap is None else cap
    if _count_tuples(X.size, n) > cap:
        raise CapExceeded(f"C_{n} has {_count_tuples(X.size, n)} basis elements, cap {cap}")
    src = nondegenerate_tuples(X.size, n)
    dst = nondegenerate_tuples(X.size, n - 1)
    row = {t: i for i, t in enumerate(dst)}
    M = IntMatrix.zeros(len(dst), len(src))
    if n == 1:
        return M
    op = X.table

    def put(t, j, c):
        if all(t[k] != t[k + 1] for k in range(len(t) - 1)):
            M.data[row[t]][j] += c

    for j, t in enumerate(src):
        for i in range(1, n):
            sign = 1 if i % 2 == 1 else -1  # (-1)^(i+1) for 0-based position i
            xi = t[i]
            put(t[:i] + t[i + 1:], j, sign)
            put(tuple(op[a][xi] for a in t[:i]) + t[i + 1:], j, -sign)
    return M


def coboundary_matrix(X: FiniteQuandle, n: int, cap: int | None = None) -> IntMatrix:
    """δ^n : C^n → C^{n+1}, equal to (-1)^n ∂_{n+1}^T."""
    B = boundary_matrix(X, n + 1, cap).T
    if n % 2:
        B = IntMatrix([[-v for v in r] for r in B.data], B.rows, B.cols)
    return B


class CochainCohomology:
    """Cohomology of one degree of an integer cochain complex with coefficients in A.

    Computed per cyclic factor of A with exact Smith forms.  Cochains are tuples
    of A-indices over ``basis``; classes are coordinate tuples in ⊕ Z/factors.
    """

    def __init__(self, outgoing: IntMatrix, incoming: IntMatrix, A: FiniteAbelianCoefficients,
                 basis: Sequence[tuple], lower_basis: Sequence[tuple], size: int):
        self.A = A
        self.size = size
        self.basis = list(basis)
        self.index = {t: i for i, t in enumerate(self.basis)}
        self.lower_basis = list(lower_basis)
        self.parts = [CyclicCoefficientCohomology(outgoing, incoming, m) for m in A.factors]

    # -- structure ----------------------------------------------------------
    @property
    def factors(self) -> tuple[int, ...]:
        return tuple(f for p in self.parts for f in p.factors)

    @property
    def structure(self) -> AbelianGroupStructure:
        return AbelianGroupStructure.from_cyclic_orders(self.factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def cocycle_count(self) -> int:
        return math.prod(p.cocycle_count for p in self.parts)

    # -- conversions --------------------------------------------------------
    def _split(self, vec: Sequence[int]) -> list[list[int]]:
        cs = [self.A.coords(a) for a in vec]
        return [[c[i] for c in cs] for i in range(len(self.A.factors))]

    def _join(self, parts: Sequence[Sequence[int]], length: int) -> tuple[int, ...]:
        if not parts:
            return (0,) * length
        return tuple(self.A.index(cs) for cs in zip(*parts))

    def to_table(self, vec: Sequence[int]) -> list[list[int]]:
        if len(self.basis[0]) != 2:
            raise ValueError("table form exists for degree 2 only")
        size = self.size
        table = [[0] * size for _ in range(size)]
        for (x, y), a in zip(self.basis, vec):
            table[x][y] = a
        return table

    def from_table(self, table: Sequence[Sequence[int]]) -> tuple[int, ...]:
        if len(self.basis[0]) != 2:
            raise ValueError("table form exists for degree 2 only")
        return tuple(table[x][y] for x, y in self.basis)

    # -- cochain operations -------------------------------------------------
    def is_cocycle(self, vec: Sequence[int]) -> bool:
        return all(p.is_cocycle(v) for p, v in zip(self.parts, self._split(vec)))

    def coboundary(self, lam: Sequence[int]) -> tuple[int, ...]:
        return self._join([p.coboundary(v) for p, v in zip(self.parts, self._split(lam))], len(self.basis))

    def solve_coboundary(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """λ of degree n-1 with δλ = vec, or None."""
        sols = []
        for p, v in zip(self.parts, self._split(vec)):
            s = p.solve_coboundary(v)
            if s is None:
                return None
            sols.append(s)
        return self._join(sols, len(self.lower_basis))

    def class_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        if not self.is_cocycle(vec):
            raise CocycleError("not a cocycle", kind="NotACocycle")
        return tuple(c for p, v in zip(self.parts, self._split(vec)) for c in p.class_coordinates(v))

    def representative(self, coords: Sequence[int]) -> tuple[int, ...]:
        parts, pos = [], 0
        for p in self.parts:
            k = len(p.factors)
            parts.append(p.representative(coords[pos:pos + k]))
            pos += k
        return self._join(parts, len(self.basis))

    def classes(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(f) for f in self.factors)))

    def representatives(self, cap: int = 4096) -> list[tuple[int, ...]]:
        if self.order > cap:
            raise CapExceeded(f"{self.order} classes exceed representative cap {cap}")
        return [self.representative(c) for c in self.classes()]

    def cocycles(self, cap: int | None = DEFAULT_MAX_ENUM) -> Iterator[tuple[int, ...]]:
        if cap is not None and self.cocycle_count > cap:
            raise CapExceeded(f"{self.cocycle_count} cocycles exceed cap {cap}")
        per_part = [list(p.cocycles()) for p in self.parts]
        for combo in itertools.product(*per_part):
            yield self._join(combo, len(self.basis))

    def add_classes(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def neg_class(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(-x % f for x, f in zip(a, self.factors))

    def sub_classes(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.add_classes(a, self.neg_class(b))

    @property
    def zero_class(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)


class QuandleCohomology(CochainCohomology):
    """H^n(X; A) on the non-degenerate n-tuple basis."""

    def __init__(self, X: FiniteQuandle, n: int, A: FiniteAbelianCoefficients, cap: int | None = None):
        if n < 1:
            raise ValueError("degree must be at least 1")
        self.X, self.n = X, n
        outgoing = coboundary_matrix(X, n, cap)
        incoming = coboundary_matrix(X, n - 1, cap) if n > 1 else IntMatrix.zeros(X.size, 1)
        super().__init__(outgoing, incoming, A, nondegenerate_tuples(X.size, n),
                         nondegenerate_tuples(X.size, n - 1), X.size)


def cohomology_group(X: FiniteQuandle, n: int, A: FiniteAbelianCoefficients,
                     cap: int | None = None) -> QuandleCohomology:
    if n not in (1, 2, 3):
        raise ValueError("degrees 1, 2 and 3 are supported")
    return QuandleCohomology(X, n, A, cap)


# ---------------------------------------------------------------------------
# brute-force oracle for degree 2
# ---------------------------------------------------------------------------

@dataclass
class BruteForceH2:
    cocycles: np.ndarray     # rows are A-index vectors over the off-diagonal pairs
    coboundaries: np.ndarray
    structure: AbelianGroupStructure

    @property
    def order(self) -> int:
        return len(self.cocycles) // len(self.coboundaries)


def _all_vectors(q: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q,) * k, dtype=np.int64).reshape(k, -1).T
    return np.ascontiguousarray(grids)


def _structure_from_torsion_counts(order: int, count_killed_by) -> AbelianGroupStructure:
    """Invariant factors of a finite abelian group from |H[d]| = #{h : d·h = 0}."""
    cyclic = []
    n = order
    p = 2
    primes = []
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    for p in primes:
        total = 0
        v = order
        while v % p == 0:
            v //= p
            total += 1
        prev, k = 0, 1
        ge = []  # number of cyclic p-factors of order >= p^k
        while prev < total:
            c = round(math.log(count_killed_by(p ** k), p))
            ge.append(c - prev)
            prev = c
            k += 1
        ge.append(0)
        for k in range(len(ge) - 1):
            cyclic += [p ** (k + 1)] * (ge[k] - ge[k + 1])
    return AbelianGroupStructure.from_cyclic_orders(cyclic)


def enumerate_Z2_B2(X: FiniteQuandle, A: FiniteAbelianCoefficients, cap: int | None = None) -> BruteForceH2:
    """Every 2-cocycle and 2-coboundary by exhaustion, straight from the defining identities.

    Cocycles: α_{x,y} + α_{x*y,z} = α_{x,z} + α_{x*z,y*z} with α_{x,x} = 0.
    Coboundaries: (x,y) ↦ λ_{x*y} − λ_x for λ ∈ A^X.
    The structure of Z²/B² is recovered from the counts #{α ∈ Z² : dα ∈ B²}.
    """
    n, q = X.size, A.order
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    cap = DEFAULT_MAX_BRUTE if cap is None else cap
    if q ** len(pairs) > cap or q ** n > cap:
        raise CapExceeded(f"{q}^{len(pairs)} candidate cochains exceed cap {cap}")
    add = np.array(A.add_table, dtype=np.int64).reshape(q, q)
    neg = np.array(A.neg_table, dtype=np.int64)
    cand = _all_vectors(q, len(pairs))
    col = {p: i for i, p in enumerate(pairs)}
    zero = np.zeros(len(cand), dtype=np.int64)

    def val(x, y):
        return zero if x == y else cand[:, col[(x, y)]]

    ok = np.ones(len(cand), dtype=bool)
    op = X.table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                lhs = add[val(x, y), val(op[x][y], z)]
                rhs = add[val(x, z), val(op[x][z], op[y][z])]
                ok &= lhs == rhs
    Z = cand[ok]

    lams = _all_vectors(q, n)
    B = np.stack([add[lams[:, op[x][y]], neg[lams[:, x]]] for x, y in pairs], axis=1) if pairs else \
        np.zeros((len(lams), 0), dtype=np.int64)
    B = np.unique(B, axis=0)

    weights = q ** np.arange(len(pairs), dtype=np.int64)
    bkeys = np.sort(B @ weights)
    order = len(Z) // len(B)
    scale = {}

    def killed(d):
        if d not in scale:
            smap = np.array(A.scalar_map(d), dtype=np.int64)
            keys = smap[Z] @ weights
            scale[d] = int(np.isin(keys, bkeys).sum()) // len(B)
        return scale[d]

    return BruteForceH2(Z, B, _structure_from_torsion_counts(order, killed))


# ---------------------------------------------------------------------------
# action of Aut(X) × Aut(A)
# ---------------------------------------------------------------------------

Pair = tuple[Permutation, Permutation]


def act_on_cochain2(phi: Sequence[int], theta: Sequence[int], table: Sequence[Sequence[int]]) -> list[list[int]]:
    """(φ,θ)·α with value θ(α_{φ⁻¹x, φ⁻¹y}) at (x, y)."""
    pi = perm_inverse(phi)
    n = len(table)
    return [[theta[table[pi[x]][pi[y]]] for y in range(n)] for x in range(n)]


def _check_pair(H: QuandleCohomology, phi, theta) -> None:
    if sorted(phi) != list(H.X.elements()) or not is_quandle_hom(phi, H.X, H.X):
        raise NotAHomomorphism("PhiNotAutomorphism: phi is not an automorphism of the quandle")
    if sorted(theta) != list(H.A.elements()) or not H.A.is_endomorphism(theta):
        raise NotAHomomorphism("theta is not an automorphism of the coefficient group")


def act_on_class(H: QuandleCohomology, phi: Sequence[int], theta: Sequence[int], cls: Sequence[int],
                 verify: bool = False) -> tuple[int, ...]:
    """Class of θ(α_{φ⁻¹x,φ⁻¹y}); with ``verify`` the answer is recomputed from a shifted representative."""
    _check_pair(H, phi, theta)
    rep = H.representative(cls)
    out = H.class_of(H.from_table(act_on_cochain2(phi, theta, H.to_table(rep))))
    if verify:
        lam = tuple(x % H.A.order for x in range(H.X.size))
        shifted = tuple(H.A.add(a, b) for a, b in zip(rep, H.coboundary(lam)))
        again = H.class_of(H.from_table(act_on_cochain2(phi, theta, H.to_table(shifted))))
        if again != out:
            raise AssertionError("action depends on the representative")
    return out


def theta_map(H: QuandleCohomology, base_cls: Sequence[int], phi: Sequence[int], theta: Sequence[int]) -> tuple[int, ...]:
    """[α] − (φ,θ)·[α]: the unique class translating (φ,θ)·[α] back to [α]."""
    moved = act_on_class(H, phi, theta, base_cls)
    out = H.sub_classes(base_cls, moved)
    assert H.add_classes(out, moved) == tuple(base_cls)
    return out


class ClassAction:
    """Aut(X) × Aut(A) acting on the classes of H²(X; A), tabulated once."""

    def __init__(self, H: QuandleCohomology, auts_X: Sequence[Permutation] | None = None,
                 auts_A: Sequence[Permutation] | None = None):
        self.H = H
        auts_X = list(automorphism_group(H.X) if auts_X is None else auts_X)
        auts_A = list(H.A.automorphisms if auts_A is None else auts_A)
        self.group: list[Pair] = [(p, t) for p in auts_X for t in auts_A]
        self.position = {g: i for i, g in enumerate(self.group)}
        self.classes = H.classes()
        self.class_index = {c: i for i, c in enumerate(self.classes)}
        reps = [H.to_table(H.representative(c)) for c in self.classes]
        self.perm = []
        for phi, theta in self.group:
            self.perm.append(tuple(self.class_index[H.class_of(H.from_table(act_on_cochain2(phi, theta, r)))]
                                   for r in reps))

    def mul(self, g: Pair, h: Pair) -> Pair:
        return compose(g[0], h[0]), compose(g[1], h[1])

    def act(self, g: Pair, cls: Sequence[int]) -> tuple[int, ...]:
        return self.classes[self.perm[self.position[g]][self.class_index[tuple(cls)]]]

    def theta(self, base: Sequence[int], g: Pair) -> tuple[int, ...]:
        return self.H.sub_classes(base, self.act(g, base))

    def stabilizer(self, cls: Sequence[int]) -> list[Pair]:
        return [g for g in self.group if self.act(g, cls) == tuple(cls)]


# ---------------------------------------------------------------------------
# abelian extensions and Aut_A(E)
# ---------------------------------------------------------------------------

def cocycle2_violation(X: FiniteQuandle, A: FiniteAbelianCoefficients, table) -> tuple | None:
    """Witness (x,) for a non-zero diagonal or (x,y,z) for a failed cocycle identity."""
    n = X.size
    for x in range(n):
        if table[x][x] != 0:
            return (x,)
    op, add = X.table, A.add_table
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if add[table[x][y]][table[op[x][y]][z]] != add[table[x][z]][table[op[x][z]][op[y][z]]]:
                    return (x, y, z)
    return None


def check_cocycle2(X: FiniteQuandle, A: FiniteAbelianCoefficients, table) -> None:
    bad = cocycle2_violation(X, A, table)
    if bad is not None:
        raise CocycleError(f"NotACocycle: quandle 2-cocycle condition fails at {bad}", witness=bad,
                           kind="NotACocycle")


def build_abelian_extension(X: FiniteQuandle, A: FiniteAbelianCoefficients, table) -> FiniteQuandle:
    """(x,s)*(y,t) = (x*y, s + α_{x,y}) on indices x·|A| + s."""
    check_cocycle2(X, A, table)
    m = A.order
    N = X.size * m
    out = [[X.table[a // m][b // m] * m + A.add_table[a % m][table[a // m][b // m]] for b in range(N)]
           for a in range(N)]
    return make_quandle(out, f"{X.name}x_{A.name}")


def cohomologous_extension_map(X: FiniteQuandle, A: FiniteAbelianCoefficients,
                               lam: Sequence[int]) -> Permutation:
    """(x,s) ↦ (x, s + λ_x), an isomorphism E_α → E_{α+δλ}."""
    m = A.order
    return tuple(x * m + A.add_table[s][lam[x]] for x in range(X.size) for s in range(m))


@dataclass(frozen=True)
class AbelianExtensionAutomorphism:
    """ψ(x,s) = (φ(x), λ_x + θ(s))."""

    phi: Permutation
    theta: Permutation
    lam: tuple[int, ...]
    A: FiniteAbelianCoefficients = field(compare=False, repr=False)

    def as_permutation(self) -> Permutation:
        m = self.A.order
        add = self.A.add_table
        return tuple(self.phi[x] * m + add[self.lam[x]][self.theta[s]] for x in range(len(self.phi)) for s in range(m))

    def __mul__(self, other: "AbelianExtensionAutomorphism") -> "AbelianExtensionAutomorphism":
        add = self.A.add_table
        lam = tuple(add[self.lam[other.phi[x]]][self.theta[other.lam[x]]] for x in range(len(self.phi)))
        return AbelianExtensionAutomorphism(compose(self.phi, other.phi), compose(self.theta, other.theta), lam, self.A)


def aut_A(X: FiniteQuandle, A: FiniteAbelianCoefficients, table, E: FiniteQuandle | None = None,
          auts_X: Sequence[Permutation] | None = None, cap: int | None = None) -> list[AbelianExtensionAutomorphism]:
    """Every ψ(x,s) = (φ(x), λ_x + θ(s)) that is an automorphism of E, by exhaustion."""
    E = build_abelian_extension(X, A, table) if E is None else E
    auts_X = automorphism_group(X) if auts_X is None else auts_X
    auts_A = A.automorphisms
    total = len(auts_X) * len(auts_A) * A.order ** X.size
    cap = DEFAULT_MAX_ENUM if cap is None else cap
    if total > cap:
        raise CapExceeded(f"{total} candidate maps exceed cap {cap}")
    out = []
    for phi in auts_X:
        for theta in auts_A:
            for lam in itertools.product(A.elements(), repeat=X.size):
                psi = AbelianExtensionAutomorphism(phi, theta, lam, A)
                if is_quandle_hom(psi.as_permutation(), E, E):
                    out.append(psi)
    return out


def one_cocycles(X: FiniteQuandle, A: FiniteAbelianCoefficients) -> list[tuple[int, ...]]:
    """λ: X → A with λ_x = λ_{x*y}, by exhaustion."""
    op = X.table
    return [lam for lam in itertools.product(A.elements(), repeat=X.size)
            if all(lam[x] == lam[op[x][y]] for x in X.elements() for y in X.elements())]


def verify_wells_abelian(X: FiniteQuandle, A: FiniteAbelianCoefficients, table,
                         action: ClassAction | None = None, cap: int | None = None) -> Report:
    """1 → Z¹(X;A) → Aut_A(E) → Aut(X)×Aut(A) → H²(X;A) checked by exhaustion.

    (a) Ker Ψ has φ = id, θ = id and its λ are exactly Z¹; (b) Im Ψ is the
    stabiliser of [α], equivalently Θ⁻¹(0); (c) |Aut_A(E)| = |Z¹|·|stabiliser|.
    """
    started = time.perf_counter()
    check_cocycle2(X, A, table)
    H = action.H if action is not None else QuandleCohomology(X, 2, A)
    action = ClassAction(H) if action is None else action
    E = build_abelian_extension(X, A, table)
    group = aut_A(X, A, table, E, cap=cap)
    ident = (identity_perm(X.size), identity_perm(A.order))

    perms = {g.as_permutation() for g in group}
    closed = all((g * h).as_permutation() in perms for g in group for h in group)
    hom = all(((g * h).phi, (g * h).theta) == action.mul((g.phi, g.theta), (h.phi, h.theta))
              for g in group for h in group)

    kernel = {g.lam for g in group if (g.phi, g.theta) == ident}
    z1 = set(one_cocycles(X, A))
    h1 = QuandleCohomology(X, 1, A)
    kernel_ok = kernel == z1 and len(z1) == h1.cocycle_count

    cls = H.class_of(H.from_table(table))
    image = {(g.phi, g.theta) for g in group}
    stab = set(action.stabilizer(cls))
    theta_zero = {g for g in action.group if action.theta(cls, g) == H.zero_class}
    image_ok = image == stab == theta_zero
    order_ok = len(group) == len(z1) * len(stab)
    checks = {"psi_homomorphism": hom, "closed": closed, "kernel_is_Z1": kernel_ok,
              "image_is_stabilizer": image_ok, "order_identity": order_ok}
    data = {"class": list(cls), "H2": list(H.factors), "aut_A_E": len(group), "Z1": len(z1),
            "stabilizer": len(stab), "aut_X_x_aut_A": len(action.group), "note": ADDITIVE_NOTE}
    witness = None
    if not image_ok:
        witness = {"image_minus_stabilizer": [list(map(list, g)) for g in image - stab][:3],
                   "stabilizer_minus_image": [list(map(list, g)) for g in stab - image][:3]}
    return make_report("wells-abelian", checks, data, witness, started)


def orbit_lower_bound(X: FiniteQuandle, A: FiniteAbelianCoefficients, table,
                      action: ClassAction | None = None) -> Report:
    """|Aut(X)×Aut(A)| / |stabiliser of [α]| ≤ |H²(X;A)|, with orbit·stabiliser = group order."""
    started = time.perf_counter()
    action = ClassAction(QuandleCohomology(X, 2, A)) if action is None else action
    H = action.H
    cls = H.class_of(H.from_table(table))
    stab = action.stabilizer(cls)
    orbit = {action.act(g, cls) for g in action.group}
    bound = len(action.group) // len(stab)
    checks = {"orbit_stabilizer": len(orbit) * len(stab) == len(action.group),
              "bound_le_order": bound <= H.order}
    return make_report("orbit-bound", checks, {"bound": bound, "actual": H.order, "orbit": len(orbit)}, None, started)


def check_theta_derivation(X: FiniteQuandle, A: FiniteAbelianCoefficients, table,
                           action: ClassAction | None = None) -> Report:
    """Θ(g₁g₂) = Θ(g₁) + g₁·Θ(g₂) for all pairs, and Θ_{[α']} = Θ_{[α]} − [β] + g·[β] for some [β], for every α'."""
    started = time.perf_counter()
    action = ClassAction(QuandleCohomology(X, 2, A)) if action is None else action
    H = action.H
    base = H.class_of(H.from_table(table))
    theta = {g: action.theta(base, g) for g in action.group}
    bad_pair = None
    for g1 in action.group:
        for g2 in action.group:
            lhs = theta[action.mul(g1, g2)]
            rhs = H.add_classes(theta[g1], action.act(g1, theta[g2]))
            if lhs != rhs:
                bad_pair = (g1, g2)
                break
        if bad_pair:
            break
    inner_ok = True
    bad_other = None
    for other in action.classes:
        theta2 = {g: action.theta(other, g) for g in action.group}
        found = [beta for beta in action.classes
                 if all(theta2[g] == H.add_classes(H.sub_classes(theta[g], beta), action.act(g, beta))
                        for g in action.group)]
        expected = H.sub_classes(base, other)
        if expected not in found:
            inner_ok = False
            bad_other = other
            break
    checks = {"derivation": bad_pair is None, "inner_difference": inner_ok}
    witness = None
    if bad_pair:
        witness = {"pair": [list(map(list, g)) for g in bad_pair]}
    elif bad_other is not None:
        witness = {"other_class": list(bad_other)}
    return make_report("theta-derivation", checks,
                       {"group": len(action.group), "classes": len(action.classes), "class": list(base)},
                       witness, started)


def semidirect_action_check(X: FiniteQuandle, A: FiniteAbelianCoefficients, action: ClassAction | None = None,
                            cap: int = 2 * 10**6) -> Report:
    """H² ⋊ (Aut(X)×Aut(A)) acts on H² by ([α], g)·[β] = [α] + g·[β]."""
    started = time.perf_counter()
    action = ClassAction(QuandleCohomology(X, 2, A)) if action is None else action
    H = action.H
    classes = action.classes
    elems = [(a, g) for a in classes for g in action.group]
    work = len(elems) ** 2 * len(classes)
    if work > cap:
        raise CapExceeded(f"{work} action evaluations exceed cap {cap}")

    def act(e, beta):
        return H.add_classes(e[0], action.act(e[1], beta))

    def mul(e1, e2):
        return H.add_classes(e1[0], action.act(e1[1], e2[0])), action.mul(e1[1], e2[1])

    ident_g = action.group[0]
    identity_ok = all(act((H.zero_class, ident_g), b) == b for b in classes)
    translation_ok = all(act((a, ident_g), b) == H.add_classes(a, b) for a in classes for b in classes)
    additive_ok = all(action.act(g, H.add_classes(a, b)) == H.add_classes(action.act(g, a), action.act(g, b))
                      for g in action.group for a in classes for b in classes)
    compat_ok = all(act(mul(e1, e2), b) == act(e1, act(e2, b)) for e1 in elems for e2 in elems for b in classes)
    checks = {"identity": identity_ok, "translation": translation_ok, "by_automorphisms": additive_ok,
              "compatibility": compat_ok}
    return make_report("semidirect-action", checks, {"elements": len(elems), "classes": len(classes)}, None, started)
