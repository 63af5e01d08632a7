"""Homogeneous quandle modules, factor sets, group 2-cohomology with trivial action, and
the maps Λ: H²(G;A)_sym → factor-set classes over Core(G) and Γ: H²(G;A) → H²(Conj(G);A).

Everything is additive: the module maps ā, b̄ are endomorphisms of A stored as
image tuples, and cocycles are tables of A-indices.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Sequence

from .algebra import FiniteGroup, IntMatrix, check_group_hom, compose
from .cohomology import (
    ADDITIVE_NOTE, CochainCohomology, FiniteAbelianCoefficients, QuandleCohomology, cocycle2_violation,
)
from .errors import CapExceeded, CocycleError, DomainError, ValidationError
from .quandle import FiniteQuandle, conj_quandle, core_quandle, make_quandle
from .report import Report, make_report

DEFAULT_MAX_LAMBDA = 10**6

Endo = tuple[int, ...]


# ---------------------------------------------------------------------------
# modules and factor sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomogeneousQuandleModule:
    """``a_maps[x][y]`` is ā_{x,y}; ``b_maps[y][x]`` is b̄_{y,x}; both A → A."""

    base: FiniteQuandle
    A: FiniteAbelianCoefficients
    a_maps: tuple[tuple[Endo, ...], ...]
    b_maps: tuple[tuple[Endo, ...], ...]


def constant_module(X: FiniteQuandle, A: FiniteAbelianCoefficients, a: Endo, b: Endo) -> HomogeneousQuandleModule:
    n = X.size
    return HomogeneousQuandleModule(X, A, tuple((tuple(a),) * n for _ in range(n)),
                                    tuple((tuple(b),) * n for _ in range(n)))


def trivial_module(X: FiniteQuandle, A: FiniteAbelianCoefficients) -> HomogeneousQuandleModule:
    """ā = id, b̄ = 0."""
    return constant_module(X, A, tuple(A.elements()), (0,) * A.order)


def negation_doubling_module(X: FiniteQuandle, A: FiniteAbelianCoefficients) -> HomogeneousQuandleModule:
    """ā(s) = −s, b̄(s) = 2s for every pair."""
    return constant_module(X, A, A.scalar_map(-1), A.scalar_map(2))


def module_violation(mod: HomogeneousQuandleModule) -> tuple[str, tuple] | None:
    """None for a valid module, else (identity name, witness).

    Identity names: ``a_square`` ā_{x*y,z}ā_{x,y} = ā_{x*z,y*z}ā_{x,z};
    ``ab_square`` ā_{x*y,z}b̄_{y,x} = b̄_{y*z,x*z}ā_{y,z};
    ``b_split`` b̄_{z,x*y}(s) = ā_{x*z,y*z}b̄_{z,x}(s) + b̄_{y*z,x*z}b̄_{z,y}(s);
    ``diagonal`` ā_{z,z}(s) + b̄_{z,z}(s) = s.
    """
    X, A, a, b = mod.base, mod.A, mod.a_maps, mod.b_maps
    n, op, add = X.size, X.table, A.add_table
    for x in range(n):
        for y in range(n):
            if not A.is_endomorphism(a[x][y]) or sorted(a[x][y]) != list(A.elements()):
                return "a_invertible", (x, y)
            if not A.is_endomorphism(b[y][x]):
                return "b_endomorphism", (y, x)
    for z in range(n):
        for s in A.elements():
            if add[a[z][z][s]][b[z][z][s]] != s:
                return "diagonal", (z, s)
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz, yz = op[x][y], op[x][z], op[y][z]
        if compose(a[xy][z], a[x][y]) != compose(a[xz][yz], a[x][z]):
            return "a_square", (x, y, z)
        if compose(a[xy][z], b[y][x]) != compose(b[yz][xz], a[y][z]):
            return "ab_square", (x, y, z)
        for s in A.elements():
            if b[z][xy][s] != add[a[xz][yz][b[z][x][s]]][b[yz][xz][b[z][y][s]]]:
                return "b_split", (x, y, z, s)
    return None


def validate_module(mod: HomogeneousQuandleModule) -> None:
    bad = module_violation(mod)
    if bad is not None:
        raise ValidationError(f"module identity {bad[0]} fails at {bad[1]}", witness=bad[1], kind=bad[0])


@dataclass(frozen=True)
class FactorSet:
    module: HomogeneousQuandleModule
    mu: tuple[tuple[int, ...], ...]


def factor_set_violation(fs: FactorSet) -> tuple[str, tuple] | None:
    """``diagonal`` for μ(x,x) ≠ 0, ``identity`` for the three-term factor-set identity."""
    mod, mu = fs.module, fs.mu
    X, A, a, b = mod.base, mod.A, mod.a_maps, mod.b_maps
    n, op, add = X.size, X.table, A.add_table
    for x in range(n):
        if mu[x][x] != 0:
            return "diagonal", (x,)
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz, yz = op[x][y], op[x][z], op[y][z]
        lhs = add[mu[xy][z]][a[xy][z][mu[x][y]]]
        rhs = add[add[a[xz][yz][mu[x][z]]][mu[xz][yz]]][b[yz][xz][mu[y][z]]]
        if lhs != rhs:
            return "identity", (x, y, z)
    return None


def make_factor_set(mod: HomogeneousQuandleModule, mu) -> FactorSet:
    fs = FactorSet(mod, tuple(tuple(int(v) for v in row) for row in mu))
    bad = factor_set_violation(fs)
    if bad is not None:
        raise CocycleError(f"factor set {bad[0]} condition fails at {bad[1]}", witness=bad[1], kind=bad[0])
    return fs


def build_module_extension(fs: FactorSet) -> FiniteQuandle:
    """(x,s)*(y,t) = (x*y, ā_{x,y}(s) + μ(x,y) + b̄_{y,x}(t)) on indices x·|A| + s."""
    bad = factor_set_violation(fs)
    if bad is not None:
        raise CocycleError(f"factor set {bad[0]} condition fails at {bad[1]}", witness=bad[1], kind=bad[0])
    mod = fs.module
    X, A, a, b = mod.base, mod.A, mod.a_maps, mod.b_maps
    m, add = A.order, A.add_table
    N = X.size * m
    table = []
    for p in range(N):
        x, s = divmod(p, m)
        row = []
        for q in range(N):
            y, t = divmod(q, m)
            row.append(X.table[x][y] * m + add[add[a[x][y][s]][fs.mu[x][y]]][b[y][x][t]])
        table.append(row)
    return make_quandle(table, f"{X.name}x_mod{A.name}")


def twist_factor_set(fs: FactorSet, lam: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """μ(x,y) + ā_{x,y}(λ_x) + b̄_{y,x}(λ_y) − λ_{x*y}."""
    mod = fs.module
    X, A, a, b = mod.base, mod.A, mod.a_maps, mod.b_maps
    n = X.size
    return tuple(tuple(A.sub(A.sum(fs.mu[x][y], a[x][y][lam[x]], b[y][x][lam[y]]), lam[X.table[x][y]])
                       for y in range(n)) for x in range(n))


def cohomologous_factor_sets(fs1: FactorSet, fs2: FactorSet, cap: int | None = None) -> tuple[int, ...] | None:
    """λ: X → A carrying μ₁ to μ₂, or None; exhaustive over A^X."""
    if fs1.module != fs2.module:
        raise ValueError("factor sets live over different modules")
    X, A = fs1.module.base, fs1.module.A
    cap = DEFAULT_MAX_LAMBDA if cap is None else cap
    if A.order ** X.size > cap:
        raise CapExceeded(f"{A.order}^{X.size} maps exceed cap {cap}")
    target = fs2.mu
    for lam in itertools.product(A.elements(), repeat=X.size):
        if twist_factor_set(fs1, lam) == target:
            return lam
    return None


# ---------------------------------------------------------------------------
# group cohomology with trivial coefficients
# ---------------------------------------------------------------------------

def _pairs(n: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(n) for y in range(n)]


def group_coboundary_matrices(G: FiniteGroup) -> tuple[IntMatrix, IntMatrix]:
    """δ¹λ(x,y) = λ(x) + λ(y) − λ(xy) and δ²ν(x,y,z) = ν(y,z) − ν(xy,z) + ν(x,yz) − ν(x,y)."""
    n, t = G.size, G.table
    d1 = IntMatrix.zeros(n * n, n)
    for x, y in _pairs(n):
        r = x * n + y
        d1.data[r][x] += 1
        d1.data[r][y] += 1
        d1.data[r][t[x][y]] -= 1
    d2 = IntMatrix.zeros(n ** 3, n * n)
    for x, y, z in itertools.product(range(n), repeat=3):
        r = (x * n + y) * n + z
        d2.data[r][y * n + z] += 1
        d2.data[r][t[x][y] * n + z] -= 1
        d2.data[r][x * n + t[y][z]] += 1
        d2.data[r][x * n + y] -= 1
    return d1, d2


class GroupCohomology2(CochainCohomology):
    """H²(G; A) for trivial action, cochains over all ordered pairs."""

    def __init__(self, G: FiniteGroup, A: FiniteAbelianCoefficients):
        d1, d2 = group_coboundary_matrices(G)
        self.G = G
        super().__init__(d2, d1, A, _pairs(G.size), [(x,) for x in range(G.size)], G.size)


def group_cocycle_violation(G: FiniteGroup, A: FiniteAbelianCoefficients, nu) -> tuple | None:
    t, add = G.table, A.add_table
    for x, y, z in itertools.product(G.elements(), repeat=3):
        if add[nu[y][z]][nu[x][t[y][z]]] != add[nu[t[x][y]][z]][nu[x][y]]:
            return (x, y, z)
    return None


def group_Z2_B2_H2(G: FiniteGroup, A: FiniteAbelianCoefficients, cap: int = 4096) -> dict:
    """Z², B² and H² of G with trivial coefficients; explicit lists when they fit under ``cap``."""
    H = GroupCohomology2(G, A)
    out = {"H2": H, "structure": H.structure, "cocycle_count": H.cocycle_count,
           "coboundary_count": H.cocycle_count // H.order}
    if H.cocycle_count <= cap:
        Z = [H.to_table(v) for v in H.cocycles()]
        out["cocycles"] = Z
        seen = set()
        B = []
        for lam in itertools.product(A.elements(), repeat=G.size):
            v = H.coboundary(lam)
            if v not in seen:
                seen.add(v)
                B.append(H.to_table(v))
        out["coboundaries"] = B
    return out


def normalize_group_cocycle(G: FiniteGroup, A: FiniteAbelianCoefficients, nu) -> list[list[int]]:
    """Subtract the coboundary of the constant map ν(1,1) so that ν(1,x) = ν(x,1) = 0."""
    c = nu[G.identity][G.identity]
    # coboundary of the constant c is the constant c
    return [[A.sub(v, c) for v in row] for row in nu]


def is_symmetric(nu) -> bool:
    n = len(nu)
    return all(nu[x][y] == nu[y][x] for x in range(n) for y in range(n))


def symmetric_classes(G: FiniteGroup, A: FiniteAbelianCoefficients, H: GroupCohomology2 | None = None,
                      cap: int = 10**5) -> list[tuple[int, ...]]:
    """Classes of H²(G;A) containing a symmetric cocycle, found by sweeping every cocycle."""
    if not G.is_abelian:
        raise DomainError("GNotAbelian: symmetric classes are only used for abelian groups")
    H = GroupCohomology2(G, A) if H is None else H
    found = set()
    for v in H.cocycles(cap):
        if is_symmetric(H.to_table(v)):
            found.add(H.class_of(v))
    classes = sorted(found)
    closed = all(H.add_classes(a, b) in found for a in classes for b in classes)
    if not closed or H.zero_class not in found:
        raise AssertionError("symmetric classes do not form a subgroup")
    return classes


# ---------------------------------------------------------------------------
# Λ and Γ
# ---------------------------------------------------------------------------

def lambda_cochain(G: FiniteGroup, A: FiniteAbelianCoefficients, nu) -> list[list[int]]:
    """ν̌(x,y) = −ν(yx⁻¹, x) + ν(yx⁻¹, y)."""
    t, inv = G.table, G.inverse
    out = []
    for x in G.elements():
        row = []
        for y in G.elements():
            w = t[y][inv[x]]
            row.append(A.sub(nu[w][y], nu[w][x]))
        out.append(row)
    return out


def lambda_map(G: FiniteGroup, A: FiniteAbelianCoefficients, nu, X: FiniteQuandle | None = None) -> FactorSet:
    """Factor set over Core(G) for the negation/doubling module, validated."""
    if not G.is_abelian:
        raise DomainError("GNotAbelian: the map needs an abelian group")
    if not is_symmetric(nu):
        raise ValidationError("NotSymmetric: the group cocycle is not symmetric", kind="NotSymmetric")
    bad = group_cocycle_violation(G, A, nu)
    if bad is not None:
        raise CocycleError(f"not a group 2-cocycle at {bad}", witness=bad, kind="NotACocycle")
    X = core_quandle(G) if X is None else X
    mod = negation_doubling_module(X, A)
    return make_factor_set(mod, lambda_cochain(G, A, normalize_group_cocycle(G, A, nu)))


def gamma_cochain(G: FiniteGroup, A: FiniteAbelianCoefficients, nu) -> list[list[int]]:
    """ν̆(x,y) = ν(x,y) − ν(y, y⁻¹xy)."""
    return [[A.sub(nu[x][y], nu[y][G.conjugate(x, y)]) for y in G.elements()] for x in G.elements()]


def gamma_map(G: FiniteGroup, A: FiniteAbelianCoefficients, nu, X: FiniteQuandle | None = None) -> list[list[int]]:
    """Quandle 2-cocycle on Conj(G), validated."""
    bad = group_cocycle_violation(G, A, nu)
    if bad is not None:
        raise CocycleError(f"not a group 2-cocycle at {bad}", witness=bad, kind="NotACocycle")
    X = conj_quandle(G) if X is None else X
    out = gamma_cochain(G, A, nu)
    bad = cocycle2_violation(X, A, out)
    if bad is not None:
        raise CocycleError(f"image is not a quandle 2-cocycle at {bad}", witness=bad, kind="NotACocycle")
    return out


def _random_coboundary_twist(H: CochainCohomology, vec, rng: random.Random):
    lam = [rng.randrange(H.A.order) for _ in H.lower_basis]
    return tuple(H.A.add(a, b) for a, b in zip(vec, H.coboundary(lam)))


def verify_lambda(G: FiniteGroup, A: FiniteAbelianCoefficients, twists: int = 100, seed: int = 0,
                  cap: int = 10**5) -> Report:
    """Λ on every symmetric cocycle, on class sums, and under random coboundary twists."""
    started = time.perf_counter()
    rng = random.Random(seed)
    H = GroupCohomology2(G, A)
    X = core_quandle(G)
    sym = symmetric_classes(G, A, H, cap)
    all_valid = True
    count = 0
    witness = None
    for v in H.cocycles(cap):
        nu = H.to_table(v)
        if is_symmetric(nu):
            try:
                lambda_map(G, A, nu, X)
            except (CocycleError, ValidationError) as exc:
                all_valid, witness = False, {"cocycle": nu, "error": str(exc)}
                break
            count += 1
    images = {}
    for c in sym:
        images[c] = lambda_map(G, A, H.to_table(H.representative(c)), X)
    additive = True
    for c1 in sym:
        for c2 in sym:
            total = images[H.add_classes(c1, c2)]
            mod = total.module
            summed = FactorSet(mod, tuple(tuple(A.add(p, q) for p, q in zip(r1, r2))
                                          for r1, r2 in zip(images[c1].mu, images[c2].mu)))
            if cohomologous_factor_sets(summed, total) is None:
                additive = False
    twist_ok = True
    for i in range(twists):
        c = sym[rng.randrange(len(sym))]
        rep = H.representative(c)
        twisted = H.to_table(_random_coboundary_twist(H, rep, rng))
        if cohomologous_factor_sets(lambda_map(G, A, twisted, X), images[c]) is None:
            twist_ok = False
            break
    distinct = len({tuple(map(tuple, images[c].mu)) for c in sym})
    kernel = [c for c in sym if cohomologous_factor_sets(images[c], FactorSet(images[c].module, tuple(
        (0,) * X.size for _ in range(X.size)))) is not None]
    checks = {"valid_on_all_symmetric_cocycles": all_valid, "additive": additive, "twist_invariant": twist_ok}
    data = {"H2": list(H.factors), "symmetric_classes": len(sym), "symmetric_cocycles": count,
            "kernel_size": len(kernel), "image_size": len(sym) // len(kernel), "distinct_images": distinct,
            "images": {str(list(c)): [list(r) for r in images[c].mu] for c in sym}, "note": ADDITIVE_NOTE}
    return make_report("lambda-map", checks, data, witness, started)


def verify_gamma(G: FiniteGroup, A: FiniteAbelianCoefficients, twists: int = 100, seed: int = 0,
                 cap: int = 10**5) -> Report:
    """Γ on every cocycle, on class sums, and under random coboundary twists."""
    started = time.perf_counter()
    rng = random.Random(seed)
    H = GroupCohomology2(G, A)
    X = conj_quandle(G)
    HQ = QuandleCohomology(X, 2, A)
    all_valid = True
    count = 0
    witness = None
    for v in H.cocycles(cap):
        try:
            gamma_map(G, A, H.to_table(v), X)
        except CocycleError as exc:
            all_valid, witness = False, {"cocycle": H.to_table(v), "error": str(exc)}
            break
        count += 1
    classes = H.classes()
    image = {c: HQ.class_of(HQ.from_table(gamma_map(G, A, H.to_table(H.representative(c)), X))) for c in classes}
    additive = all(image[H.add_classes(a, b)] == HQ.add_classes(image[a], image[b]) for a in classes for b in classes)
    twist_ok = True
    for _ in range(twists):
        c = classes[rng.randrange(len(classes))]
        twisted = H.to_table(_random_coboundary_twist(H, H.representative(c), rng))
        if HQ.class_of(HQ.from_table(gamma_map(G, A, twisted, X))) != image[c]:
            twist_ok = False
            break
    kernel = [c for c in classes if image[c] == HQ.zero_class]
    checks = {"valid_on_all_cocycles": all_valid, "additive": additive, "twist_invariant": twist_ok}
    data = {"H2_group": list(H.factors), "H2_conj": list(HQ.factors), "cocycles": count,
            "kernel_size": len(kernel), "image_size": len(classes) // len(kernel),
            "images": {str(list(c)): list(image[c]) for c in classes}, "note": ADDITIVE_NOTE}
    return make_report("gamma-map", checks, data, witness, started)


def _pullback(f: Sequence[int], h: Sequence[int], table) -> list[list[int]]:
    n = len(f)
    return [[h[table[f[x]][f[y]]] for y in range(n)] for x in range(n)]


def check_naturality(direction: str, G1: FiniteGroup, G2: FiniteGroup, f: Sequence[int],
                     A1: FiniteAbelianCoefficients, A2: FiniteAbelianCoefficients, h: Sequence[int]) -> Report:
    """Pull back along f: G2 → G1 and push along h: A1 → A2, before and after the bridge map."""
    started = time.perf_counter()
    check_group_hom(f, G2, G1)
    if not (len(h) == A1.order and all(0 <= v < A2.order for v in h) and all(
            h[A1.add(a, b)] == A2.add(h[a], h[b]) for a in A1.elements() for b in A1.elements())):
        raise ValidationError("h is not a homomorphism of coefficient groups", kind="NotAHomomorphism")
    H1 = GroupCohomology2(G1, A1)
    if direction == "lambda":
        classes = symmetric_classes(G1, A1, H1)
        X1, X2 = core_quandle(G1), core_quandle(G2)
    elif direction == "gamma":
        classes = H1.classes()
        X1, X2 = conj_quandle(G1), conj_quandle(G2)
        HQ2 = QuandleCohomology(X2, 2, A2)
    else:
        raise ValueError("direction must be 'lambda' or 'gamma'")
    ok = True
    witness = None
    for c in classes:
        nu = H1.to_table(H1.representative(c))
        pulled = _pullback(f, h, nu)
        if group_cocycle_violation(G2, A2, pulled) is not None:
            ok, witness = False, {"class": list(c), "reason": "pullback is not a cocycle"}
            break
        if direction == "lambda":
            down = lambda_map(G1, A1, nu, X1)
            across = make_factor_set(negation_doubling_module(X2, A2), _pullback(f, h, down.mu))
            other = lambda_map(G2, A2, pulled, X2)
            same = cohomologous_factor_sets(across, other) is not None
        else:
            down = gamma_map(G1, A1, nu, X1)
            across = _pullback(f, h, down)
            other = gamma_map(G2, A2, pulled, X2)
            same = HQ2.class_of(HQ2.from_table(across)) == HQ2.class_of(HQ2.from_table(other))
        if not same:
            ok, witness = False, {"class": list(c)}
            break
    return make_report(f"naturality-{direction}", {"square_commutes": ok}, {"classes": len(classes)}, witness, started)
