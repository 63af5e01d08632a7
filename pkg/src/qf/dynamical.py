"""Dynamical 2-cocycles, the extensions X ×_α S they define, and the automorphism
sequence relating Aut^{x0}_S(E) to Aut^{x0}(X) × Σ_S.

A cocycle is stored as a nested table ``alpha[x][y][s][t]`` with values in
``range(m)``; the extension lives on indices ``x·m + s``.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Sequence

from .algebra import Permutation, compose, identity_perm, perm_inverse
from .errors import CapExceeded, CocycleError, NotAHomomorphism, ShapeMismatch
from .quandle import (
    FiniteQuandle, automorphism_group, inn_orbits, is_quandle_hom, make_quandle,
    stabilizer_aut,
)
from .report import Report, make_report

DEFAULT_MAX_TWIST_SEARCH = 10**7

Table4 = tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]


def _freeze4(alpha) -> Table4:
    return tuple(tuple(tuple(tuple(int(v) for v in row) for row in ay) for ay in ax) for ax in alpha)


@dataclass(frozen=True)
class DynamicalCocycle:
    base: FiniteQuandle
    fiber_size: int
    alpha: Table4

    def __call__(self, x: int, y: int, s: int, t: int) -> int:
        return self.alpha[x][y][s][t]


def _check_shape(n: int, m: int, alpha) -> None:
    if len(alpha) != n or any(len(ax) != n for ax in alpha):
        raise ShapeMismatch("alpha must be indexed [x][y] over the base", witness=None)
    for x, ax in enumerate(alpha):
        for y, axy in enumerate(ax):
            if len(axy) != m or any(len(row) != m for row in axy):
                raise ShapeMismatch(f"alpha[{x}][{y}] is not {m}x{m}", witness=(x, y))
            if any(not 0 <= v < m for row in axy for v in row):
                raise ShapeMismatch(f"alpha[{x}][{y}] has values outside the fibre", witness=(x, y))


def validate_dynamical(X: FiniteQuandle, alpha, fiber_size: int | None = None) -> tuple[str, tuple] | None:
    """None when alpha is a dynamical 2-cocycle, otherwise (condition, witness).

    Conditions: ``idempotent`` α_{x,x}(s,s)=s, ``bijective`` s ↦ α_{x,y}(s,t),
    ``cocycle`` α_{x*y,z}(α_{x,y}(s,t),u) = α_{x*z,y*z}(α_{x,z}(s,u), α_{y,z}(t,u)).
    """
    n = X.size
    m = len(alpha[0][0]) if fiber_size is None else fiber_size
    _check_shape(n, m, alpha)
    for x in range(n):
        for s in range(m):
            if alpha[x][x][s][s] != s:
                return "idempotent", (x, x, s)
    for x in range(n):
        for y in range(n):
            a = alpha[x][y]
            for t in range(m):
                if len({a[s][t] for s in range(m)}) != m:
                    return "bijective", (x, y, t)
    op = X.table
    for x in range(n):
        for y in range(n):
            axy = alpha[x][y]
            a_left = alpha[op[x][y]]
            for z in range(n):
                left = a_left[z]
                right = alpha[op[x][z]][op[y][z]]
                axz, ayz = alpha[x][z], alpha[y][z]
                for s in range(m):
                    for t in range(m):
                        st = axy[s][t]
                        for u in range(m):
                            if left[st][u] != right[axz[s][u]][ayz[t][u]]:
                                return "cocycle", (x, y, z, s, t, u)
    return None


def make_dynamical(X: FiniteQuandle, alpha, fiber_size: int | None = None) -> DynamicalCocycle:
    m = len(alpha[0][0]) if fiber_size is None else fiber_size
    bad = validate_dynamical(X, alpha, m)
    if bad is not None:
        raise CocycleError(f"not a dynamical cocycle: {bad[0]} fails at {bad[1]}", witness=bad[1], kind=bad[0])
    return DynamicalCocycle(X, m, _freeze4(alpha))


def trivial_dynamical(X: FiniteQuandle, m: int) -> DynamicalCocycle:
    n = X.size
    alpha = [[[[s] * m for s in range(m)] for _ in range(n)] for _ in range(n)]
    return DynamicalCocycle(X, m, _freeze4(alpha))


def product_dynamical(X: FiniteQuandle, S: FiniteQuandle) -> DynamicalCocycle:
    """α_{x,y}(s,t) = s*t for a quandle structure on the fibre."""
    n = X.size
    alpha = [[S.table for _ in range(n)] for _ in range(n)]
    return DynamicalCocycle(X, S.size, _freeze4(alpha))


def abelian_dynamical(X: FiniteQuandle, values: Sequence[Sequence[int]], m: int) -> DynamicalCocycle:
    """α_{x,y}(s,t) = s + c_{x,y} (mod m) from a Z/m-valued 2-cochain c."""
    n = X.size
    alpha = [[[[(s + values[x][y]) % m] * m for s in range(m)] for y in range(n)] for x in range(n)]
    return make_dynamical(X, alpha, m)


def build_extension(cocycle: DynamicalCocycle) -> FiniteQuandle:
    """(x,s)*(y,t) = (x*y, α_{x,y}(s,t)) on indices x·m + s."""
    X, m, alpha = cocycle.base, cocycle.fiber_size, cocycle.alpha
    N = X.size * m
    table = []
    for a in range(N):
        x, s = divmod(a, m)
        row = []
        for b in range(N):
            y, t = divmod(b, m)
            row.append(X.table[x][y] * m + alpha[x][y][s][t])
        table.append(row)
    return make_quandle(table, f"{X.name}x_a{m}")


def fiber_quandle(cocycle: DynamicalCocycle, x: int) -> FiniteQuandle:
    """(S, *_x) with s *_x t = α_{x,x}(s,t)."""
    return make_quandle(cocycle.alpha[x][x], f"fiber{x}")


# ---------------------------------------------------------------------------
# generalised (α, β) construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedPair:
    x_size: int
    s_size: int
    alpha: Table4  # [x][y][s][t] -> S
    beta: Table4   # [s][t][x][y] -> X


def generalized_violation(pair: GeneralizedPair) -> tuple[str, tuple] | None:
    """None when (x,s)*(y,t) = (β_{s,t}(x,y), α_{x,y}(s,t)) is a quandle, else (condition, witness)."""
    n, m, al, be = pair.x_size, pair.s_size, pair.alpha, pair.beta
    for x in range(n):
        for s in range(m):
            if be[s][s][x][x] != x or al[x][x][s][s] != s:
                return "condition1", (x, s)
    for y in range(n):
        for t in range(m):
            images = {(be[s][t][x][y], al[x][y][s][t]) for x in range(n) for s in range(m)}
            if len(images) != n * m:
                return "condition2", (y, t)
    for x, y, z in itertools.product(range(n), repeat=3):
        for s, t, u in itertools.product(range(m), repeat=3):
            bxy, axy = be[s][t][x][y], al[x][y][s][t]
            bxz, axz = be[s][u][x][z], al[x][z][s][u]
            byz, ayz = be[t][u][y][z], al[y][z][t][u]
            if be[axy][u][bxy][z] != be[axz][ayz][bxz][byz]:
                return "condition3-beta", (x, y, z, s, t, u)
            if al[bxy][z][axy][u] != al[bxz][byz][axz][ayz]:
                return "condition3-alpha", (x, y, z, s, t, u)
    return None


def make_generalized(x_size: int, s_size: int, alpha, beta) -> GeneralizedPair:
    pair = GeneralizedPair(x_size, s_size, _freeze4(alpha), _freeze4(beta))
    bad = generalized_violation(pair)
    if bad is not None:
        raise CocycleError(f"{bad[0]} fails at {bad[1]}", witness=bad[1], kind=bad[0])
    return pair


def generalized_table(pair: GeneralizedPair) -> list[list[int]]:
    n, m = pair.x_size, pair.s_size
    N = n * m
    table = []
    for a in range(N):
        x, s = divmod(a, m)
        table.append([pair.beta[s][b % m][x][b // m] * m + pair.alpha[x][b // m][s][b % m] for b in range(N)])
    return table


def build_generalized(pair: GeneralizedPair) -> FiniteQuandle:
    bad = generalized_violation(pair)
    if bad is not None:
        raise CocycleError(f"{bad[0]} fails at {bad[1]}", witness=bad[1], kind=bad[0])
    return make_quandle(generalized_table(pair), "generalized")


def pair_from_table(table: Sequence[Sequence[int]], x_size: int, s_size: int) -> GeneralizedPair:
    """Split a binary operation on X×S (indices x·m+s) into its (α, β) components."""
    n, m = x_size, s_size
    alpha = [[[[0] * m for _ in range(m)] for _ in range(n)] for _ in range(n)]
    beta = [[[[0] * n for _ in range(n)] for _ in range(m)] for _ in range(m)]
    for a in range(n * m):
        x, s = divmod(a, m)
        for b in range(n * m):
            y, t = divmod(b, m)
            z, u = divmod(table[a][b], m)
            alpha[x][y][s][t] = u
            beta[s][t][x][y] = z
    return GeneralizedPair(n, m, _freeze4(alpha), _freeze4(beta))


def pair_from_cocycle(cocycle: DynamicalCocycle) -> GeneralizedPair:
    X, m = cocycle.base, cocycle.fiber_size
    beta = [[X.table for _ in range(m)] for _ in range(m)]
    return GeneralizedPair(X.size, m, cocycle.alpha, _freeze4(beta))


# ---------------------------------------------------------------------------
# fibres
# ---------------------------------------------------------------------------

def fiber_transport_map(cocycle: DynamicalCocycle, x: int, z: int, u: int) -> Permutation:
    """s ↦ α_{x,z}(s,u), an isomorphism (S,*_x) → (S,*_{x*z})."""
    a = cocycle.alpha[x][z]
    return tuple(a[s][u] for s in range(cocycle.fiber_size))


def fibers_isomorphic_report(cocycle: DynamicalCocycle) -> Report:
    """Within each Inn-orbit of the base, all fibre quandles are isomorphic.

    Witnesses are composites of the transport maps s ↦ α_{x,z}(s,u) along a
    spanning tree of x → x*z moves; every pairwise witness is re-verified.
    """
    started = time.perf_counter()
    X, m = cocycle.base, cocycle.fiber_size
    fibers = [fiber_quandle(cocycle, x) for x in X.elements()]
    orbits = inn_orbits(X)
    checks: dict[str, bool] = {}
    witness = None
    orbit_data = []
    for orb in orbits:
        root = orb[0]
        to_root_inv = {root: identity_perm(m)}  # map (S,*_root) -> (S,*_x)
        frontier = [root]
        while frontier:
            nxt = []
            for x in frontier:
                for z in X.elements():
                    y = X.table[x][z]
                    if y not in to_root_inv:
                        step = fiber_transport_map(cocycle, x, z, 0)
                        to_root_inv[y] = compose(step, to_root_inv[x])
                        nxt.append(y)
            frontier = nxt
        ok = True
        for x in orb:
            for y in orb:
                w = compose(to_root_inv[y], perm_inverse(to_root_inv[x]))
                if not is_quandle_hom(w, fibers[x], fibers[y]):
                    ok = False
                    witness = {"from": x, "to": y, "map": list(w)}
                    break
            if not ok:
                break
        checks[f"orbit{root}"] = ok
        orbit_data.append({"orbit": orb, "witnesses": {x: list(to_root_inv[x]) for x in orb}})
    data = {"connected": len(orbits) == 1, "orbits": orbit_data}
    return make_report("fibers-isomorphic", checks, data, witness, started)


# ---------------------------------------------------------------------------
# action of Aut(X) × Σ_S and cohomologous cocycles
# ---------------------------------------------------------------------------

def act_on_dynamical(phi: Sequence[int], theta: Sequence[int], cocycle: DynamicalCocycle,
                     check: bool = True) -> DynamicalCocycle:
    """^{(φ,θ)}α_{x,y}(s,t) = θ(α_{φ⁻¹x, φ⁻¹y}(θ⁻¹s, θ⁻¹t))."""
    X, m, alpha = cocycle.base, cocycle.fiber_size, cocycle.alpha
    if check:
        if sorted(phi) != list(X.elements()) or not is_quandle_hom(phi, X, X):
            raise NotAHomomorphism("PhiNotAutomorphism: phi is not an automorphism of the base")
        if sorted(theta) != list(range(m)):
            raise ValueError("theta is not a permutation of the fibre")
    pi, ti = perm_inverse(phi), perm_inverse(theta)
    n = X.size
    new = [[[[theta[alpha[pi[x]][pi[y]][ti[s]][ti[t]]] for t in range(m)] for s in range(m)]
            for y in range(n)] for x in range(n)]
    return DynamicalCocycle(X, m, _freeze4(new))


def twist_dynamical(cocycle: DynamicalCocycle, lam: Sequence[Sequence[int]]) -> DynamicalCocycle:
    """β_{x,y}(s,t) = λ_{x*y}(α_{x,y}(λ_x⁻¹ s, λ_y⁻¹ t))."""
    X, m, alpha = cocycle.base, cocycle.fiber_size, cocycle.alpha
    inv = [perm_inverse(l) for l in lam]
    n = X.size
    new = [[[[lam[X.table[x][y]][alpha[x][y][inv[x][s]][inv[y][t]]] for t in range(m)] for s in range(m)]
            for y in range(n)] for x in range(n)]
    return DynamicalCocycle(X, m, _freeze4(new))


def _twist_search(alpha: DynamicalCocycle, beta: DynamicalCocycle, fixed: dict[int, Permutation] | None,
                  first_only: bool, cap: int | None) -> list[tuple[Permutation, ...]]:
    X, m = alpha.base, alpha.fiber_size
    if beta.base.table != X.table or beta.fiber_size != m:
        raise ShapeMismatch("cocycles live over different bases or fibres")
    n = X.size
    fixed = fixed or {}
    free = n - len(fixed)
    cap = DEFAULT_MAX_TWIST_SEARCH if cap is None else cap
    if math.factorial(m) ** free > cap:
        raise CapExceeded(f"(|S|!)^|X| = {math.factorial(m) ** free} exceeds cap {cap}")
    perms = list(itertools.permutations(range(m)))
    op, A, B = X.table, alpha.alpha, beta.alpha
    lam: list[Permutation | None] = [None] * n
    inv: list[Permutation | None] = [None] * n
    order = [x for x in range(n) if x in fixed] + [x for x in range(n) if x not in fixed]
    results = []

    def consistent(x) -> bool:
        # every pair (a,b) with a, b, a*b assigned and involving x
        for a in range(n):
            if lam[a] is None:
                continue
            for b in range(n):
                if lam[b] is None:
                    continue
                c = op[a][b]
                if lam[c] is None or x not in (a, b, c):
                    continue
                la, lb, lc = inv[a], inv[b], lam[c]
                Aab, Bab = A[a][b], B[a][b]
                for s in range(m):
                    for t in range(m):
                        if Bab[s][t] != lc[Aab[la[s]][lb[t]]]:
                            return False
        return True

    def rec(k) -> bool:
        if k == n:
            results.append(tuple(lam))
            return first_only
        x = order[k]
        choices = [fixed[x]] if x in fixed else perms
        for p in choices:
            lam[x], inv[x] = tuple(p), perm_inverse(p)
            if consistent(x) and rec(k + 1):
                return True
        lam[x] = inv[x] = None
        return False

    rec(0)
    return results


def cohomologous_dynamical(alpha: DynamicalCocycle, beta: DynamicalCocycle,
                           cap: int | None = None) -> tuple[Permutation, ...] | None:
    """λ: X → Σ_S with β = λ·α (twist), or None when the cocycles are not cohomologous."""
    found = _twist_search(alpha, beta, None, True, cap)
    return found[0] if found else None


def kernel_twists(cocycle: DynamicalCocycle, x0: int, cap: int | None = None) -> list[tuple[Permutation, ...]]:
    """All λ with λ_{x0} = id fixing α under the twist."""
    return _twist_search(cocycle, cocycle, {x0: identity_perm(cocycle.fiber_size)}, False, cap)


# ---------------------------------------------------------------------------
# Aut^{x0}_S(E) and the restriction map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionAutomorphism:
    """ψ(x, s) = (φ(x), τ_x(s)) (abelian case: τ_x(s) = λ_x + θ(s))."""

    phi: Permutation
    tau: tuple[Permutation, ...]

    def as_permutation(self) -> Permutation:
        m = len(self.tau[0])
        return tuple(self.phi[x] * m + self.tau[x][s] for x in range(len(self.phi)) for s in range(m))

    def __mul__(self, other: "ExtensionAutomorphism") -> "ExtensionAutomorphism":
        # (ψψ')(x,s) = (φφ'(x), τ_{φ'(x)} τ'_x(s))
        tau = tuple(compose(self.tau[other.phi[x]], other.tau[x]) for x in range(len(self.phi)))
        return ExtensionAutomorphism(compose(self.phi, other.phi), tau)


def fibered_decomposition(psi: Sequence[int], n: int, m: int) -> ExtensionAutomorphism | None:
    """Split a permutation of X×S into (φ, τ) when it maps fibres to fibres."""
    phi = []
    tau = []
    for x in range(n):
        targets = {psi[x * m + s] // m for s in range(m)}
        if len(targets) != 1:
            return None
        phi.append(targets.pop())
        tau.append(tuple(psi[x * m + s] % m for s in range(m)))
    return ExtensionAutomorphism(tuple(phi), tuple(tau))


def aut_x0_S(cocycle: DynamicalCocycle, x0: int, E: FiniteQuandle | None = None,
             max_size: int = 24) -> list[ExtensionAutomorphism]:
    """Automorphisms of E = X ×_α S of fibred shape with φ(x0) = x0 (filter of Aut(E))."""
    X, m = cocycle.base, cocycle.fiber_size
    E = build_extension(cocycle) if E is None else E
    out = []
    for psi in automorphism_group(E, max_size=max_size):
        dec = fibered_decomposition(psi, X.size, m)
        if dec is not None and dec.phi[x0] == x0:
            out.append(dec)
    return out


def phi_restrict(psi: ExtensionAutomorphism, x0: int) -> tuple[Permutation, Permutation]:
    """Φ(ψ) = (φ, τ_{x0})."""
    return psi.phi, psi.tau[x0]


def verify_wells_dynamical(cocycle: DynamicalCocycle, x0: int, *, S_quandle: FiniteQuandle | None = None,
                           cap: int | None = None, max_size: int = 24) -> Report:
    """Exactness of 1 → Ker Φ → Aut^{x0}_S(E) → Aut^{x0}(X)×Σ_S → H²(X;S) at desk scale.

    Checks (a) the kernel of Φ equals the λ-maps with λ_{x0}=id fixing α, (b) the
    image of Φ equals the stabiliser of [α], (c) the order identity.  With
    ``S_quandle`` the same is reported for the Aut(S) target group as well.
    """
    started = time.perf_counter()
    X, m = cocycle.base, cocycle.fiber_size
    E = build_extension(cocycle)
    group = aut_x0_S(cocycle, x0, E, max_size=max_size)
    ident_x, ident_s = identity_perm(X.size), identity_perm(m)

    # Φ is a homomorphism
    perm_of = {g.as_permutation(): g for g in group}
    hom_ok = all(
        (lambda p: phi_restrict(p, x0))(g * h) == (compose(g.phi, h.phi), compose(g.tau[x0], h.tau[x0]))
        for g in group for h in group
    )
    closed = all((g * h).as_permutation() in perm_of for g in group for h in group)

    # (a) kernel
    kernel_from_E = {tuple(perm_inverse(t) for t in g.tau) for g in group if phi_restrict(g, x0) == (ident_x, ident_s)}
    kernel_search = set(kernel_twists(cocycle, x0, cap))
    kernel_ok = kernel_from_E == kernel_search

    # (b) image versus stabiliser
    image = {phi_restrict(g, x0) for g in group}
    stab_x0 = stabilizer_aut(X, x0)
    stabilizer = set()
    for phi in stab_x0:
        for theta in itertools.permutations(range(m)):
            moved = act_on_dynamical(phi, theta, cocycle, check=False)
            if cohomologous_dynamical(cocycle, moved, cap) is not None:
                stabilizer.add((phi, tuple(theta)))
    image_ok = image == stabilizer
    order_ok = len(group) == len(kernel_search) * len(stabilizer)

    checks = {"phi_homomorphism": hom_ok, "closed": closed, "kernel": kernel_ok,
              "image_is_stabilizer": image_ok, "order_identity": order_ok}
    data = {"aut_x0_S": len(group), "kernel": len(kernel_search), "image": len(image),
            "stabilizer": len(stabilizer), "aut_x0_X": len(stab_x0), "sigma_S": math.factorial(m)}

    if S_quandle is not None:
        aut_s = set(automorphism_group(S_quandle))
        restricted = {pair for pair in stabilizer if pair[1] in aut_s}
        image_aut = {pair for pair in image if pair[1] in aut_s}
        checks["aut_S_variant_image"] = image_aut == restricted
        data["aut_S"] = len(aut_s)
        data["stabilizer_in_aut_x0_X_x_aut_S"] = len(restricted)
        data["aut_S_stabilizer_is_everything"] = len(restricted) == len(stab_x0) * len(aut_s)

    witness = None
    if not kernel_ok:
        witness = {"kernel_only_E": [list(map(list, k)) for k in kernel_from_E - kernel_search][:3],
                   "kernel_only_search": [list(map(list, k)) for k in kernel_search - kernel_from_E][:3]}
    elif not image_ok:
        witness = {"image_not_stabilizer": [list(map(list, p)) for p in image ^ stabilizer][:3]}
    return make_report("wells-dynamical", checks, data, witness, started)


def splitting_section(X: FiniteQuandle, S: FiniteQuandle, x0: int, max_size: int = 24) -> Report:
    """ζ(φ,θ)(x,s) = (φ(x), θ(s)) splits Φ for the product cocycle α(s,t) = s*t."""
    started = time.perf_counter()
    cocycle = product_dynamical(X, S)
    E = build_extension(cocycle)
    stab = stabilizer_aut(X, x0)
    aut_s = automorphism_group(S)
    group = {g.as_permutation() for g in aut_x0_S(cocycle, x0, E, max_size=max_size)}

    def zeta(phi, theta):
        return ExtensionAutomorphism(tuple(phi), tuple(tuple(theta) for _ in range(X.size)))

    pairs = [(phi, theta) for phi in stab for theta in aut_s]
    lands = all(is_quandle_hom(zeta(p, t).as_permutation(), E, E) and zeta(p, t).as_permutation() in group
                for p, t in pairs)
    section = all(phi_restrict(zeta(p, t), x0) == (p, t) for p, t in pairs)
    hom = all(zeta(compose(p1, p2), compose(t1, t2)) == zeta(p1, t1) * zeta(p2, t2)
              for p1, t1 in pairs for p2, t2 in pairs)
    checks = {"zeta_in_aut_x0_S": lands, "phi_zeta_identity": section, "zeta_homomorphism": hom}
    return make_report("splitting-section", checks,
                       {"pairs": len(pairs), "aut_x0_S": len(group)}, None, started)
