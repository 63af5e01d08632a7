"""Group-to-quandle functors Q_w, the presentations of their left adjoints, and the
transport of group extensions to quandle extensions.

Words in a presentation are sequences of signed generator numbers: generator ``i``
is written ``i + 1`` and its inverse ``-(i + 1)``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    AbelianGroupStructure, FiniteGroup, IntMatrix, Permutation, check_group_hom, cokernel_structure,
    dihedral_group, direct_product, is_group_hom, is_normal_subgroup, quotient_group, subgroup_as_group,
)
from .dynamical import DynamicalCocycle, build_extension, fiber_quandle, make_dynamical, product_dynamical
from .errors import CapExceeded, DomainError, NotAHomomorphism, ValidationError
from .quandle import (
    FiniteQuandle, alexander_quandle, conj_quandle, core_quandle, dihedral_quandle, is_quandle_hom, quandle_homs,
)
from .report import Report, make_report

DEFAULT_MAX_ASSIGNMENTS = 10**6

Word = tuple[int, ...]


# ---------------------------------------------------------------------------
# words and Q_w
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuandleWord:
    """``core`` is w(x,y) = y x⁻¹ y; ``conj`` with exponent n is w(x,y) = y⁻ⁿ x yⁿ."""

    kind: str
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("core", "conj"):
            raise ValueError("only the core word y x^-1 y and the words y^-n x y^n define quandles on every group")

    def letters(self, x: int, y: int) -> Word:
        """w(e_x, e_y) with x, y 0-based generator indices."""
        X, Y = x + 1, y + 1
        if self.kind == "core":
            return (Y, -X, Y)
        k = abs(self.n)
        s = 1 if self.n >= 0 else -1
        return (-s * Y,) * k + (X,) + (s * Y,) * k

    def __str__(self) -> str:
        return "core" if self.kind == "core" else f"conj:{self.n}"


CORE = QuandleWord("core")


def CONJ(n: int = 1) -> QuandleWord:
    return QuandleWord("conj", n)


def parse_word(text: str) -> QuandleWord:
    text = text.strip().lower()
    if text == "core":
        return CORE
    if text == "conj":
        return CONJ(1)
    if text.startswith("conj:"):
        try:
            return CONJ(int(text[5:]))
        except ValueError:
            pass
    raise ValueError(f"unsupported word {text!r}: use 'core' or 'conj:n' "
                     "(no other word in two letters gives a quandle on every group)")


def q_w(G: FiniteGroup, word: QuandleWord) -> FiniteQuandle:
    return core_quandle(G) if word.kind == "core" else conj_quandle(G, word.n)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

def invert_word(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    generators: int
    relators: tuple[Word, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        for r in self.relators:
            if any(a == 0 or abs(a) > self.generators for a in r):
                raise ValidationError("relator letter out of range", witness=tuple(r))

    def exponent_matrix(self) -> IntMatrix:
        """Rows are relators, columns generators, entries exponent sums."""
        M = IntMatrix.zeros(len(self.relators), self.generators)
        for i, r in enumerate(self.relators):
            for a in r:
                M.data[i][abs(a) - 1] += 1 if a > 0 else -1
        return M


def adj_w_presentation(X: FiniteQuandle, word: QuandleWord) -> GroupPresentation:
    """Generators e_x; relator e_{x*y} w(e_x, e_y)⁻¹ for every ordered pair."""
    rels = []
    for x in X.elements():
        for y in X.elements():
            rels.append(free_reduce((X.table[x][y] + 1,) + invert_word(word.letters(x, y))))
    return GroupPresentation(X.size, tuple(rels), tuple(f"e{x}" for x in X.elements()))


def adj_phi_presentation(X: FiniteQuandle, phi: Sequence[int]) -> GroupPresentation:
    """Relators e_{x*y} (e_{φ(x)} e_{φ(y)}⁻¹ e_y)⁻¹."""
    if sorted(phi) != list(X.elements()) or not is_quandle_hom(phi, X, X):
        raise NotAHomomorphism("PhiNotAutomorphism: phi is not an automorphism of the quandle")
    rels = []
    for x in X.elements():
        for y in X.elements():
            w = (phi[x] + 1, -(phi[y] + 1), y + 1)
            rels.append(free_reduce((X.table[x][y] + 1,) + invert_word(w)))
    return GroupPresentation(X.size, tuple(rels), tuple(f"e{x}" for x in X.elements()))


def abelianization(P: GroupPresentation) -> AbelianGroupStructure:
    """Z^k modulo the exponent-sum vectors of the relators."""
    return cokernel_structure(P.exponent_matrix().T)


def evaluate_word(G: FiniteGroup, w: Sequence[int], assignment: Sequence[int]) -> int:
    g = G.identity
    for a in w:
        v = assignment[abs(a) - 1]
        g = G.table[g][v if a > 0 else G.inverse[v]]
    return g


def presentation_homs_to(P: GroupPresentation, G: FiniteGroup, cap: int | None = None) -> list[tuple[int, ...]]:
    """Every generator assignment into G killing all relators (backtracking in generator order)."""
    cap = DEFAULT_MAX_ASSIGNMENTS if cap is None else cap
    if G.size ** P.generators > cap:
        raise CapExceeded(f"{G.size}^{P.generators} assignments exceed cap {cap}")
    # each relator is tested as soon as its highest generator is assigned
    by_level: list[list[Word]] = [[] for _ in range(P.generators + 1)]
    for r in P.relators:
        by_level[max((abs(a) for a in r), default=0)].append(r)
    if any(evaluate_word(G, r, ()) != G.identity for r in by_level[0]):
        return []
    out = []
    assign = [0] * P.generators

    def rec(k):
        if k == P.generators:
            out.append(tuple(assign))
            return
        for g in G.elements():
            assign[k] = g
            if all(evaluate_word(G, r, assign) == G.identity for r in by_level[k + 1]):
                rec(k + 1)

    rec(0)
    return out


def adjointness_count_check(X: FiniteQuandle, G: FiniteGroup, word: QuandleWord, cap: int | None = None) -> Report:
    """Quandle maps X → Q_w(G) correspond to assignments e_x ↦ φ(x) satisfying Adj_w(X)."""
    started = time.perf_counter()
    Q = q_w(G, word)
    homs = set(quandle_homs(X, Q))
    P = adj_w_presentation(X, word)
    assigns = set(presentation_homs_to(P, G, cap))
    checks = {"counts_equal": len(homs) == len(assigns), "bijection": homs == assigns}
    witness = None
    if homs != assigns:
        witness = {"only_quandle": [list(h) for h in homs - assigns][:3],
                   "only_presentation": [list(h) for h in assigns - homs][:3]}
    data = {"quandle": X.name, "group": G.name, "word": str(word), "quandle_homs": len(homs),
            "assignments": len(assigns)}
    return make_report("adjoint-count", checks, data, witness, started)


# ---------------------------------------------------------------------------
# group extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupExtensionData:
    """1 → A → E → G → 1 with ``pi`` the quotient map and ``kappa`` a transversal, κ(1) = 1."""

    E: FiniteGroup
    A: tuple[int, ...]
    G: FiniteGroup
    pi: tuple[int, ...]
    kappa: tuple[int, ...]


def make_extension(E: FiniteGroup, A: Sequence[int], kappa: Sequence[int] | None = None) -> GroupExtensionData:
    """Quotient E by the normal subgroup A; κ defaults to the least element of each coset."""
    if not is_normal_subgroup(E, A):
        raise ValidationError("A is not a normal subgroup of E", witness=tuple(A))
    G, pi, reps = quotient_group(E, A)
    kappa = tuple(reps if kappa is None else kappa)
    ext = GroupExtensionData(E, tuple(sorted(set(A))), G, tuple(pi), kappa)
    validate_extension(ext)
    return ext


def validate_extension(ext: GroupExtensionData) -> None:
    E, G = ext.E, ext.G
    if not is_normal_subgroup(E, ext.A):
        raise ValidationError("A is not normal in E", witness=ext.A)
    check_group_hom(ext.pi, E, G)
    if sorted(set(ext.pi)) != list(G.elements()):
        raise ValidationError("pi is not surjective")
    if sorted(e for e in E.elements() if ext.pi[e] == G.identity) != list(ext.A):
        raise ValidationError("kernel of pi differs from A")
    if any(ext.pi[ext.kappa[g]] != g for g in G.elements()):
        raise ValidationError("pi(kappa(g)) != g", witness=tuple(ext.kappa))
    if ext.kappa[G.identity] != E.identity:
        raise ValidationError("kappa(1) != 1")


@dataclass
class Transport:
    cocycle: DynamicalCocycle
    witness: Permutation          # (x, s) ↦ κ(x)s at index x·|A| + s
    mu: list[list[int]]           # κ(x)*κ(y) = κ(x*y)μ(x,y), as A-indices
    fiber_group: FiniteGroup
    report: Report


def _transport(ext: GroupExtensionData, X: FiniteQuandle, QA: FiniteQuandle, QE: FiniteQuandle,
               Agrp: FiniteGroup, embed: Sequence[int], claim: str, started: float) -> Transport:
    E, G = ext.E, ext.G
    m = Agrp.size
    local = {e: i for i, e in enumerate(embed)}
    t, inv, kappa = E.table, E.inverse, ext.kappa

    def gamma(e):
        # γ_x(κ(x)s) = s with x = π(e)
        return local[t[inv[kappa[ext.pi[e]]]][e]]

    def lift(x, s):
        return t[kappa[x]][embed[s]]

    n = G.size
    opE = QE.table
    alpha = [[[[gamma(opE[lift(x, s)][lift(y, u)]) for u in range(m)] for s in range(m)]
              for y in range(n)] for x in range(n)]
    mu = [[gamma(opE[kappa[x]][kappa[y]]) for y in range(n)] for x in range(n)]
    cocycle = make_dynamical(X, alpha, m)
    ext_q = build_extension(cocycle)
    witness = tuple(lift(x, s) for x in range(n) for s in range(m))
    iso = sorted(witness) == list(E.elements()) and is_quandle_hom(witness, ext_q, QE)
    fibre = fiber_quandle(cocycle, G.identity).table == QA.table
    coset_ok = all(ext.pi[opE[kappa[x]][kappa[y]]] == X.table[x][y] for x in range(n) for y in range(n))
    checks = {"witness_isomorphism": iso, "identity_fiber_matches": fibre, "pi_is_quandle_map": coset_ok}
    data = {"E": E.name, "G_order": n, "A_order": m, "mu": mu,
            "mu_zero": all(v == 0 for row in mu for v in row)}
    report = make_report(claim, checks, data, None, started)
    return Transport(cocycle, witness, mu, Agrp, report)


def extension_transport_qw(ext: GroupExtensionData, word: QuandleWord) -> Transport:
    """Q_w(E) as Q_w(G) ×_α Q_w(A), α_{x,y}(s,t) = γ_{x*y}(κ(x)s * κ(y)t)."""
    started = time.perf_counter()
    validate_extension(ext)
    Agrp, embed = subgroup_as_group(ext.E, ext.A, "A")
    return _transport(ext, q_w(ext.G, word), q_w(Agrp, word), q_w(ext.E, word), Agrp, embed,
                      f"transport-{word}", started)


def extension_transport_alex(ext: GroupExtensionData, f: Sequence[int]) -> Transport:
    """Alex_f(E) as Alex_{f₁}(G) ×_α Alex_{f₂}(A) with f₁, f₂ induced by f."""
    started = time.perf_counter()
    validate_extension(ext)
    E, G = ext.E, ext.G
    f = tuple(f)
    if sorted(f) != list(E.elements()) or not is_group_hom(f, E, E):
        raise DomainError("FNotAutomorphism: f is not an automorphism of E")
    Aset = set(ext.A)
    if any(f[a] not in Aset for a in ext.A):
        raise DomainError("FDoesNotPreserveA: f does not map A onto itself")
    f1 = tuple(ext.pi[f[ext.kappa[g]]] for g in G.elements())
    Agrp, embed = subgroup_as_group(E, ext.A, "A")
    local = {e: i for i, e in enumerate(embed)}
    f2 = tuple(local[f[e]] for e in embed)
    return _transport(ext, alexander_quandle(G, f1), alexander_quandle(Agrp, f2), alexander_quandle(E, f),
                      Agrp, embed, "transport-alex", started)


def direct_product_extension(G: FiniteGroup, A: FiniteGroup) -> GroupExtensionData:
    """G × A over G, A embedded as {(1, a)} (indices 0..|A|-1)."""
    E = direct_product(G, A)
    return make_extension(E, list(range(A.size)))


def product_transport_report(G: FiniteGroup, A: FiniteGroup, word: QuandleWord | None = None,
                             f1: Sequence[int] | None = None, f2: Sequence[int] | None = None) -> Report:
    """For E = G × A the transported data is the product quandle with μ ≡ 0."""
    started = time.perf_counter()
    ext = direct_product_extension(G, A)
    if word is not None:
        tr = extension_transport_qw(ext, word)
        QA = q_w(tr.fiber_group, word)
    else:
        f = tuple(f1[g] * A.size + f2[a] for g in G.elements() for a in A.elements())
        tr = extension_transport_alex(ext, f)
        QA = alexander_quandle(tr.fiber_group, tuple(f2))
    product = product_dynamical(tr.cocycle.base, QA)
    checks = dict(tr.report.data["checks"])
    checks["mu_zero"] = tr.report.data["mu_zero"]
    checks["product_cocycle"] = tr.cocycle.alpha == product.alpha
    return make_report("transport-product", checks, {"G": G.name, "A": A.name}, None, started)


# ---------------------------------------------------------------------------
# the adjoint group of R_4
# ---------------------------------------------------------------------------

def r4_adjoint_report() -> Report:
    """Adj(R_4): abelianization Z², and the quotient e_i ↦ s·r^i onto D_4 sending e_0 e_2⁻¹ to r²."""
    started = time.perf_counter()
    R4 = dihedral_quandle(4)
    P = adj_w_presentation(R4, CONJ(1))
    ab = abelianization(P)
    D4 = dihedral_group(4)          # s^f r^i at index 4f + i
    assign = tuple(4 + i for i in range(4))
    relators_ok = all(evaluate_word(D4, r, assign) == D4.identity for r in P.relators)
    b0 = evaluate_word(D4, (1, -3), assign)
    r2 = 2
    checks = {"abelianization_Z2": ab.invariant_factors == (0, 0), "relators_in_D4": relators_ok,
              "b0_is_r2": b0 == r2, "b0_order_2": D4.element_order(b0) == 2,
              "assignment_is_quandle_map": is_quandle_hom(assign, R4, conj_quandle(D4))}
    data = {"relators": [list(r) for r in P.relators], "abelianization": str(ab),
            "assignment": ["s r^%d" % i for i in range(4)], "b0_image": "r^2", "b0_order": D4.element_order(b0)}
    return make_report("adjoint-r4", checks, data, None, started)


# ---------------------------------------------------------------------------
# the projection Adj_w(E) → Adj_w(X) after abelianizing
# ---------------------------------------------------------------------------

def projection_kernel_report(cocycle: DynamicalCocycle, word: QuandleWord) -> Report:
    """Compare Ab(Adj_w(E)) modulo the fibre differences e_{(x,s)}⁻¹e_{(x,t)} with Ab(Adj_w(X)).

    The quotient surjects onto Ab(Adj_w(X)); equal invariant factors make that
    surjection an isomorphism (finitely generated abelian groups are Hopfian), so
    the differences then generate the whole kernel of the abelianized projection.
    """
    started = time.perf_counter()
    X, m = cocycle.base, cocycle.fiber_size
    E = build_extension(cocycle)
    PE = adj_w_presentation(E, word)
    PX = adj_w_presentation(X, word)
    diffs = tuple((-(x * m + 1), x * m + t + 1) for x in X.elements() for t in range(1, m))
    quotient = GroupPresentation(PE.generators, PE.relators + diffs)
    ab_e, ab_x, ab_q = abelianization(PE), abelianization(PX), abelianization(quotient)
    checks = {"quotient_matches_base": ab_q == ab_x}
    data = {"word": str(word), "Ab_Adj_E": str(ab_e), "Ab_Adj_X": str(ab_x), "Ab_quotient": str(ab_q),
            "differences_span_abelianized_kernel": ab_q == ab_x}
    return make_report("adjoint-projection", checks, data, None, started)
