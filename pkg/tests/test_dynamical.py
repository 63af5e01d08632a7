import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qf.dynamical import (
    abelian_dynamical, act_on_dynamical, aut_x0_S, build_extension, build_generalized, cohomologous_dynamical,
    fiber_quandle, fiber_transport_map, fibers_isomorphic_report, kernel_twists, make_dynamical, pair_from_table, phi_restrict, product_dynamical, splitting_section, trivial_dynamical,
    twist_dynamical, validate_dynamical, verify_wells_dynamical,
)
from qf.errors import CocycleError
from qf.quandle import (
    are_isomorphic, automorphism_group, dihedral_quandle, is_quandle_hom, product_quandle, quandle_axiom_violation,
    stabilizer_aut, trivial_quandle,
)

T2, R3, R4 = trivial_quandle(2), dihedral_quandle(3), dihedral_quandle(4)


def brute_dynamical_cocycles(X, m):
    """Every α with α_{x,y}(s,t) depending on s only through a permutation, by exhaustion (tiny cases)."""
    perms = list(itertools.permutations(range(m)))
    out = []
    n = X.size
    for choice in itertools.product(perms, repeat=n * n):
        alpha = [[[[choice[x * n + y][s]] * m for s in range(m)] for y in range(n)] for x in range(n)]
        if validate_dynamical(X, alpha, m) is None:
            out.append(alpha)
    return out


def test_product_extension_is_product_quandle():
    c = product_dynamical(R3, T2)
    assert build_extension(c).table == product_quandle(R3, T2).table


def test_trivial_cocycle_extension():
    E = build_extension(trivial_dynamical(R3, 2))
    assert quandle_axiom_violation(E.table) is None
    assert fiber_quandle(trivial_dynamical(R3, 2), 0).is_trivial


def test_r4_over_t2():
    c = abelian_dynamical(T2, [[0, 1], [1, 0]], 2)
    E = build_extension(c)
    assert are_isomorphic(E, R4) is not None


@pytest.mark.parametrize("alpha,condition", [
    ([[[[1, 1], [0, 0]]]], "idempotent"),
    ([[[[0, 0], [0, 1]]]], "bijective"),
])
def test_validation_witnesses(alpha, condition):
    bad = validate_dynamical(trivial_quandle(1), alpha, 2)
    assert bad is not None and bad[0] == condition
    with pytest.raises(CocycleError):
        make_dynamical(trivial_quandle(1), alpha, 2)


def test_extension_is_quandle_exactly_for_cocycles():
    # over T2 with fibre 2, α_{x,y}(s,t) = σ_{x,y}(s): exhaust all 16 choices
    perms = [(0, 1), (1, 0)]
    valid = 0
    for choice in itertools.product(perms, repeat=4):
        alpha = [[[[choice[2 * x + y][s]] * 2 for s in range(2)] for y in range(2)] for x in range(2)]
        ok = validate_dynamical(T2, alpha, 2) is None
        table = [[(a // 2) * 2 + alpha[a // 2][b // 2][a % 2][b % 2] for b in range(4)] for a in range(4)]
        assert ok == (quandle_axiom_violation(table) is None)
        valid += ok
    assert valid == len(brute_dynamical_cocycles(T2, 2))


def test_generalized_pair_round_trip():
    E = build_extension(product_dynamical(R3, T2))
    pair = pair_from_table(E.table, 3, 2)
    assert build_generalized(pair).table == E.table


lams = st.lists(st.permutations([0, 1, 2]), min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(lams)
def test_twist_gives_isomorphic_extension(lam):
    c = product_dynamical(R3, R3)
    d = twist_dynamical(c, lam)
    assert validate_dynamical(R3, d.alpha, 3) is None
    f = tuple(x * 3 + lam[x][s] for x in range(3) for s in range(3))
    assert is_quandle_hom(f, build_extension(c), build_extension(d))
    assert cohomologous_dynamical(c, d) is not None


def test_not_cohomologous():
    r4 = abelian_dynamical(T2, [[0, 1], [1, 0]], 2)
    assert cohomologous_dynamical(trivial_dynamical(T2, 2), r4) is None


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(automorphism_group(R3)), st.permutations([0, 1]))
def test_action_preserves_cocycles(phi, theta):
    c = product_dynamical(R3, T2)
    moved = act_on_dynamical(phi, theta, c)
    assert validate_dynamical(R3, moved.alpha, 2) is None
    f = tuple(phi[x] * 2 + theta[s] for x in range(3) for s in range(2))
    assert is_quandle_hom(f, build_extension(c), build_extension(moved))


def test_fiber_transport_maps_are_isomorphisms():
    c = product_dynamical(R3, R3)
    for x, z, u in itertools.product(range(3), range(3), range(3)):
        f = fiber_transport_map(c, x, z, u)
        assert is_quandle_hom(f, fiber_quandle(c, x), fiber_quandle(c, R3.table[x][z]))
    assert fibers_isomorphic_report(c).ok


def test_aut_x0_and_kernel_counts():
    c = trivial_dynamical(T2, 2)
    auts = aut_x0_S(c, 0)
    assert len(auts) == 4
    kernel = [a for a in auts if phi_restrict(a, 0) == ((0, 1), (0, 1))]
    assert len(kernel) == len(kernel_twists(c, 0)) == 2


@pytest.mark.parametrize("make,S", [
    (lambda: trivial_dynamical(T2, 2), None),
    (lambda: product_dynamical(R3, T2), T2),
    (lambda: abelian_dynamical(T2, [[0, 1], [1, 0]], 2), None),
    (lambda: product_dynamical(R4, R3), R3),
])
def test_exact_sequence(make, S):
    rep = verify_wells_dynamical(make(), 0, S_quandle=S)
    assert rep.ok, rep.witness


@pytest.mark.parametrize("X,S", [(R3, T2), (T2, T2), (R4, R3)])
def test_splitting_section(X, S):
    assert splitting_section(X, S, 0).ok
    assert len(stabilizer_aut(X, 0)) >= 1
