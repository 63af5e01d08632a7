import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qf.algebra import cyclic_group, klein_group, symmetric_group
from qf.bridge import (
    FactorSet, GroupCohomology2, build_module_extension, cohomologous_factor_sets, constant_module,
    factor_set_violation, gamma_map, group_cocycle_violation, is_symmetric, lambda_map, make_factor_set,
    module_violation, negation_doubling_module, symmetric_classes, trivial_module, twist_factor_set,
    verify_gamma, verify_lambda,
)
from qf.cohomology import FiniteAbelianCoefficients, check_cocycle2
from qf.errors import DomainError, ValidationError
from qf.quandle import are_isomorphic, conj_quandle, core_quandle, dihedral_quandle, quandle_axiom_violation, trivial_quandle

Z2 = FiniteAbelianCoefficients((2,))
Z3 = FiniteAbelianCoefficients((3,))


def brute_group_h2_order(G, A):
    """|Z²|/|B²| for trivial action, enumerating every ν: G×G → A."""
    n, t = G.size, G.table
    cocycles = set()
    for vals in itertools.product(A.elements(), repeat=n * n):
        nu = [vals[i * n:(i + 1) * n] for i in range(n)]
        if all(A.add(nu[y][z], nu[x][t[y][z]]) == A.add(nu[t[x][y]][z], nu[x][y])
               for x, y, z in itertools.product(range(n), repeat=3)):
            cocycles.add(vals)
    boundaries = set()
    for lam in itertools.product(A.elements(), repeat=n):
        boundaries.add(tuple(A.sub(A.add(lam[x], lam[y]), lam[t[x][y]]) for x in range(n) for y in range(n)))
    assert boundaries <= cocycles
    return len(cocycles) // len(boundaries)


@pytest.mark.parametrize("G,order", [(cyclic_group(2), 2), (cyclic_group(3), 1), (cyclic_group(4), 2),
                                     (klein_group(), 8)])
def test_group_h2_against_exhaustion(G, order):
    H = GroupCohomology2(G, Z2)
    assert H.order == order == brute_group_h2_order(G, Z2)


def test_group_h2_of_s3():
    assert GroupCohomology2(symmetric_group(3), Z2).order == 2


def test_modules():
    X = dihedral_quandle(3)
    assert module_violation(trivial_module(X, Z3)) is None
    assert module_violation(negation_doubling_module(X, Z3)) is None
    ident = tuple(Z2.elements())
    bad = module_violation(constant_module(trivial_quandle(2), Z2, ident, ident))
    assert bad is not None and bad[0] == "diagonal"


def test_trivial_module_factor_sets_are_quandle_cocycles():
    X = dihedral_quandle(4)
    mod = trivial_module(X, Z2)
    for vals in itertools.product(range(2), repeat=12):
        it = iter(vals)
        mu = [[0 if x == y else next(it) for y in range(4)] for x in range(4)]
        fs = FactorSet(mod, tuple(map(tuple, mu)))
        ok = factor_set_violation(fs) is None
        table = [[X.table[a // 2][b // 2] * 2 + (a + mu[a // 2][b // 2]) % 2 for b in range(8)] for a in range(8)]
        assert ok == (quandle_axiom_violation(table) is None)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_twisting_preserves_factor_sets(lam):
    X = dihedral_quandle(3)
    fs = make_factor_set(negation_doubling_module(X, Z3), [[0] * 3 for _ in range(3)])
    twisted = make_factor_set(fs.module, twist_factor_set(fs, lam))
    assert cohomologous_factor_sets(fs, twisted) is not None


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(4), klein_group()])
def test_lambda_images_build_quandles(G):
    H = GroupCohomology2(G, Z2)
    for v in H.cocycles():
        nu = H.to_table(v)
        if not is_symmetric(nu):
            with pytest.raises(ValidationError):
                lambda_map(G, Z2, nu)
            continue
        E = build_module_extension(lambda_map(G, Z2, nu))
        assert quandle_axiom_violation(E.table) is None


def test_lambda_needs_abelian_group():
    S3 = symmetric_group(3)
    with pytest.raises(DomainError):
        lambda_map(S3, Z2, [[0] * 6 for _ in range(6)])
    with pytest.raises(DomainError):
        symmetric_classes(S3, Z2)


def test_lambda_of_carry_rebuilds_r4():
    fs = lambda_map(cyclic_group(2), Z2, [[0, 0], [0, 1]])
    assert fs.mu == ((0, 1), (1, 0))
    assert are_isomorphic(build_module_extension(fs), dihedral_quandle(4)) is not None


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(4), klein_group(), symmetric_group(3)])
def test_gamma_outputs_are_quandle_cocycles(G):
    H = GroupCohomology2(G, Z2)
    X = conj_quandle(G)
    for v in itertools.islice(H.cocycles(), 200):
        nu = H.to_table(v)
        assert group_cocycle_violation(G, Z2, nu) is None
        check_cocycle2(X, Z2, gamma_map(G, Z2, nu))


def test_bridge_reports():
    assert verify_lambda(cyclic_group(4), Z2, twists=20).ok
    assert verify_gamma(symmetric_group(3), Z2, twists=20).ok


def test_core_of_z2_is_trivial():
    assert core_quandle(cyclic_group(2)).is_trivial
