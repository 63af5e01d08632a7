import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from qf.algebra import (
    AbelianGroupStructure, IntMatrix, cokernel_structure, compose, cyclic_group, dihedral_group, direct_product,
    group_automorphisms, is_normal_subgroup, klein_group, make_group, perm_inverse, power_map, quotient_group,
    smith_normal_form, subgroup_closure, symmetric_group,
)
from qf.errors import NoIdentity, NoInverse, NotAssociative


def _associative(G):
    t = G.table
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in itertools.product(G.elements(), repeat=3))


@pytest.mark.parametrize("G,order,abelian", [
    (cyclic_group(4), 4, True), (dihedral_group(4), 8, False), (symmetric_group(3), 6, False),
    (klein_group(), 4, True), (direct_product(cyclic_group(2), cyclic_group(3)), 6, True),
])
def test_constructed_groups_are_groups(G, order, abelian):
    assert G.size == order
    assert G.identity == 0
    assert _associative(G)
    assert all(G.mul(a, G.inv(a)) == 0 for a in G.elements())
    assert G.is_abelian == abelian


def test_dihedral_relations():
    D = dihedral_group(5)
    r, s = 1, 5
    assert D.element_order(r) == 5 and D.element_order(s) == 2
    assert D.mul(D.mul(s, r), s) == D.inv(r)


def test_make_group_rejects_bad_tables():
    with pytest.raises(NoInverse):
        make_group([[0, 1, 2], [1, 0, 0], [2, 2, 1]])
    with pytest.raises(NoIdentity):
        make_group([[1, 1], [1, 1]])
    # a Latin square with identity 0 that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAssociative):
        make_group(loop)


def test_automorphism_counts():
    # |Aut(Z_n)| = φ(n), |Aut(S3)| = 6, |Aut(V4)| = 6, |Aut(D4)| = 8
    for n in range(2, 9):
        phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
        assert len(group_automorphisms(cyclic_group(n))) == phi
    assert len(group_automorphisms(symmetric_group(3))) == 6
    assert len(group_automorphisms(klein_group())) == 6
    assert len(group_automorphisms(dihedral_group(4))) == 8


def test_power_map_is_automorphism_for_units():
    Z = cyclic_group(7)
    assert power_map(Z, 3) in group_automorphisms(Z)


def test_quotient_by_center():
    D = dihedral_group(4)
    center = [z for z in D.elements() if all(D.mul(z, g) == D.mul(g, z) for g in D.elements())]
    assert sorted(center) == [0, 2]
    assert is_normal_subgroup(D, center)
    Q, pi, reps = quotient_group(D, center)
    assert Q.size == 4 and Q.is_abelian
    assert all(pi[D.mul(a, b)] == Q.mul(pi[a], pi[b]) for a in D.elements() for b in D.elements())


def test_subgroup_closure():
    S = symmetric_group(3)
    assert len(subgroup_closure(S, [1])) in (2, 3)
    assert len(subgroup_closure(S, list(S.elements()))) == 6


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))))


@given(perms)
def test_perm_inverse_composes_to_identity(p):
    assert compose(p, perm_inverse(p)) == tuple(range(len(p)))


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_smith_form_properties(rows):
    M = IntMatrix(rows)
    sf = smith_normal_form(M, u_inv=True, v_inv=True)
    assert (sf.U @ M @ sf.V).tolist() == sf.D.tolist()
    assert abs(sf.U.det()) == 1 and abs(sf.V.det()) == 1
    assert (sf.U @ sf.U_inv).tolist() == IntMatrix.identity(M.rows).tolist()
    assert (sf.V @ sf.V_inv).tolist() == IntMatrix.identity(M.cols).tolist()
    d = sf.diagonal
    assert all(sf.D.data[i][j] == 0 for i in range(M.rows) for j in range(M.cols) if i != j)
    nz = [abs(x) for x in d if x]
    assert all(x >= 0 for x in d)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert d[:len(nz)] == nz  # zeros trail


def _cokernel_order_brute(rows, moduli):
    # span of the columns in ⊕ Z/m_i
    cols = [tuple(rows[i][j] % moduli[i] for i in range(len(moduli))) for j in range(len(rows[0]))]
    seen = {tuple(0 for _ in moduli)}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for c in cols:
            w = tuple((a + b) % m for a, b, m in zip(v, c, moduli))
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return math.prod(moduli) // len(seen)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2), min_size=r, max_size=r),
    st.lists(st.integers(2, 6), min_size=r, max_size=r))))
def test_cokernel_order_matches_brute_force(data):
    rows, moduli = data
    structure = cokernel_structure(IntMatrix(rows), moduli)
    assert structure.order == _cokernel_order_brute(rows, moduli)


def test_abelian_structure_formatting():
    s = AbelianGroupStructure.from_cyclic_orders([2, 4, 0, 1])
    assert s.invariant_factors == (2, 4, 0)
    assert s.rank == 1 and s.torsion == (2, 4) and s.order is None
    assert str(s) == "Z_2 x Z_4 x Z"
    assert AbelianGroupStructure.from_cyclic_orders([2, 3]).invariant_factors == (6,)
