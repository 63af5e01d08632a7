import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qf.algebra import cyclic_group, dihedral_group, group_automorphisms, power_map, symmetric_group
from qf.catalog import catalog_quandles, parse_quandle
from qf.errors import DomainError, ValidationError
from qf.quandle import (
    alexander_quandle, are_isomorphic, automorphism_group, conj_quandle, core_quandle, dihedral_quandle,
    inn_orbits, inner_group, is_connected, is_quandle_hom, make_quandle, product_quandle, quandle_axiom_violation,
    quandle_homs, relabel, stabilizer_aut, trivial_quandle,
)


def brute_automorphisms(X):
    return sorted(p for p in itertools.permutations(range(X.size)) if is_quandle_hom(p, X, X))


def brute_homs(X, Y):
    return sorted(f for f in itertools.product(range(Y.size), repeat=X.size) if is_quandle_hom(f, X, Y))


def test_dihedral_table():
    R5 = dihedral_quandle(5)
    assert all(R5.table[i][j] == (2 * j - i) % 5 for i in range(5) for j in range(5))


def test_conj_orientation():
    S3 = symmetric_group(3)
    X = conj_quandle(S3, 1)
    t, inv = S3.table, S3.inverse
    assert all(X.table[a][b] == t[t[inv[b]][a]][b] for a in S3.elements() for b in S3.elements())
    assert conj_quandle(S3, 0).is_trivial


def test_core_and_alexander_identities():
    for n in range(2, 9):
        Z = cyclic_group(n)
        assert core_quandle(Z).table == dihedral_quandle(n).table
        assert alexander_quandle(Z, power_map(Z, -1)).table == dihedral_quandle(n).table


def test_alexander_rejects_non_automorphism():
    with pytest.raises(DomainError):
        alexander_quandle(cyclic_group(4), power_map(cyclic_group(4), 2))


@pytest.mark.parametrize("table,axiom", [
    ([[1, 0], [0, 1]], "Q1"),
    ([[0, 0, 0], [1, 1, 1], [1, 2, 2]], "Q2"),
])
def test_axiom_witnesses(table, axiom):
    bad = quandle_axiom_violation(table)
    assert bad is not None and bad[0] == axiom
    with pytest.raises(ValidationError):
        make_quandle(table)


def test_rack_that_is_not_distributive():
    # columns id, (0 2), (0 1): idempotent with bijective columns, not right-distributive
    table = [[0, 2, 1], [1, 1, 0], [2, 0, 2]]
    bad = quandle_axiom_violation(table)
    assert bad is not None and bad[0] == "Q3"
    x, y, z = bad[1]
    assert table[table[x][y]][z] != table[table[x][z]][table[y][z]]


@pytest.mark.parametrize("spec", ["trivial:3", "dihedral:3", "dihedral:4", "dihedral:5", "conj:S3", "core:V4",
                                  "alex:Z5:2", "core:Z6"])
def test_automorphisms_match_brute_force(spec):
    X = parse_quandle(spec)
    assert sorted(automorphism_group(X)) == brute_automorphisms(X)


@pytest.mark.parametrize("src,dst", [("trivial:2", "dihedral:3"), ("dihedral:3", "dihedral:3"),
                                     ("dihedral:4", "trivial:2"), ("dihedral:3", "conj:S3")])
def test_homs_match_brute_force(src, dst):
    X, Y = parse_quandle(src), parse_quandle(dst)
    assert sorted(quandle_homs(X, Y)) == brute_homs(X, Y)


def test_known_automorphism_orders():
    # |Aut(R_n)| = n·φ(n) for odd n; R4 has 8; T_n has n!
    assert len(automorphism_group(dihedral_quandle(5))) == 20
    assert len(automorphism_group(dihedral_quandle(4))) == 8
    assert len(automorphism_group(trivial_quandle(4))) == 24
    assert len(stabilizer_aut(dihedral_quandle(5), 0)) == 4


def test_inner_group_and_orbits():
    assert len(inner_group(dihedral_quandle(3))) == 6
    assert len(inner_group(dihedral_quandle(4))) == 4
    assert is_connected(dihedral_quandle(5))[0]
    assert inn_orbits(dihedral_quandle(4)) == [[0, 2], [1, 3]]
    assert len(inn_orbits(conj_quandle(symmetric_group(3)))) == 3
    assert not is_connected(trivial_quandle(2))[0]


def test_product_is_quandle():
    P = product_quandle(dihedral_quandle(3), trivial_quandle(2))
    assert quandle_axiom_violation(P.table) is None
    assert len(inn_orbits(P)) == 2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([3, 4, 5, 6]).flatmap(lambda n: st.tuples(st.just(n), st.permutations(list(range(n))))))
def test_relabel_is_isomorphic(data):
    n, sigma = data
    X = dihedral_quandle(n)
    Y = relabel(X, sigma)
    assert is_quandle_hom(sigma, X, Y)
    f = are_isomorphic(X, Y)
    assert f is not None and is_quandle_hom(f, X, Y)


def test_non_isomorphic_pairs():
    assert are_isomorphic(dihedral_quandle(4), trivial_quandle(4)) is None
    assert are_isomorphic(core_quandle(cyclic_group(4)), dihedral_quandle(4)) is not None
    assert are_isomorphic(conj_quandle(dihedral_group(4)), conj_quandle(symmetric_group(3))) is None


def test_every_alexander_over_small_groups_is_a_quandle():
    for G in (cyclic_group(5), symmetric_group(3), dihedral_group(4)):
        for f in group_automorphisms(G):
            assert quandle_axiom_violation(alexander_quandle(G, f).table) is None


def test_catalog_is_well_formed():
    names = [n for n, _ in catalog_quandles()]
    assert len(names) == len(set(names))
    assert all(quandle_axiom_violation(X.table) is None for _, X in catalog_quandles())
