import itertools

import pytest
from hypothesis import given, strategies as st

from qf.adjoint import (
    CONJ, CORE, abelianization, adj_phi_presentation, adj_w_presentation, adjointness_count_check,
    evaluate_word, extension_transport_alex, extension_transport_qw, free_reduce, invert_word, make_extension,
    parse_word, presentation_homs_to, product_transport_report, projection_kernel_report, q_w, r4_adjoint_report,
)
from qf.algebra import cyclic_group, dihedral_group, power_map, symmetric_group
from qf.catalog import parse_quandle
from qf.dynamical import abelian_dynamical, build_extension, product_dynamical
from qf.errors import DomainError, NotAHomomorphism, ValidationError
from qf.quandle import are_isomorphic, dihedral_quandle, inn_orbits, is_quandle_hom, trivial_quandle


def test_word_parsing():
    assert parse_word("core") == CORE
    assert parse_word("conj:2") == CONJ(2)
    with pytest.raises(ValueError):
        parse_word("commutator")


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12)


@given(words)
def test_free_reduce(w):
    r = free_reduce(w)
    assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
    S3 = symmetric_group(3)
    for assignment in itertools.product(S3.elements(), repeat=3):
        assert evaluate_word(S3, r, assignment) == evaluate_word(S3, w, assignment)
    assert free_reduce(list(w) + list(invert_word(w))) == ()


@pytest.mark.parametrize("spec", ["trivial:3", "dihedral:3", "dihedral:4", "dihedral:5", "conj:S3", "core:Z6"])
def test_abelianization_rank_counts_orbits(spec):
    X = parse_quandle(spec)
    ab = abelianization(adj_w_presentation(X, CONJ(1)))
    assert ab.rank == len(inn_orbits(X))
    assert ab.torsion == ()


def test_r4_abelianization():
    assert str(abelianization(adj_w_presentation(dihedral_quandle(4), CONJ(1)))) == "Z x Z"


def test_phi_presentation_rejects_non_automorphism():
    with pytest.raises(NotAHomomorphism):
        adj_phi_presentation(dihedral_quandle(3), [0, 0, 1])


@pytest.mark.parametrize("X", [trivial_quandle(2), dihedral_quandle(3), dihedral_quandle(4)], ids=lambda X: X.name)
@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(4), symmetric_group(3)], ids=lambda G: G.name)
@pytest.mark.parametrize("word", [CORE, CONJ(1)], ids=str)
def test_presentation_homs_count_quandle_maps(X, G, word):
    Q = q_w(G, word)
    brute = sum(1 for f in itertools.product(G.elements(), repeat=X.size) if is_quandle_hom(f, X, Q))
    assert len(presentation_homs_to(adj_w_presentation(X, word), G)) == brute
    assert adjointness_count_check(X, G, word).ok


def test_transport_core_z4():
    tr = extension_transport_qw(make_extension(cyclic_group(4), [0, 2]), CORE)
    assert tr.report.ok
    assert tr.mu == [[0, 1], [1, 0]]
    assert are_isomorphic(build_extension(tr.cocycle), dihedral_quandle(4)) is not None


def test_transport_conj_d4_center():
    D4 = dihedral_group(4)
    assert extension_transport_qw(make_extension(D4, [0, 2]), CONJ(1)).report.ok


def test_transport_alexander():
    Z8 = cyclic_group(8)
    ext = make_extension(Z8, [0, 2, 4, 6])
    assert extension_transport_alex(ext, power_map(Z8, 3)).report.ok
    with pytest.raises(DomainError):
        extension_transport_alex(ext, power_map(Z8, 2))


def test_make_extension_requires_normal_subgroup():
    with pytest.raises(ValidationError):
        make_extension(symmetric_group(3), [0, 1])


@pytest.mark.parametrize("G,A", [(cyclic_group(2), cyclic_group(2)), (symmetric_group(3), cyclic_group(2))])
def test_product_transport(G, A):
    rep = product_transport_report(G, A, CORE)
    assert rep.ok
    assert rep.data["checks"]["mu_zero"] and rep.data["checks"]["product_cocycle"]


def test_r4_report():
    rep = r4_adjoint_report()
    assert rep.ok, rep.witness


@pytest.mark.parametrize("word", [CORE, CONJ(1)], ids=str)
def test_fibre_differences_fill_abelianized_kernel(word):
    for c in (product_dynamical(dihedral_quandle(3), trivial_quandle(2)),
              abelian_dynamical(trivial_quandle(2), [[0, 1], [1, 0]], 2)):
        rep = projection_kernel_report(c, word)
        assert rep.ok, rep.data
