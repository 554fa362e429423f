from collections import Counter
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from notpowers import errors
from notpowers.families import (
    FamilySpec,
    builtin_corpus,
    fingerprint,
    invariant_factor_lists,
    make,
    parse_spec,
    smallest_unit_of_order,
)
from notpowers.group import build_from_cayley, center
from notpowers.structure import frobenius_structure


def order_counts(G):
    return dict(sorted(Counter(G.element_orders.tolist()).items()))


@pytest.mark.parametrize("m", [3, 4, 5, 6, 9])
def test_dihedral(m):
    G = make(f"dihedral:{m}")
    assert G.order == 2 * m
    involutions = m + (1 if m % 2 == 0 else 0)
    assert order_counts(G)[2] == involutions
    assert not G.is_abelian()


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_dicyclic(m):
    G = make(f"dicyclic:{m}")
    assert G.order == 4 * m
    assert order_counts(G)[2] == 1
    assert center(G).order == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetric_and_alternating(n):
    S = make(f"symmetric:{n}")
    assert S.order == factorial(n)
    if n >= 3:
        A = make(f"alternating:{n}")
        assert A.order == factorial(n) // 2


def test_quaternion_and_a5_element_orders():
    assert order_counts(make("dicyclic:2")) == {1: 1, 2: 1, 4: 6}
    assert order_counts(make("alternating:5")) == {1: 1, 2: 15, 3: 20, 5: 24}


@pytest.mark.parametrize("q, d", [(3, 2), (5, 2), (5, 4), (7, 3), (7, 6), (13, 4)])
def test_metacyclic_frobenius(q, d):
    G = make(f"metacyclic_frobenius:{q},{d}")
    fs = frobenius_structure(G)
    assert (fs.kernel.order, fs.complement.order) == (q, d)


def test_smallest_unit():
    assert smallest_unit_of_order(3, 7) == 2
    assert smallest_unit_of_order(6, 7) == 3
    with pytest.raises(errors.InvalidParameters):
        smallest_unit_of_order(4, 7)


def test_semidirect_family():
    assert make("semidirect:7,3,2").same_table(make("metacyclic_frobenius:7,3"))
    with pytest.raises(errors.InvalidParameters):
        make("semidirect:7,3,3")


@pytest.mark.parametrize("text", [
    "cyclic:4", "abelian:2,6", "dihedral:5", "dicyclic:3", "symmetric:4",
    "alternating:5", "metacyclic_frobenius:7,6", "semidirect:7,3,2", "dp:cyclic:2|dihedral:3",
])
def test_spec_round_trip(text):
    assert str(parse_spec(text)) == text
    assert make(text).label == text


@pytest.mark.parametrize("text", ["", "cyclic", "cyclic:x", "torus:3", "dp:cyclic:2", "direct_product:2"])
def test_bad_specs(text):
    with pytest.raises(errors.ParseError):
        parse_spec(text)


@pytest.mark.parametrize("text", ["cyclic:0", "cyclic:2,3", "metacyclic_frobenius:8,2", "metacyclic_frobenius:7,4"])
def test_bad_parameters(text):
    with pytest.raises(errors.InvalidParameters):
        make(text)


def test_direct_product_spec():
    G = make("dp:cyclic:2|dihedral:3")
    assert G.order == 12
    assert FamilySpec("direct_product", (), (parse_spec("cyclic:2"), parse_spec("cyclic:3"))).family == "direct_product"


@pytest.mark.parametrize("n, lists", [
    (1, [()]),
    (8, [(8,), (2, 4), (2, 2, 2)]),
    (12, [(12,), (2, 6)]),
    (36, [(36,), (2, 18), (3, 12), (6, 6)]),
])
def test_invariant_factor_lists(n, lists):
    assert invariant_factor_lists(n) == lists


def test_corpus_six_golden():
    labels = [G.label for G in builtin_corpus(6)]
    assert labels == [
        "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "abelian:2,2",
        "cyclic:5", "cyclic:6", "symmetric:3",
    ]


def test_corpus_sizes_regression():
    assert builtin_corpus(0) == []
    assert len(builtin_corpus(12)) == 24
    assert len(builtin_corpus(24)) == 65


def test_corpus_is_deterministic_and_sorted(small_corpus):
    again = builtin_corpus(24)
    assert [G.label for G in again] == [G.label for G in small_corpus]
    assert all(a.same_table(b) for a, b in zip(again, small_corpus))
    orders = [G.order for G in small_corpus]
    assert orders == sorted(orders)
    assert len({fingerprint(G) for G in small_corpus}) == len(small_corpus)


@given(st.sampled_from(builtin_corpus(40)))
@settings(max_examples=50, deadline=None)
def test_corpus_tables_are_valid_groups(G):
    build_from_cayley(G.table)
    assert make(G.label).same_table(G)
