import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iquantum.cartan import (ORDER_EQUAL, ORDER_GREATER, ORDER_INCOMPARABLE, ORDER_LESS,
                             SatakeDiagram, cartan_gram, parse_tau, satake)

TYPES = ["A1", "A2", "A3", "B2", "C2", "G2", "A1xA1", "D4", "B3"]
# number of positive roots
NPOS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "C2": 4, "G2": 6, "A1xA1": 2, "D4": 12, "B3": 9}


def test_bilinear_form_examples():
    A2 = satake("A2")
    assert A2.bil(A2.simple(0), A2.simple(1)) == -1
    B2 = satake("B2")
    for S in (A2, B2):
        for i in range(S.n):
            assert S.bil(S.simple(i), S.simple(i)) == 2 * S.d[i]
    A3 = satake("A3")
    assert A3.bil(A3.simple(0), A3.simple(2)) == 0


def test_reflections():
    S = satake("A2")
    assert S.reflect(0, S.simple(1)) == (1, 1)
    assert S.reflect(0, S.simple(0)) == (-1, 0)
    assert S.apply_word((0, 1, 0), S.simple(0)) == (0, -1)


@pytest.mark.parametrize("name", TYPES)
def test_positive_roots_and_longest_word(name):
    S = satake(name)
    assert len(S.positive_roots()) == NPOS[name]
    w0 = S.longest_word()
    assert S.is_reduced(w0) and len(w0) == NPOS[name]
    roots = S.positive_root_sequence(w0)
    assert sorted(roots) == sorted(S.positive_roots())


@pytest.mark.parametrize("name", TYPES)
def test_reflection_preserves_form(name):
    S = satake(name)
    roots = S.positive_roots()
    for i in range(S.n):
        for a, b in itertools.product(roots, repeat=2):
            assert S.bil(S.reflect(i, a), S.reflect(i, b)) == S.bil(a, b)


def test_restricted_reflections():
    assert satake("A1").restricted_reflection(0) == (0,)
    assert satake("A1xA1", "1:2").restricted_reflection(0) == (0, 1)
    assert satake("A2", "1:2").restricted_reflection(0) == (0, 1, 0)


def test_tau_i():
    assert satake("A1").tau_i(0, 0) == 0
    assert satake("A1xA1", "1:2").tau_i(0, 0) == 0
    assert satake("A2", "1:2").tau_i(0, 0) == 1
    with pytest.raises(ValueError):
        satake("A3", "1:3").tau_i(0, 1)


@pytest.mark.parametrize("name,tau,word", [
    ("A2", "1:2", (0, 1, 0)),
    ("A1", None, (0,)),
    ("A1xA1", "1:2", (0, 1)),
])
def test_adapted_longest_word(name, tau, word):
    assert satake(name, tau).adapted_longest_word() == word


@pytest.mark.parametrize("name,tau", [("A3", "1:3"), ("A3", None), ("D4", "3:4"), ("A2", "1:2"),
                                      ("B2", None), ("A1xA1", "1:2")])
def test_adapted_word_is_reduced_w0(name, tau):
    S = satake(name, tau)
    w = S.adapted_longest_word()
    assert S.is_reduced(w) and len(w) == len(S.positive_roots())


def test_root_sequences():
    assert satake("A2").positive_root_sequence((0, 1, 0)) == [(1, 0), (1, 1), (0, 1)]
    assert satake("A1").positive_root_sequence((0,)) == [(1,)]
    assert satake("A1xA1").positive_root_sequence((0, 1)) == [(1, 0), (0, 1)]


def test_order_pairs():
    S = satake("A2", "1:2")
    assert S.order_pairs(((0, 0), (1, 1)), ((0, 0), (1, 1))) == ORDER_EQUAL
    assert S.order_pairs(((0, 0), (1, 1)), ((1, 0), (0, 0))) == ORDER_LESS
    assert S.order_pairs(((1, 0), (0, 0)), ((0, 0), (1, 1))) == ORDER_GREATER
    # total weights differ
    assert S.order_pairs(((0, 0), (1, 1)), ((1, 0), (1, 0))) == ORDER_INCOMPARABLE
    # same total weight, α difference not of one sign
    assert S.order_pairs(((1, 0), (0, 0)), ((0, 1), (0, 0))) == ORDER_INCOMPARABLE


def test_parse_tau():
    assert parse_tau("1:2", 2) == (1, 0)
    assert parse_tau(None, 3) == (0, 1, 2)
    assert parse_tau("1:3", 3) == (2, 1, 0)
    with pytest.raises(ValueError):
        parse_tau("1:5", 3)


def test_invalid_diagrams():
    with pytest.raises(ValueError):
        satake("A3", "1:2")
    with pytest.raises(ValueError):
        SatakeDiagram([[2, 1], [1, 2]])
    with pytest.raises(ValueError):
        cartan_gram("Z", 3)


def test_doubled_and_components():
    S = satake("A2")
    D = S.doubled()
    assert D.n == 4 and D.tau == (2, 3, 0, 1)
    assert D.double_of is S
    assert D.components() == [[0, 1], [2, 3]]
    assert satake("A1xA1").components() == [[0], [1]]


@pytest.mark.parametrize("name,tau", [("A2", "1:2"), ("A3", "1:3"), ("A1xA1", "1:2")])
def test_restricted_elements_distinct(name, tau):
    S = satake(name, tau)
    elems = S.restricted_elements(3)
    assert len({e for _, e in elems}) == len(elems)


@given(st.sampled_from(TYPES), st.data())
def test_weyl_action_is_linear(name, data):
    S = satake(name)
    a = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=S.n, max_size=S.n)))
    b = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=S.n, max_size=S.n)))
    w = tuple(data.draw(st.lists(st.integers(0, S.n - 1), max_size=5)))
    ab = tuple(x + y for x, y in zip(a, b))
    lhs = S.apply_word(w, ab)
    rhs = tuple(x + y for x, y in zip(S.apply_word(w, a), S.apply_word(w, b)))
    assert lhs == rhs
    assert S.bil(S.apply_word(w, a), S.apply_word(w, b)) == S.bil(a, b)
