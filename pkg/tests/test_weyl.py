import itertools
import json
import random

import pytest

from cluster import weyl
from cluster.errors import IndexOutOfRange, InvalidCartan, NotReduced
from cluster.weyl import WeightVector

A2 = weyl.type_a(2)
A3 = weyl.type_a(3)
D4 = weyl.type_d(4)


def test__load_cartan__presets_and_json(tmp_path):
    assert weyl.load_cartan("A3") == A3
    assert weyl.load_cartan("[[2, -1], [-1, 2]]").matrix == A2.matrix
    assert weyl.load_cartan({"name": "mine", "matrix": [[2]]}).name == "mine"
    path = tmp_path / "cartan.json"
    path.write_text(json.dumps(D4.to_json()))
    assert weyl.load_cartan(str(path)) == D4
    with pytest.raises(InvalidCartan):
        weyl.load_cartan("E8")


def test__cartan__validation():
    with pytest.raises(InvalidCartan):
        weyl.CartanDatum.from_matrix([[2, -1], [0, 2]])
    with pytest.raises(InvalidCartan):
        weyl.CartanDatum.from_matrix([[2, 1], [1, 2]])
    with pytest.raises(InvalidCartan):
        weyl.CartanDatum.from_matrix([[1]])


def test__type_d__branch_node():
    assert D4.c(2, 1) == D4.c(2, 3) == D4.c(2, 4) == -1
    assert D4.c(3, 4) == 0
    assert D4.c(1, 3) == 0


def test__check_letter():
    with pytest.raises(IndexOutOfRange):
        weyl.is_reduced(A2, [1, 3])


def test__is_reduced():
    assert weyl.is_reduced(A2, [1, 2, 1])
    assert weyl.is_reduced(A2, [])
    assert not weyl.is_reduced(A2, [1, 1])
    assert not weyl.is_reduced(A2, [1, 2, 1, 2])
    with pytest.raises(NotReduced):
        weyl.require_reduced(A2, [2, 2])


def test__beta_roots__a2():
    assert weyl.beta_roots(A2, [1, 2, 1]) == [(1, 0), (1, 1), (0, 1)]
    assert weyl.format_root((1, 1)) == "α1 + α2"


def test__beta_roots__longest_word_lists_positive_roots_once():
    for cartan, count in ((A2, 3), (A3, 6), (D4, 12)):
        roots = weyl.positive_roots(cartan)
        assert len(roots) == len(set(roots)) == count
        assert all(weyl.is_positive(root) for root in roots)


def test__reduce_word():
    reduced = weyl.reduce_word(A2, [1, 2, 1, 2])
    assert weyl.is_reduced(A2, reduced)
    assert len(reduced) == 2
    assert weyl.same_element(A2, reduced, [2, 1])
    assert weyl.reduce_word(A3, [3, 1, 3]) == (1,)


def test__same_element__braid_relation():
    assert weyl.same_element(A2, [1, 2, 1], [2, 1, 2])
    assert not weyl.same_element(A2, [1, 2], [2, 1])
    assert weyl.same_element(A3, [1, 3], [3, 1])


def test__descents():
    assert weyl.descents(A2, [1, 2]) == [2]
    assert weyl.descents(A2, [1, 2, 1]) == [1, 2]
    assert weyl.descents(A2, []) == []


def test__length_additive():
    w0 = (1, 2, 1, 3, 2, 1)
    assert weyl.length_additive(A3, w0, (1, 2))
    assert weyl.length_additive(A3, w0, (3,))
    assert not weyl.length_additive(A2, (1, 2), (2,))


@pytest.mark.parametrize("p", range(0, 7))
def test__length_additive__every_prefix_of_longest_word(p):
    w0 = (1, 2, 1, 3, 2, 1)
    assert weyl.length_additive(A3, w0, w0[:p])


@pytest.mark.parametrize("cartan", [A2, A3])
def test__length_additive__implies_bruhat_leq(cartan):
    elements = weyl.enumerate_elements(cartan, len(weyl.longest_word(cartan)))
    for w in elements:
        for v in elements:
            if weyl.length_additive(cartan, w, v):
                assert weyl.bruhat_leq(cartan, v, w), (v, w)


def test__enumerate_elements__group_orders():
    assert len(weyl.enumerate_elements(A2, 3)) == 6
    assert len(weyl.enumerate_elements(A3, 6)) == 24
    assert len(weyl.enumerate_elements(A3, 1)) == 4
    assert all(weyl.is_reduced(A3, w) for w in weyl.enumerate_elements(A3, 6))


def test__longest_word():
    assert len(weyl.longest_word(A3)) == 6
    assert len(weyl.longest_word(D4)) == 12
    assert weyl.descents(A3, weyl.longest_word(A3)) == [1, 2, 3]


def _subword_interval(cartan, word):
    keys = set()
    for mask in itertools.product((False, True), repeat=len(word)):
        keys.add(weyl.element_key(cartan, [letter for letter, keep in zip(word, mask) if keep]))
    return keys


@pytest.mark.parametrize("cartan", [A2, A3])
def test__bruhat_leq__matches_subword_criterion(cartan):
    elements = weyl.enumerate_elements(cartan, len(weyl.longest_word(cartan)))
    for w in elements:
        below = _subword_interval(cartan, w)
        for v in elements:
            assert weyl.bruhat_leq(cartan, v, w) == (weyl.element_key(cartan, v) in below), (v, w)


def test__bruhat_leq__examples():
    assert weyl.bruhat_leq(A2, [], [1])
    assert weyl.bruhat_leq(A2, [2], [1, 2, 1])
    assert not weyl.bruhat_leq(A2, [1], [2])
    assert not weyl.bruhat_leq(A2, [1, 2], [2, 1])


def test__frozen_set_and_occurrences():
    word = (1, 2, 1)
    assert weyl.frozen_set(A2, word) == frozenset({2, 3})
    assert weyl.next_occurrence(word, 1) == 3
    assert weyl.next_occurrence(word, 2) == 4
    assert weyl.previous_occurrence(word, 3) == 1
    assert weyl.previous_occurrence(word, 1) == 0


def test__weight_vector__reflection_and_display():
    omega = WeightVector.fundamental_weight(A2, 1)
    moved = weyl.act(A2, [1], omega)
    assert moved == omega - WeightVector.simple_root(A2, 1)
    assert str(moved) == "ϖ1 - α1"
    assert moved.fundamental_coordinates(A2) == (-1, 1)
    assert moved.same_weight(WeightVector((-1, 1), (0, 0)), A2)
    assert str(WeightVector((0, 0), (0, 0))) == "0"


def test__act__rightmost_letter_first():
    omega = WeightVector.fundamental_weight(A2, 1)
    # s2 fixes w1, so s1 s2 w1 = s1 w1 while s2 s1 w1 moves further.
    assert weyl.act(A2, [1, 2], omega).same_weight(weyl.act(A2, [1], omega), A2)
    assert not weyl.act(A2, [2, 1], omega).same_weight(weyl.act(A2, [1], omega), A2)


@pytest.mark.parametrize("cartan", [A2, A3, D4])
def test__reflect__is_an_involution(cartan):
    rng = random.Random(cartan.rank)
    for _ in range(100):
        i = rng.choice(list(cartan.letters))
        root = tuple(rng.randint(-4, 4) for _ in cartan.letters)
        assert weyl.reflect_root(cartan, i, weyl.reflect_root(cartan, i, root)) == root
        weight = WeightVector(
            tuple(rng.randint(-3, 3) for _ in cartan.letters), tuple(rng.randint(-3, 3) for _ in cartan.letters)
        )
        assert weyl.reflect(cartan, i, weyl.reflect(cartan, i, weight)) == weight


@pytest.mark.parametrize("i", [1, 2, 3])
def test__coset_representative__minimal(i):
    omega = WeightVector.fundamental_weight(A3, i)
    for w in weyl.enumerate_elements(A3, 6):
        rep = weyl.coset_representative(A3, w, i)
        assert weyl.is_reduced(A3, rep)
        assert len(rep) <= len(w)
        assert set(weyl.descents(A3, rep)) <= {i}
        assert weyl.act(A3, rep, omega).same_weight(weyl.act(A3, w, omega), A3)


def test__root_pairing():
    rho = WeightVector.rho(A3)
    # (beta, rho) is the height of beta.
    for beta in weyl.positive_roots(A3):
        assert weyl.root_pairing(beta, rho, A3) == sum(beta)
