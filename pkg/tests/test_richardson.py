import itertools
import random

import pytest

from cluster import morphism, quiver, richardson, seed, weyl
from cluster.errors import KilledVertexInSequence, NotReduced, PrefixOutOfRange
from cluster.laurent import LaurentPolynomial, Monomial

A2 = weyl.type_a(2)
A3 = weyl.type_a(3)
W0_A3 = (1, 2, 1, 3, 2, 1)


def test__exchange_matrix__a2():
    q = richardson.exchange_matrix(A2, (1, 2, 1))
    assert q.vertices == (1, 2, 3)
    assert q.mutable == frozenset({1})
    assert q.column(1) == {2: -1, 3: 1}


def test__exchange_matrix__a3_longest_word():
    q = richardson.exchange_matrix(A3, W0_A3)
    assert q.frozen == frozenset({4, 5, 6})
    assert q.column(1) == {2: -1, 3: 1}
    assert q.column(2) == {1: 1, 3: -1, 4: -1, 5: 1}
    assert q.column(3) == {1: -1, 2: 1, 5: -1, 6: 1}
    assert quiver.validate_quiver(q).ok


def test__exchange_matrix__every_a3_word_gives_valid_quiver():
    for word in weyl.enumerate_elements(A3, 6):
        q = richardson.exchange_matrix(A3, word)
        assert quiver.validate_quiver(q).ok
        assert q.frozen == weyl.frozen_set(A3, word)


def test__exchange_matrix__rejects_non_reduced():
    with pytest.raises(NotReduced):
        richardson.exchange_matrix(A2, (1, 1))


def test__build_nw_seed__labels_and_metadata():
    s = richardson.build_nw_seed(A2, (1, 2, 1))
    assert s.ambient == ("x1", "x2", "x3")
    assert s.labels == {1: "D(1,0)", 2: "D(2,0)", 3: "D(3,0)"}
    assert s.cartan == "A2"
    assert s.word == (1, 2, 1)


def test__build_richardson_seed__a2_prefix_one():
    s = richardson.build_richardson_seed(A2, (1, 2, 1), 1)
    assert s.vertices == (2, 3)
    assert not s.mutable
    assert s.ambient == ("y2", "y3")
    assert s.labels == {2: "D(s1s2·ϖ2, s1·ϖ2)", 3: "D(s1s2s1·ϖ1, s1·ϖ1)"}


def test__build_richardson_seed__prefix_zero_is_nw_seed():
    nw = richardson.build_nw_seed(A3, W0_A3)
    rich = richardson.build_richardson_seed(A3, W0_A3, 0)
    assert rich.quiver == nw.quiver


def test__richardson_spec__prefix_range():
    with pytest.raises(PrefixOutOfRange):
        richardson.richardson_spec(A2, (1, 2, 1), 4)
    with pytest.raises(PrefixOutOfRange):
        richardson.richardson_spec(A2, (1, 2, 1), -1)
    assert richardson.richardson_spec(A2, (1, 2, 1), 3).surviving == ()


@pytest.mark.parametrize("p", range(0, 7))
def test__richardson_morphism__valid_for_every_prefix(p):
    phi = richardson.richardson_morphism(A3, W0_A3, p)
    assert morphism.validate_morphism(phi).ok
    assert phi.kill_set == frozenset(range(1, p + 1))
    assert phi.vertex_map == {l: l for l in range(p + 1, 7)}


def test__richardson_morphism__commutes_with_surviving_mutation():
    phi = richardson.richardson_morphism(A3, W0_A3, 2)
    assert morphism.commutes_with_mutation(phi, [3])
    with pytest.raises(KilledVertexInSequence):
        morphism.commutes_with_mutation(phi, [1])


def test__killed_and_surviving_roots():
    assert richardson.killed_roots(A2, (1, 2, 1), 1) == [(1, 0)]
    assert richardson.surviving_roots(A2, (1, 2, 1), 1) == [(1, 1), (0, 1)]


def test__root_label():
    assert str(richardson.root_label(A2, (1, 2, 1), 3)) == "D(s1s2s1·ϖ1, s1·ϖ1)"
    assert str(richardson.root_label(A2, (1, 2, 1), 1)) == "D(s1·ϖ1, ϖ1)"
    with pytest.raises(PrefixOutOfRange):
        richardson.root_label(A2, (1, 2, 1), 4)


def test__format_word():
    assert richardson.format_word((1, 2, 1)) == "s1s2s1"
    assert richardson.format_word(()) == ""


def test__killed_roots__are_the_roots_of_the_prefix():
    for p in range(len(W0_A3) + 1):
        assert richardson.killed_roots(A3, W0_A3, p) == weyl.beta_roots(A3, W0_A3[:p])
        assert richardson.killed_roots(A3, W0_A3, p) + richardson.surviving_roots(A3, W0_A3, p) == weyl.beta_roots(A3, W0_A3)


def _random_laurent(rng: random.Random, ambient, names, terms: int = 4) -> LaurentPolynomial:
    out = {}
    for _ in range(terms):
        monomial = Monomial.from_mapping({name: rng.randint(-2, 2) for name in names})
        out[monomial] = rng.choice([-3, -2, -1, 1, 2, 3])
    return LaurentPolynomial(ambient, out)


def test__richardson_morphism__kernel_is_generated_by_killed_variables():
    phi = richardson.richardson_morphism(A2, (1, 2, 1), 1)
    ambient = phi.source.ambient
    x1 = LaurentPolynomial.generator(ambient, "x1")
    rng = random.Random(5)
    for _ in range(50):
        inside = (x1 - 1) * _random_laurent(rng, ambient, ambient)
        assert morphism.kernel_contains(phi, inside)
    for _ in range(50):
        survivor = _random_laurent(rng, ambient, ("x2", "x3"))
        if survivor.is_zero:
            survivor = survivor + 1
        outside = survivor + (x1 - 1) * _random_laurent(rng, ambient, ambient)
        assert not morphism.kernel_contains(phi, outside)


@pytest.mark.parametrize("p", [0, 1])
def test__richardson_morphism__commutes_with_short_sequences(p):
    phi = richardson.richardson_morphism(A3, W0_A3, p)
    surviving = [k for k in phi.source.quiver.mutable_order if k not in phi.kill_set]
    for length in (1, 2, 3):
        for sequence in itertools.product(surviving, repeat=length):
            assert morphism.commutes_with_mutation(phi, list(sequence)), sequence


def test__nw_seeds__mutation_stays_laurent():
    rng = random.Random(8)
    for cartan, word in ((A2, (1, 2, 1)), (A3, W0_A3), (A3, (2, 1, 3, 2))):
        s = richardson.build_nw_seed(cartan, word)
        for _ in range(70):
            sequence = [rng.choice(s.quiver.mutable_order) for _ in range(rng.randint(1, 6))]
            mutated = seed.mutate_sequence(s, sequence)
            assert not any(v.is_zero for v in mutated.variables.values())
            assert seed.mutate_sequence(mutated, list(reversed(sequence))).same_as(s)


def test__richardson_quiver__is_full_subquiver():
    for p in range(len(W0_A3) + 1):
        nw = richardson.build_nw_seed(A3, W0_A3)
        rich = richardson.build_richardson_seed(A3, W0_A3, p)
        assert rich.quiver == quiver.full_subquiver(nw.quiver, range(p + 1, 7))
