import random

import pytest

from cluster import quiver
from cluster.errors import ClusterError, FrozenVertex, UnknownVertex
from cluster.quiver import ExchangeQuiver


def _a3_linear() -> ExchangeQuiver:
    # 1 -> 2 -> 3, all mutable.
    return ExchangeQuiver.from_arrows((1, 2, 3), (1, 2, 3), [(1, 2), (2, 3)])


def test__from_arrows__matches_matrix():
    q = _a3_linear()
    assert q.b(1, 2) == 1
    assert q.b(2, 1) == -1
    assert q.b(1, 3) == 0
    assert q.rows() == [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]
    assert q.arrows() == [(1, 2, 1), (2, 3, 1)]


def test__from_rows__shape_checked():
    with pytest.raises(ClusterError):
        ExchangeQuiver.from_rows((1, 2), (1,), [[0, 1], [1, 0]])


def test__from_matrix__unknown_vertex():
    with pytest.raises(UnknownVertex):
        ExchangeQuiver.from_matrix((1, 2), (1,), {(3, 1): 1})


def test__entry__skew_extension_to_frozen_rows():
    q = ExchangeQuiver.from_matrix((1, 2), (1,), {(2, 1): 2})
    assert q.entry(2, 1) == 2
    assert q.entry(1, 2) == -2
    assert q.frozen == frozenset({2})
    assert q.arrows() == [(2, 1, 2)]


def test__validate_quiver__reports_skew_symmetry():
    q = ExchangeQuiver.from_matrix((1, 2), (1, 2), {(1, 2): 1, (2, 1): 1})
    report = quiver.validate_quiver(q)
    assert not report.ok
    assert report.first.rule == "skew-symmetry"
    assert report.first.pair == (1, 2)


def test__validate_quiver__accepts_valid():
    assert quiver.validate_quiver(_a3_linear()).ok


def test__mutate_quiver__a3():
    mutated = quiver.mutate_quiver(_a3_linear(), 2)
    # Arrows at 2 reverse and the path 1 -> 2 -> 3 adds 1 -> 3.
    assert sorted(mutated.arrows()) == [(1, 3, 1), (2, 1, 1), (3, 2, 1)]


def test__mutate_quiver__cancels_two_cycles():
    q = ExchangeQuiver.from_arrows((1, 2, 3), (1, 2, 3), [(1, 2), (2, 3), (3, 1)])
    mutated = quiver.mutate_quiver(q, 2)
    assert mutated.entry(1, 3) == 0
    assert sorted(mutated.arrows()) == [(2, 1, 1), (3, 2, 1)]


def test__mutate_quiver__frozen_vertex():
    q = ExchangeQuiver.from_matrix((1, 2), (1,), {(2, 1): 1})
    with pytest.raises(FrozenVertex):
        quiver.mutate_quiver(q, 2)
    with pytest.raises(UnknownVertex):
        quiver.mutate_quiver(q, 5)


def test__mutate_quiver__involution_on_random_quivers():
    rng = random.Random(0)
    for _ in range(1000):
        q = quiver.random_quiver(rng, rng.randint(1, 8))
        for k in q.mutable_order:
            assert quiver.mutate_quiver(quiver.mutate_quiver(q, k), k) == q


def test__random_quiver__is_valid():
    rng = random.Random(1)
    for _ in range(100):
        q = quiver.random_quiver(rng, rng.randint(1, 8))
        assert quiver.validate_quiver(q).ok


def test__full_subquiver_and_freeze():
    q = _a3_linear()
    sub = quiver.full_subquiver(q, [2, 3])
    assert sub.vertices == (2, 3)
    assert sub.arrows() == [(2, 3, 1)]
    frozen = quiver.freeze(q, [3])
    assert frozen.mutable == frozenset({1, 2})
    assert frozen.entry(2, 3) == 1
    with pytest.raises(FrozenVertex):
        quiver.freeze(frozen, [3])


def test__relabel_and_permute():
    q = _a3_linear()
    relabelled = quiver.relabel(q, {1: 30, 2: 10, 3: 20})
    assert relabelled.vertices == (10, 20, 30)
    assert relabelled.b(30, 10) == 1
    permuted = quiver.permute(q, {1: 3, 2: 2, 3: 1})
    assert permuted.vertices == q.vertices
    assert sorted(permuted.arrows()) == [(2, 1, 1), (3, 2, 1)]
    with pytest.raises(ClusterError):
        quiver.permute(q, {1: 4, 2: 2, 3: 1})


def test__same_as__ignores_vertex_order():
    q = _a3_linear()
    reordered = ExchangeQuiver.from_matrix((3, 1, 2), q.mutable, dict(q.entries))
    assert reordered != q
    assert reordered.same_as(q)


def test__connected_components_of_disjoint_union():
    first = _a3_linear()
    second = quiver.relabel(first, {1: 4, 2: 5, 3: 6})
    union = quiver.disjoint_union(first, second)
    assert sorted(sorted(c) for c in union.connected_components()) == [[1, 2, 3], [4, 5, 6]]
    with pytest.raises(ClusterError):
        quiver.disjoint_union(first, first)


def test__json_and_dot():
    q = ExchangeQuiver.from_matrix((1, 2), (1,), {(2, 1): 1})
    assert quiver.to_json(q) == {"vertices": [1, 2], "mutable": [1], "b": [[0], [1]]}
    assert quiver.from_json(quiver.to_json(q)) == q
    dot = quiver.to_dot(q, {1: 'D("a")'})
    assert '1 [shape=circle, label="D(\\"a\\")"];' in dot
    assert "2 [shape=box" in dot
    assert '2 -> 1 [label="1"];' in dot
