"""Exchange quivers: vertex set with a frozen/mutable split and the I x I_uf matrix B.

The matrix is the source of truth. Arrows are derived from it: ``b[i, j] > 0``
means ``b[i, j]`` arrows i -> j. Multiple arrows are just ``|b| > 1``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ClusterError, ConsistencyError, FrozenVertex, UnknownVertex
from .validation import Report

Vertex = int
Pair = Tuple[Vertex, Vertex]


@dataclass(frozen=True)
class ExchangeQuiver:
    vertices: Tuple[Vertex, ...]
    mutable: FrozenSet[Vertex]
    # Nonzero entries b[i, j], sorted by (i, j).
    entries: Tuple[Tuple[Pair, int], ...] = ()

    @classmethod
    def from_matrix(cls, vertices: Iterable[Vertex], mutable: Iterable[Vertex],
                    b: Mapping[Pair, int]) -> "ExchangeQuiver":
        vertices = tuple(vertices)
        known = set(vertices)
        if len(known) != len(vertices):
            raise ClusterError(f"Duplicate vertices in {list(vertices)}")
        mutable = frozenset(mutable)
        if not mutable <= known:
            raise UnknownVertex(f"Mutable vertices {sorted(mutable - known)} are not in {list(vertices)}")
        for (i, j) in b:
            if i not in known or j not in known:
                raise UnknownVertex(f"Entry ({i}, {j}) refers to a vertex outside {list(vertices)}")
        entries = tuple(sorted(((i, j), int(v)) for (i, j), v in b.items() if v))
        return cls(vertices, mutable, entries)

    @classmethod
    def from_rows(cls, vertices: Sequence[Vertex], mutable: Iterable[Vertex],
                  rows: Sequence[Sequence[int]]) -> "ExchangeQuiver":
        """Build from a row-major matrix: rows follow ``vertices``, columns the mutable ones in vertex order."""
        mutable = frozenset(mutable)
        columns = [v for v in vertices if v in mutable]
        if len(rows) != len(vertices) or any(len(row) != len(columns) for row in rows):
            raise ClusterError(f"Matrix shape must be {len(vertices)} x {len(columns)}")
        b = {(i, j): rows[r][c] for r, i in enumerate(vertices) for c, j in enumerate(columns)}
        return cls.from_matrix(vertices, mutable, b)

    @classmethod
    def from_arrows(cls, vertices: Iterable[Vertex], mutable: Iterable[Vertex],
                    arrows: Iterable[Tuple[Vertex, ...]]) -> "ExchangeQuiver":
        """Build from arrows ``(i, j)`` or ``(i, j, multiplicity)``."""
        vertices = tuple(vertices)
        mutable = frozenset(mutable)
        b: Dict[Pair, int] = {}
        for arrow in arrows:
            i, j = arrow[0], arrow[1]
            count = arrow[2] if len(arrow) > 2 else 1
            if j in mutable:
                b[(i, j)] = b.get((i, j), 0) + count
            if i in mutable:
                b[(j, i)] = b.get((j, i), 0) - count
        return cls.from_matrix(vertices, mutable, b)

    @cached_property
    def _b(self) -> Dict[Pair, int]:
        return dict(self.entries)

    @property
    def frozen(self) -> FrozenSet[Vertex]:
        return frozenset(self.vertices) - self.mutable

    @property
    def mutable_order(self) -> Tuple[Vertex, ...]:
        return tuple(v for v in self.vertices if v in self.mutable)

    def b(self, i: Vertex, j: Vertex) -> int:
        return self._b.get((i, j), 0)

    def entry(self, i: Vertex, j: Vertex) -> int:
        """b extended skew-symmetrically to I x I (zero between frozen vertices)."""
        if j in self.mutable:
            return self.b(i, j)
        if i in self.mutable:
            return -self.b(j, i)
        return 0

    def column(self, k: Vertex) -> Dict[Vertex, int]:
        return {i: v for (i, j), v in self.entries if j == k}

    def rows(self) -> List[List[int]]:
        columns = self.mutable_order
        return [[self.b(i, j) for j in columns] for i in self.vertices]

    def arrows(self) -> List[Tuple[Vertex, Vertex, int]]:
        """Arrows (i, j, multiplicity) derived from the skew extension of b."""
        out = []
        for a, i in enumerate(self.vertices):
            for j in self.vertices[a + 1:]:
                value = self.entry(i, j)
                if value > 0:
                    out.append((i, j, value))
                elif value < 0:
                    out.append((j, i, -value))
        return out

    def same_as(self, other: "ExchangeQuiver") -> bool:
        """Equality ignoring the order in which vertices are listed."""
        return (
            set(self.vertices) == set(other.vertices)
            and self.mutable == other.mutable
            and self.entries == other.entries
        )

    def neighbours(self, v: Vertex) -> List[Vertex]:
        return [u for u in self.vertices if u != v and self.entry(v, u)]

    def connected_components(self) -> List[FrozenSet[Vertex]]:
        seen = set()
        components = []
        for start in self.vertices:
            if start in seen:
                continue
            component = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in self.neighbours(v):
                    if u not in component:
                        component.add(u)
                        queue.append(u)
            seen |= component
            components.append(frozenset(component))
        return components

    def __str__(self) -> str:
        arrows = ", ".join(f"{i}->{j}" + (f" (x{m})" if m > 1 else "") for i, j, m in self.arrows())
        return f"ExchangeQuiver(vertices={list(self.vertices)}, mutable={sorted(self.mutable)}, arrows=[{arrows}])"


def validate_quiver(q: ExchangeQuiver) -> Report:
    """Check skew-symmetry of the principal part and that no column is frozen."""
    report = Report()
    for (i, j), value in q.entries:
        if j not in q.mutable:
            rule = "frozen-pair" if i not in q.mutable else "frozen-column"
            report.add(rule, (i, j), f"b[{i},{j}] = {value} but {j} is frozen")
    principal = q.mutable_order
    for a, i in enumerate(principal):
        if q.b(i, i):
            report.add("skew-symmetry", (i, i), f"b[{i},{i}] = {q.b(i, i)}")
        for j in principal[a + 1:]:
            if q.b(i, j) != -q.b(j, i):
                report.add("skew-symmetry", (i, j), f"b[{i},{j}] = {q.b(i, j)}, b[{j},{i}] = {q.b(j, i)}")
    return report


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _mutate_matrix(q: ExchangeQuiver, k: Vertex) -> Dict[Pair, int]:
    b = {}
    for i in q.vertices:
        for j in q.mutable_order:
            if k in (i, j):
                b[(i, j)] = -q.b(i, j)
            else:
                bik, bkj = q.b(i, k), q.b(k, j)
                b[(i, j)] = q.b(i, j) + _sign(bik) * max(0, bik * bkj)
    return {pair: v for pair, v in b.items() if v}


def _mutate_graph(q: ExchangeQuiver, k: Vertex) -> Dict[Pair, int]:
    count: Dict[Pair, int] = {}
    for i, j, m in q.arrows():
        count[(i, j)] = m
    # (1) paths i -> k -> j give arrows i -> j
    for i in q.vertices:
        for j in q.vertices:
            through = count.get((i, k), 0) * count.get((k, j), 0)
            if through and i != j:
                count[(i, j)] = count.get((i, j), 0) + through
    # (2) reverse arrows at k
    for i in q.vertices:
        if i != k:
            count[(i, k)], count[(k, i)] = count.get((k, i), 0), count.get((i, k), 0)
    # (3) cancel 2-cycles; read off the I x I_uf block
    b = {}
    for i in q.vertices:
        for j in q.mutable_order:
            if i != j:
                net = count.get((i, j), 0) - count.get((j, i), 0)
                if net:
                    b[(i, j)] = net
    return b


def mutate_quiver(q: ExchangeQuiver, k: Vertex) -> ExchangeQuiver:
    """Mutation at k, computed by the matrix rule and checked against the graph rule."""
    if k not in q.vertices:
        raise UnknownVertex(f"Vertex {k} is not in {list(q.vertices)}")
    if k not in q.mutable:
        raise FrozenVertex(k)
    report = validate_quiver(q)
    if not report.ok:
        raise ClusterError(f"Cannot mutate an invalid quiver: {report.first}")
    by_matrix = _mutate_matrix(q, k)
    by_graph = _mutate_graph(q, k)
    if by_matrix != by_graph:
        raise ConsistencyError(f"Graph and matrix mutation disagree at {k}: {by_graph} vs {by_matrix}")
    return ExchangeQuiver.from_matrix(q.vertices, q.mutable, by_matrix)


def full_subquiver(q: ExchangeQuiver, subset: Iterable[Vertex]) -> ExchangeQuiver:
    subset = set(subset)
    unknown = subset - set(q.vertices)
    if unknown:
        raise UnknownVertex(f"Vertices {sorted(unknown)} are not in {list(q.vertices)}")
    vertices = tuple(v for v in q.vertices if v in subset)
    b = {(i, j): v for (i, j), v in q.entries if i in subset and j in subset}
    return ExchangeQuiver.from_matrix(vertices, q.mutable & subset, b)


def freeze(q: ExchangeQuiver, subset: Iterable[Vertex]) -> ExchangeQuiver:
    """The same quiver with ``subset`` made frozen (their columns dropped)."""
    subset = frozenset(subset)
    if not subset <= q.mutable:
        raise FrozenVertex(sorted(subset - q.mutable)[0])
    b = {(i, j): v for (i, j), v in q.entries if j not in subset}
    return ExchangeQuiver.from_matrix(q.vertices, q.mutable - subset, b)


def relabel(q: ExchangeQuiver, sigma: Mapping[Vertex, Vertex]) -> ExchangeQuiver:
    """Transport along a bijection onto new vertex names: b'[s(i), s(j)] = b[i, j]."""
    if set(sigma) != set(q.vertices) or len(set(sigma.values())) != len(q.vertices):
        raise ClusterError(f"{dict(sigma)} is not a bijection on {list(q.vertices)}")
    b = {(sigma[i], sigma[j]): v for (i, j), v in q.entries}
    vertices = sorted(sigma[v] for v in q.vertices)
    return ExchangeQuiver.from_matrix(vertices, {sigma[v] for v in q.mutable}, b)


def permute(q: ExchangeQuiver, sigma: Mapping[Vertex, Vertex]) -> ExchangeQuiver:
    """Transport along a permutation of the vertex set."""
    if set(sigma) != set(q.vertices) or set(sigma.values()) != set(q.vertices):
        raise ClusterError(f"{dict(sigma)} is not a permutation of {list(q.vertices)}")
    b = {(sigma[i], sigma[j]): v for (i, j), v in q.entries}
    return ExchangeQuiver.from_matrix(q.vertices, {sigma[v] for v in q.mutable}, b)


def disjoint_union(first: ExchangeQuiver, second: ExchangeQuiver) -> ExchangeQuiver:
    overlap = set(first.vertices) & set(second.vertices)
    if overlap:
        raise ClusterError(f"Quivers share vertices {sorted(overlap)}")
    return ExchangeQuiver.from_matrix(
        first.vertices + second.vertices,
        first.mutable | second.mutable,
        dict(first.entries + second.entries),
    )


def random_quiver(rng: random.Random, n: int, max_entry: int = 3,
                  frozen: Optional[int] = None, density: float = 0.5) -> ExchangeQuiver:
    """A random valid quiver on vertices 1..n with ``frozen`` frozen vertices."""
    vertices = tuple(range(1, n + 1))
    if frozen is None:
        frozen = rng.randint(0, n // 2)
    frozen_set = set(rng.sample(vertices, frozen))
    mutable = [v for v in vertices if v not in frozen_set]
    b: Dict[Pair, int] = {}
    for a, i in enumerate(vertices):
        for j in vertices[a + 1:]:
            if i in frozen_set and j in frozen_set:
                continue
            if rng.random() >= density:
                continue
            value = rng.choice([x for x in range(-max_entry, max_entry + 1) if x])
            if j in mutable:
                b[(i, j)] = value
            if i in mutable:
                b[(j, i)] = -value
    return ExchangeQuiver.from_matrix(vertices, mutable, b)


def to_json(q: ExchangeQuiver) -> dict:
    return {"vertices": list(q.vertices), "mutable": list(q.mutable_order), "b": q.rows()}


def from_json(data: Mapping) -> ExchangeQuiver:
    vertices = [int(v) for v in data["vertices"]]
    return ExchangeQuiver.from_rows(vertices, [int(v) for v in data["mutable"]], data["b"])


def to_dot(q: ExchangeQuiver, labels: Optional[Mapping[Vertex, str]] = None, name: str = "Q") -> str:
    lines = [f"digraph {name} {{"]
    for v in q.vertices:
        shape = "circle" if v in q.mutable else "box"
        label = labels.get(v, str(v)) if labels else str(v)
        label = label.replace('"', '\\"')
        lines.append(f'  {v} [shape={shape}, label="{label}"];')
    for i, j, m in q.arrows():
        lines.append(f'  {i} -> {j} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
