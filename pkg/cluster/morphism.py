"""Cluster morphisms between Laurent rings of seeds.

A morphism is stored as a vertex map plus a kill set; the ring map sends a
killed variable to 1 and any other variable to the target variable at its
image vertex. Morphisms act on the initial seeds of both sides, whose
variables are the ambient generators.

Directions of the elementary morphisms follow their role in the
factorisation phi = Emb_H . Frz_E . Sim_sigma . Del_F:

* freezing Frz_F: the seed with F frozen -> the same seed with F mutable;
* similarity Sim_sigma: a seed -> its relabelling along sigma;
* deleting Del_F: a seed -> its full subseed on I minus F, killing F;
* embedding Emb_H: the full subseed on I minus H -> the seed, when H is
  decoupled from the rest.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import laurent
from . import quiver as quiver_mod
from . import seed as seed_mod
from .errors import (
    AmbientMismatch,
    ConsistencyError,
    HypothesisViolated,
    InvalidMorphism,
    KilledVertexInSequence,
    NotAComponent,
    UnknownVertex,
)
from .laurent import LaurentPolynomial
from .quiver import ExchangeQuiver, Vertex
from .seed import Seed, initial_seed, mutate_sequence
from .validation import Report

SOURCE_PREFIX = "x"
TARGET_PREFIX = "y"

KINDS = ("freezing", "similarity", "deleting", "embedding")


@dataclass(frozen=True, eq=False)
class ClusterMorphism:
    source: Seed
    target: Seed
    vertex_map: Dict[Vertex, Vertex]
    kill_set: FrozenSet[Vertex] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))
        object.__setattr__(self, "kill_set", frozenset(self.kill_set))

    def image(self, i: Vertex) -> Optional[Vertex]:
        return self.vertex_map.get(i)

    @property
    def image_set(self) -> FrozenSet[Vertex]:
        return frozenset(self.vertex_map.values())

    def same_as(self, other: "ClusterMorphism") -> bool:
        return (
            self.vertex_map == other.vertex_map
            and self.kill_set == other.kill_set
            and self.source.quiver.same_as(other.source.quiver)
            and self.target.quiver.same_as(other.target.quiver)
        )

    def __str__(self) -> str:
        arrows = ", ".join(
            f"{i}->{self.vertex_map[i]}" if i in self.vertex_map else f"{i}->1" for i in self.source.vertices
        )
        return f"ClusterMorphism({arrows})"


def identity(s: Seed) -> ClusterMorphism:
    return ClusterMorphism(s, s, {v: v for v in s.vertices})


# -- validation ---------------------------------------------------------------


def validate_morphism(phi: ClusterMorphism) -> Report:
    """Definition conditions (1), (2a), (3), injectivity and the matrix-transport consequences."""
    report = Report()
    source, target = phi.source.quiver, phi.target.quiver
    source_vertices, target_vertices = set(source.vertices), set(target.vertices)
    for i in sorted(set(phi.vertex_map) | phi.kill_set):
        if i not in source_vertices:
            report.add("condition-1", (i,), f"vertex {i} is not a source vertex")
    for i in source.vertices:
        mapped = i in phi.vertex_map
        killed = i in phi.kill_set
        if mapped == killed:
            report.add("condition-1", (i,), f"vertex {i} must be either killed or mapped, not {'both' if mapped else 'neither'}")
        elif mapped and phi.vertex_map[i] not in target_vertices:
            report.add("condition-1", (i, phi.vertex_map[i]), f"image {phi.vertex_map[i]} is not a target vertex")
    if not report.ok:
        return report

    surviving_mutable = [i for i in source.mutable_order if i not in phi.kill_set]
    for i in surviving_mutable:
        if phi.vertex_map[i] not in target.mutable:
            report.add("condition-2a", (i, phi.vertex_map[i]), f"mutable {i} maps to frozen {phi.vertex_map[i]}")
    for a, i in enumerate(surviving_mutable):
        for j in surviving_mutable[a + 1:]:
            before, after = source.b(i, j), target.entry(phi.vertex_map[i], phi.vertex_map[j])
            if before * after < 0:
                report.add("condition-3", (i, j), f"b[{i},{j}] = {before} but b'[{phi.vertex_map[i]},{phi.vertex_map[j]}] = {after}")

    seen: Dict[Vertex, Vertex] = {}
    for i, j in sorted(phi.vertex_map.items()):
        if j in seen:
            report.add("injectivity", (seen[j], i), f"both {seen[j]} and {i} map to {j}")
        seen[j] = i

    outside = [j for j in target.vertices if j not in phi.image_set]
    for i in surviving_mutable:
        for j in outside:
            value = target.entry(j, phi.vertex_map[i])
            if value:
                report.add("image-decoupled", (i, j), f"b'[{j},{phi.vertex_map[i]}] = {value} couples the image to {j}")
    survivors = [i for i in source.vertices if i not in phi.kill_set]
    for i in survivors:
        for j in surviving_mutable:
            before, after = source.b(i, j), target.entry(phi.vertex_map[i], phi.vertex_map[j])
            if before != after:
                report.add("matrix-transport", (i, j), f"b[{i},{j}] = {before} but b'[{phi.vertex_map[i]},{phi.vertex_map[j]}] = {after}")
    return report


def require_valid(phi: ClusterMorphism) -> ClusterMorphism:
    report = validate_morphism(phi)
    if not report.ok:
        raise InvalidMorphism(f"Not a cluster morphism: {report.first}")
    return phi


# -- the ring map -------------------------------------------------------------


def apply(phi: ClusterMorphism, f: LaurentPolynomial) -> LaurentPolynomial:
    """x_i -> 1 for killed i, x_i -> y_phi(i) otherwise."""
    if f.ambient != phi.source.ambient:
        raise AmbientMismatch(f.ambient, phi.source.ambient)
    source_names = phi.source.generator_names()
    target_names = phi.target.generator_names()
    specialized = laurent.specialize(f, {source_names[i]: 1 for i in phi.kill_set})
    mapping = {source_names[i]: target_names[j] for i, j in phi.vertex_map.items()}
    return laurent.rename(specialized, mapping, phi.target.ambient)


def kernel_contains(phi: ClusterMorphism, f: LaurentPolynomial) -> bool:
    """Whether apply(phi, f) = 0, checked against the specialization criterion."""
    by_map = apply(phi, f).is_zero
    source_names = phi.source.generator_names()
    by_specialization = laurent.specialize(f, {source_names[i]: 1 for i in phi.kill_set}).is_zero
    if by_map != by_specialization:
        raise ConsistencyError(f"Kernel criteria disagree on {f}: map says {by_map}, specialization says {by_specialization}")
    return by_map


def image_component(phi: ClusterMorphism) -> FrozenSet[Vertex]:
    image = phi.image_set
    target = phi.target.quiver
    for j in image & target.mutable:
        for h in target.vertices:
            if h not in image and target.entry(h, j):
                raise NotAComponent(f"Image vertex {j} is coupled to {h} outside the image")
    for component in target.connected_components():
        if component & image and not component <= image:
            raise NotAComponent(f"Image {sorted(image)} cuts the connected component {sorted(component)}")
    return image


def commutes_with_mutation(phi: ClusterMorphism, seq: Sequence[Vertex], s: Optional[Seed] = None) -> bool:
    """Compare phi(mu_seq(x)) with mu_phi(seq)(phi(x)) at every surviving vertex."""
    killed = [k for k in seq if k in phi.kill_set]
    if killed:
        raise KilledVertexInSequence(f"Vertices {killed} of the sequence are killed by the morphism")
    s = s if s is not None else phi.source
    for k in seq:
        if k not in phi.vertex_map:
            raise UnknownVertex(f"Vertex {k} is not a source vertex")
    left = mutate_sequence(s, seq)
    right = mutate_sequence(phi.target, [phi.vertex_map[k] for k in seq])
    return all(apply(phi, left.variables[i]) == right.variables[j] for i, j in phi.vertex_map.items())


# -- construction -------------------------------------------------------------


def compose(outer: ClusterMorphism, inner: ClusterMorphism) -> ClusterMorphism:
    """outer . inner; the middle seeds must carry the same quiver."""
    if not inner.target.quiver.same_as(outer.source.quiver):
        raise InvalidMorphism(f"Cannot compose: {inner.target.quiver} is not {outer.source.quiver}")
    vertex_map = {}
    kill_set = set(inner.kill_set)
    for i, j in inner.vertex_map.items():
        if j in outer.kill_set:
            kill_set.add(i)
        else:
            vertex_map[i] = outer.vertex_map[j]
    return require_valid(ClusterMorphism(inner.source, outer.target, vertex_map, frozenset(kill_set)))


def subseed(s: Seed, vertices: Iterable[Vertex], prefix: str) -> Seed:
    return initial_seed(quiver_mod.full_subquiver(s.quiver, vertices), prefix)


def freezing(frozen: Iterable[Vertex], target: Seed) -> ClusterMorphism:
    frozen = frozenset(frozen)
    if not frozen <= target.mutable:
        raise HypothesisViolated(f"Freezing set {sorted(frozen)} is not inside the mutable set {sorted(target.mutable)}")
    source = initial_seed(quiver_mod.freeze(target.quiver, frozen), SOURCE_PREFIX)
    return ClusterMorphism(source, target, {v: v for v in target.vertices})


def _similarity(sigma: Mapping[Vertex, Vertex], source: Seed) -> ClusterMorphism:
    target = initial_seed(quiver_mod.relabel(source.quiver, sigma), TARGET_PREFIX)
    return ClusterMorphism(source, target, dict(sigma))


def similarity(sigma: Mapping[Vertex, Vertex], source: Seed) -> ClusterMorphism:
    sigma = dict(sigma)
    if set(sigma) != set(source.vertices):
        raise HypothesisViolated(f"{sigma} is not defined on every vertex of {list(source.vertices)}")
    if set(sigma.values()) == set(source.vertices):
        moved = {sigma[v] for v in source.mutable}
        if moved != set(source.mutable):
            pair = next((v, sigma[v]) for v in sorted(source.mutable) if sigma[v] not in source.mutable)
            raise HypothesisViolated(f"Permutation sends mutable {pair[0]} to frozen {pair[1]}", pair)
    return _similarity(sigma, source)


def deleting(killed: Iterable[Vertex], source: Seed) -> ClusterMorphism:
    killed = frozenset(killed)
    unknown = killed - set(source.vertices)
    if unknown:
        raise UnknownVertex(f"Vertices {sorted(unknown)} are not in the seed")
    kept = [v for v in source.vertices if v not in killed]
    target = subseed(source, kept, TARGET_PREFIX)
    return ClusterMorphism(source, target, {v: v for v in kept}, killed)


def embedding(hidden: Iterable[Vertex], target: Seed) -> ClusterMorphism:
    hidden = frozenset(hidden)
    unknown = hidden - set(target.vertices)
    if unknown:
        raise UnknownVertex(f"Vertices {sorted(unknown)} are not in the seed")
    kept = [v for v in target.vertices if v not in hidden]
    for v in kept:
        for h in sorted(hidden):
            if target.quiver.entry(v, h):
                raise HypothesisViolated(f"b[{v},{h}] = {target.quiver.entry(v, h)} couples {h} to the rest", (v, h))
    source = subseed(target, kept, SOURCE_PREFIX)
    return ClusterMorphism(source, target, {v: v for v in kept})


def make_elementary(kind: str, data, s: Seed) -> ClusterMorphism:
    """One of the four elementary morphisms.

    ``s`` is the target seed for freezing and embedding, and the source seed
    for similarity and deleting. ``data`` is the vertex subset, or the
    permutation for similarity.
    """
    if kind == "freezing":
        return freezing(data, s)
    if kind == "similarity":
        return similarity(data, s)
    if kind == "deleting":
        return deleting(data, s)
    if kind == "embedding":
        return embedding(data, s)
    raise ValueError(f"Unknown elementary kind {kind!r}; expected one of {KINDS}")


# -- decomposition ------------------------------------------------------------


@dataclass
class Decomposition:
    kill_set: FrozenSet[Vertex]
    sigma: Dict[Vertex, Vertex]
    unfrozen: FrozenSet[Vertex]
    hidden: FrozenSet[Vertex]
    source: Seed = field(repr=False)
    target: Seed = field(repr=False)

    @property
    def is_bijective_form(self) -> bool:
        return not self.kill_set and not self.hidden

    def to_json(self) -> dict:
        return {
            "F": sorted(self.kill_set),
            "sigma": {str(i): j for i, j in sorted(self.sigma.items())},
            "E": sorted(self.unfrozen),
            "H": sorted(self.hidden),
        }


def recompose(d: Decomposition) -> Tuple[ClusterMorphism, List[ClusterMorphism]]:
    """Emb_H . Frz_E . Sim_sigma . Del_F and its four factors in application order."""
    image = frozenset(d.sigma.values())
    delete = deleting(d.kill_set, d.source)
    relabel = _similarity(d.sigma, delete.target)
    middle = subseed(d.target, [v for v in d.target.vertices if v in image], SOURCE_PREFIX)
    unfreeze = freezing(d.unfrozen & image, middle)
    embed = embedding(d.hidden, d.target)
    factors = [delete, relabel, unfreeze, embed]
    result = factors[0]
    for factor in factors[1:]:
        result = compose(factor, result)
    return result, factors


def decompose(phi: ClusterMorphism) -> Decomposition:
    report = validate_morphism(phi)
    if not report.ok:
        raise InvalidMorphism(f"Cannot decompose: {report.first}")
    surviving_mutable = {phi.vertex_map[i] for i in phi.source.mutable if i not in phi.kill_set}
    d = Decomposition(
        kill_set=phi.kill_set,
        sigma=dict(phi.vertex_map),
        unfrozen=frozenset(phi.target.mutable - surviving_mutable),
        hidden=frozenset(v for v in phi.target.vertices if v not in phi.image_set),
        source=phi.source,
        target=phi.target,
    )
    try:
        rebuilt, _ = recompose(d)
    except (HypothesisViolated, InvalidMorphism) as e:
        raise InvalidMorphism(f"{phi} does not factor through elementary morphisms") from e
    for v in phi.source.vertices:
        generator = phi.source.variables[v]
        if apply(rebuilt, generator) != apply(phi, generator):
            raise ConsistencyError(f"Recomposition differs from {phi} at vertex {v}")
    return d


# -- random morphisms ---------------------------------------------------------


def _random_extension(rng: random.Random, q: ExchangeQuiver, extra: int, max_entry: int) -> ExchangeQuiver:
    """q plus ``extra`` new vertices, coupled at random; entries inside q are unchanged."""
    start = max(q.vertices, default=0) + 1
    new = list(range(start, start + extra))
    new_mutable = {v for v in new if rng.random() < 0.5}
    mutable = set(q.mutable) | new_mutable
    b = dict(q.entries)
    for v in new:
        for u in list(q.vertices) + [w for w in new if w < v]:
            if u not in mutable and v not in mutable:
                continue
            if rng.random() < 0.5:
                continue
            value = rng.choice([x for x in range(-max_entry, max_entry + 1) if x])
            if v in mutable:
                b[(u, v)] = value
            if u in mutable:
                b[(v, u)] = -value
    return ExchangeQuiver.from_matrix(tuple(q.vertices) + tuple(new), mutable, b)


def random_morphism(rng: random.Random, max_vertices: int = 8, max_entry: int = 3) -> ClusterMorphism:
    """A valid morphism built backwards from its target through random elementary factors."""
    budget = rng.randint(2, max_vertices)
    killed_count = rng.randint(0, min(2, budget - 1))
    target_size = budget - killed_count
    first_size = rng.randint(1, target_size)
    first = quiver_mod.random_quiver(rng, first_size, max_entry)
    target_quiver = first
    hidden: List[Vertex] = []
    if target_size > first_size:
        second = quiver_mod.random_quiver(rng, target_size - first_size, max_entry)
        second = quiver_mod.relabel(second, {v: v + first_size for v in second.vertices})
        target_quiver = quiver_mod.disjoint_union(first, second)
        if rng.random() < 0.5:
            hidden = list(second.vertices)
    target = initial_seed(target_quiver, TARGET_PREFIX)

    embed = embedding(hidden, target)
    unfrozen = [v for v in embed.source.quiver.mutable_order if rng.random() < 0.3]
    unfreeze = freezing(unfrozen, embed.source)
    middle = unfreeze.source
    shuffled = list(middle.vertices)
    rng.shuffle(shuffled)
    sigma = dict(zip(middle.vertices, shuffled))
    inverse = {j: i for i, j in sigma.items()}
    relabel_source = initial_seed(quiver_mod.relabel(middle.quiver, inverse), SOURCE_PREFIX)
    relabel = _similarity(sigma, relabel_source)
    full_source = initial_seed(_random_extension(rng, relabel_source.quiver, killed_count, max_entry), SOURCE_PREFIX)
    killed = [v for v in full_source.vertices if v not in relabel_source.quiver.vertices]
    delete = deleting(killed, full_source)

    phi = delete
    for factor in (relabel, unfreeze, embed):
        phi = compose(factor, phi)
    return phi


# -- serialization ------------------------------------------------------------


def to_json(phi: ClusterMorphism, source_ref: Optional[str] = None, target_ref: Optional[str] = None) -> dict:
    """Seeds are inlined unless a file reference is given."""
    mapping = {str(i): phi.vertex_map.get(i) for i in phi.source.vertices}
    return {
        "source_ref": source_ref if source_ref is not None else seed_mod.to_json(phi.source),
        "target_ref": target_ref if target_ref is not None else seed_mod.to_json(phi.target),
        "map": mapping,
    }


def _resolve_seed(ref: Union[str, Mapping], base_dir: Optional[Path]) -> Seed:
    if isinstance(ref, Mapping):
        return seed_mod.from_json(ref)
    path = Path(ref)
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    with path.open() as fh:
        return seed_mod.from_json(json.load(fh))


def from_json(data: Mapping, base_dir: Optional[Path] = None) -> ClusterMorphism:
    source = _resolve_seed(data["source_ref"], base_dir)
    target = _resolve_seed(data["target_ref"], base_dir)
    vertex_map = {}
    kill_set = set()
    for i, j in data["map"].items():
        if j is None:
            kill_set.add(int(i))
        else:
            vertex_map[int(i)] = int(j)
    return ClusterMorphism(source, target, vertex_map, frozenset(kill_set))
