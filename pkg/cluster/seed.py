"""Seeds and the exchange-relation mutation.

Cluster variables are always written in the initial variables of the seed's
ambient ring; mutation divides exactly, so a failed division is a
Laurent-phenomenon violation and is never swallowed.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import tqdm

from . import laurent
from .errors import ClusterError, FrozenVertex, UnknownVertex
from .laurent import LaurentPolynomial, exact_divide
from .quiver import ExchangeQuiver, Vertex, mutate_quiver
from . import quiver as quiver_mod


@dataclass(frozen=True, eq=False)
class Seed:
    quiver: ExchangeQuiver
    variables: Dict[Vertex, LaurentPolynomial]
    labels: Dict[Vertex, str] = field(default_factory=dict)
    ambient: Tuple[str, ...] = ()
    # Allow negative powers of frozen variables in cluster monomials.
    frozen_invertible: bool = False
    cartan: Optional[str] = None
    word: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if set(self.variables) != set(self.quiver.vertices):
            raise ClusterError(
                f"Seed variables {sorted(self.variables)} do not match vertices {list(self.quiver.vertices)}"
            )

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self.quiver.vertices

    @property
    def mutable(self):
        return self.quiver.mutable

    def generator_names(self) -> Dict[Vertex, str]:
        """Vertex -> ambient variable name, for seeds whose variables are still the generators."""
        names = {}
        for v, poly in self.variables.items():
            if len(poly.variables) != 1 or poly != LaurentPolynomial.generator(self.ambient, poly.variables[0]):
                raise ClusterError(f"Variable at {v} is not an ambient generator: {poly}")
            names[v] = poly.variables[0]
        return names

    def cluster_monomial(self, exponents: Mapping[Vertex, int]) -> LaurentPolynomial:
        """Product of this seed's variables; negative powers only for frozen vertices of an invertible seed."""
        result = LaurentPolynomial.one(self.ambient)
        for v, exp in exponents.items():
            if v not in self.variables:
                raise UnknownVertex(f"Vertex {v} is not in the seed")
            if exp < 0 and (v in self.mutable or not self.frozen_invertible):
                raise ClusterError(f"Exponent {exp} at vertex {v} is outside the cluster monomials")
            result = result * self.variables[v] ** exp
        return result

    def same_as(self, other: "Seed") -> bool:
        return (
            self.quiver == other.quiver
            and self.variables == other.variables
            and self.ambient == other.ambient
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return self.same_as(other) and self.labels == other.labels

    __hash__ = None


def variable_name(prefix: str, v: Vertex) -> str:
    return f"{prefix}{v}"


def initial_seed(q: ExchangeQuiver, prefix: str = "x", labels: Optional[Mapping[Vertex, str]] = None,
                 **kwargs) -> Seed:
    ambient = tuple(variable_name(prefix, v) for v in q.vertices)
    variables = {v: LaurentPolynomial.generator(ambient, variable_name(prefix, v)) for v in q.vertices}
    return Seed(q, variables, dict(labels or {}), ambient, **kwargs)


def exchange_binomial(s: Seed, k: Vertex) -> Tuple[LaurentPolynomial, LaurentPolynomial]:
    """(P, Q) of the exchange relation at k, read from column k of B."""
    if k not in s.vertices:
        raise UnknownVertex(f"Vertex {k} is not in the seed")
    if k not in s.mutable:
        raise FrozenVertex(k)
    positive = LaurentPolynomial.one(s.ambient)
    negative = LaurentPolynomial.one(s.ambient)
    for i, value in s.quiver.column(k).items():
        if value > 0:
            positive = positive * s.variables[i] ** value
        elif value < 0:
            negative = negative * s.variables[i] ** -value
    return positive, negative


def mutate_seed(s: Seed, k: Vertex) -> Seed:
    positive, negative = exchange_binomial(s, k)
    new_quiver = mutate_quiver(s.quiver, k)
    variables = dict(s.variables)
    variables[k] = exact_divide(positive + negative, s.variables[k])
    labels = dict(s.labels)
    if k in labels:
        labels[k] = f"mu{k}({labels[k]})"
    return replace(s, quiver=new_quiver, variables=variables, labels=labels)


def mutate_sequence(s: Seed, ks: Iterable[Vertex]) -> Seed:
    for position, k in enumerate(ks, start=1):
        try:
            s = mutate_seed(s, k)
        except Exception as e:
            e.position = position
            if hasattr(e, "add_note"):
                e.add_note(f"while mutating at vertex {k}, position {position} of the sequence")
            raise
    return s


@dataclass
class ClusterExploration:
    variables: List[LaurentPolynomial]
    seed_count: int
    depth: int

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "seed_count": self.seed_count,
            "variable_count": len(self.variables),
            "variables": [str(v) for v in self.variables],
        }


def seed_key(s: Seed) -> tuple:
    """Identity of a seed up to relabelling its vertices: sorted variables plus the relabelled quiver."""
    text = {v: str(s.variables[v]) for v in s.vertices}
    order = sorted(s.vertices, key=lambda v: (text[v], v in s.mutable))
    rank = {v: r for r, v in enumerate(order)}
    entries = tuple(sorted((rank[i], rank[j], value) for (i, j), value in s.quiver.entries))
    mutable = tuple(sorted(rank[v] for v in s.mutable))
    return tuple(text[v] for v in order), mutable, entries


def enumerate_clusters(s: Seed, depth: int, parallelism: int = 1, progress: bool = False) -> ClusterExploration:
    """Breadth-first closure under mutation up to ``depth`` steps."""
    seen = {seed_key(s)}
    variables = {str(v): v for v in s.variables.values()}
    frontier = [s]
    levels = range(depth)
    if progress:
        levels = tqdm.tqdm(levels, desc="mutation depth")
    for _ in levels:
        tasks = [(seed, k) for seed in frontier for k in seed.quiver.mutable_order]
        if not tasks:
            break
        if parallelism > 1:
            with concurrent.futures.ThreadPoolExecutor(max_workers=parallelism) as executor:
                results = list(executor.map(lambda task: mutate_seed(*task), tasks))
        else:
            results = [mutate_seed(seed, k) for seed, k in tasks]
        frontier = []
        for mutated in results:
            key = seed_key(mutated)
            if key in seen:
                continue
            seen.add(key)
            frontier.append(mutated)
            for v in mutated.variables.values():
                variables.setdefault(str(v), v)
        if not frontier:
            break
    ordered = [variables[text] for text in sorted(variables)]
    return ClusterExploration(ordered, len(seen), depth)


def to_json(s: Seed) -> dict:
    data = {}
    if s.cartan is not None:
        data["cartan"] = s.cartan
    if s.word is not None:
        data["word"] = list(s.word)
    data.update(quiver_mod.to_json(s.quiver))
    data["ambient"] = list(s.ambient)
    data["vars"] = {str(v): laurent.to_json(s.variables[v]) for v in s.vertices}
    data["labels"] = {str(v): s.labels[v] for v in s.vertices if v in s.labels}
    data["frozen_invertible"] = s.frozen_invertible
    return data


def from_json(data: Mapping) -> Seed:
    q = quiver_mod.from_json(data)
    ambient = tuple(data["ambient"])
    variables = {int(v): laurent.from_json(records, ambient) for v, records in data["vars"].items()}
    labels = {int(v): label for v, label in data.get("labels", {}).items()}
    word = tuple(data["word"]) if data.get("word") is not None else None
    return Seed(
        q,
        variables,
        labels,
        ambient,
        frozen_invertible=bool(data.get("frozen_invertible", False)),
        cartan=data.get("cartan"),
        word=word,
    )


def rank_two_seed(b12: int = 1, b21: int = -1, prefix: str = "x") -> Seed:
    """Coefficient-free rank-2 seed on vertices 1, 2."""
    q = ExchangeQuiver.from_matrix((1, 2), (1, 2), {(1, 2): b12, (2, 1): b21})
    return initial_seed(q, prefix)
