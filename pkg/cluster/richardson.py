"""Seeds of unipotent cells and open Richardson varieties from a reduced word.

For a reduced word i_1 ... i_n of w the seed has vertices 1..n, vertex k
standing for D(w^{<=k} w_{i_k}, w_{i_k}). A prefix of length p names v; the
Richardson seed keeps the vertices l > p, re-pointed to
D(w^{<=l} w_{i_l}, v w_{i_l}), and the variables at k <= p specialize to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Tuple

from . import quiver as quiver_mod
from .errors import InvalidMorphism, PrefixOutOfRange
from .morphism import SOURCE_PREFIX, TARGET_PREFIX, ClusterMorphism, validate_morphism
from .quiver import ExchangeQuiver, Vertex
from .seed import Seed, initial_seed
from .weyl import (
    CartanDatum,
    Root,
    Word,
    beta_roots,
    frozen_set,
    next_occurrence,
    previous_occurrence,
    require_reduced,
)


def format_word(word: Word) -> str:
    return "".join(f"s{letter}" for letter in word)


@dataclass(frozen=True)
class MinorLabel:
    """D(u w_i, v w_i), recorded by words for u and v."""

    u: Word
    v: Word
    index: int

    def __str__(self) -> str:
        def side(word: Word) -> str:
            return f"{format_word(word)}·ϖ{self.index}" if word else f"ϖ{self.index}"

        return f"D({side(self.u)}, {side(self.v)})"


@dataclass(frozen=True)
class NwSeedSpec:
    cartan: CartanDatum
    word: Word

    @property
    def n(self) -> int:
        return len(self.word)

    @property
    def frozen(self) -> FrozenSet[Vertex]:
        return frozen_set(self.cartan, self.word)

    @property
    def labels(self) -> Dict[Vertex, str]:
        return {k: f"D({k},0)" for k in range(1, self.n + 1)}

    def minor_label(self, k: Vertex) -> MinorLabel:
        return MinorLabel(self.word[:k], (), self.word[k - 1])


@dataclass(frozen=True)
class RichardsonSeedSpec:
    base: NwSeedSpec
    p: int

    @property
    def v(self) -> Word:
        return self.base.word[: self.p]

    @property
    def surviving(self) -> Tuple[Vertex, ...]:
        return tuple(range(self.p + 1, self.base.n + 1))

    def minor_label(self, l: Vertex) -> MinorLabel:
        return MinorLabel(self.base.word[:l], self.v, self.base.word[l - 1])

    @property
    def labels(self) -> Dict[Vertex, str]:
        return {l: str(self.minor_label(l)) for l in self.surviving}


def nw_spec(cartan: CartanDatum, word) -> NwSeedSpec:
    return NwSeedSpec(cartan, require_reduced(cartan, word))


def richardson_spec(cartan: CartanDatum, word, p: int) -> RichardsonSeedSpec:
    base = nw_spec(cartan, word)
    if not 0 <= p <= base.n:
        raise PrefixOutOfRange(f"Prefix length {p} is outside 0..{base.n}")
    return RichardsonSeedSpec(base, p)


def exchange_matrix(cartan: CartanDatum, word) -> ExchangeQuiver:
    """The standard exchange matrix of a reduced word.

    With k+ the next position of the same letter:
    b[k,l] = 1 if k = l+, -1 if l = k+, c(i_k, i_l) if l < k < l+ < k+,
    -c(i_k, i_l) if k < l < k+ < l+, and 0 otherwise.
    """
    word = require_reduced(cartan, word)
    n = len(word)
    vertices = tuple(range(1, n + 1))
    frozen = frozen_set(cartan, word)
    mutable = [v for v in vertices if v not in frozen]
    plus = {k: next_occurrence(word, k) for k in vertices}
    b = {}
    for l in mutable:
        for k in vertices:
            if k == l:
                continue
            c = cartan.c(word[k - 1], word[l - 1])
            if k == plus[l]:
                b[(k, l)] = 1
            elif l == plus[k]:
                b[(k, l)] = -1
            elif l < k < plus[l] < plus[k]:
                b[(k, l)] = c
            elif k < l < plus[k] < plus[l]:
                b[(k, l)] = -c
    return ExchangeQuiver.from_matrix(vertices, mutable, b)


def build_nw_seed(cartan: CartanDatum, word) -> Seed:
    spec = nw_spec(cartan, word)
    q = exchange_matrix(cartan, spec.word)
    return initial_seed(q, SOURCE_PREFIX, spec.labels, cartan=cartan.name, word=spec.word)


def build_richardson_seed(cartan: CartanDatum, word, p: int, prefix: str = TARGET_PREFIX) -> Seed:
    spec = richardson_spec(cartan, word, p)
    q = quiver_mod.full_subquiver(exchange_matrix(cartan, spec.base.word), spec.surviving)
    return initial_seed(q, prefix, spec.labels, cartan=cartan.name, word=spec.base.word)


def richardson_morphism(cartan: CartanDatum, word, p: int) -> ClusterMorphism:
    """N_w seed -> Richardson seed: positions <= p go to 1, the rest to themselves."""
    spec = richardson_spec(cartan, word, p)
    phi = ClusterMorphism(
        build_nw_seed(cartan, spec.base.word),
        build_richardson_seed(cartan, spec.base.word, p),
        {l: l for l in spec.surviving},
        frozenset(range(1, p + 1)),
    )
    report = validate_morphism(phi)
    if not report.ok:
        raise InvalidMorphism(f"Richardson morphism for {list(spec.base.word)}, p={p}: {report.first}")
    return phi


def killed_roots(cartan: CartanDatum, word, p: int) -> List[Root]:
    spec = richardson_spec(cartan, word, p)
    return beta_roots(cartan, spec.base.word)[:p]


def surviving_roots(cartan: CartanDatum, word, p: int) -> List[Root]:
    spec = richardson_spec(cartan, word, p)
    return beta_roots(cartan, spec.base.word)[p:]


def root_label(cartan: CartanDatum, word, k: int) -> MinorLabel:
    """D(w^{<=k} w_{i_k}, w^{<=k-} w_{i_k}), the dual root vector of weight beta_k."""
    spec = nw_spec(cartan, word)
    if not 1 <= k <= spec.n:
        raise PrefixOutOfRange(f"Position {k} is outside 1..{spec.n}")
    return MinorLabel(spec.word[:k], spec.word[: previous_occurrence(spec.word, k)], spec.word[k - 1])
