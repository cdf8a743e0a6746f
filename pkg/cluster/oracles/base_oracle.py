from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Tuple

from ..laurent import LaurentPolynomial, substitute
from ..minors import MinorExpression, OracleReport, realize_seed
from ..richardson import build_nw_seed
from ..seed import Seed, exchange_binomial, mutate_seed
from ..weyl import type_a


@dataclass(frozen=True)
class Exchange:
    """The exchange relation at one vertex of the N_w seed, with the binomial written in matrix entries."""

    word: Tuple[int, ...]
    vertex: int
    seed: Seed
    mutated: Seed
    minors: Dict[int, MinorExpression]
    positive: LaurentPolynomial
    negative: LaurentPolynomial

    @property
    def divisor(self) -> LaurentPolynomial:
        return self.minors[self.vertex].value

    @property
    def binomial(self) -> LaurentPolynomial:
        return self.positive + self.negative

    def minor_values(self) -> Dict[str, LaurentPolynomial]:
        """Seed generator name -> the minor it stands for."""
        return {self.seed.generator_names()[v]: self.minors[v].value for v in self.seed.vertices}


class BaseOracle(ABC):
    """Base class for exchange-identity oracles."""

    mode: str = ""

    def __init__(self, trials: int = 20, prng_seed=None):
        self.trials = trials
        self.prng_seed = prng_seed

    def prepare(self, word: Tuple[int, ...], k: int, r: int) -> Exchange:
        """Raises FrozenVertex when k is not mutable."""
        seed = build_nw_seed(type_a(r), word)
        positive, negative = exchange_binomial(seed, k)
        minors = realize_seed(word, 0, r)
        values = {seed.generator_names()[v]: minors[v].value for v in seed.vertices}
        ambient = minors[k].value.ambient
        return Exchange(
            word=tuple(word),
            vertex=k,
            seed=seed,
            mutated=mutate_seed(seed, k),
            minors=minors,
            positive=substitute(positive, values, ambient),
            negative=substitute(negative, values, ambient),
        )

    @staticmethod
    def in_minors(exchange: Exchange, f: LaurentPolynomial) -> LaurentPolynomial:
        return substitute(f, exchange.minor_values(), exchange.divisor.ambient)

    def check_exchange(self, word: Tuple[int, ...], k: int, r: int) -> OracleReport:
        """Verify the exchange relation at vertex k of the N_w seed of ``word`` in type A_r."""
        return self.check(self.prepare(word, k, r))

    @abstractmethod
    def check(self, exchange: Exchange) -> OracleReport:
        pass
