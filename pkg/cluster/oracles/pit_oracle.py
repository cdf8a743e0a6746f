import random
from fractions import Fraction
from typing import Dict, Optional

from ..errors import ClusterError
from ..laurent import evaluate
from ..minors import OracleReport
from .base_oracle import BaseOracle, Exchange
from .utils import format_point, point_on_hypersurface, random_point


class PitOracle(BaseOracle):
    """Randomized check of the exchange relation at reproducible rational points.

    At uniform points with a nonzero minor at k, minor_k * x_k' must equal P + Q,
    with x_k' the mutated variable evaluated at the minors. On the zero set of
    minor_k, P + Q must vanish; those points solve one entry and may leave the
    sampling box.
    """

    mode = "pit"

    def __init__(self, trials: int = 20, prng_seed=None, max_attempts: int = 100):
        if prng_seed is None:
            raise ClusterError("pit mode needs an explicit PRNG seed")
        super().__init__(trials, prng_seed)
        self.max_attempts = max_attempts

    def _uniform_point(self, rng: random.Random, exchange: Exchange) -> Dict[str, Fraction]:
        names = exchange.divisor.ambient
        for _ in range(self.max_attempts):
            point = random_point(rng, names)
            if evaluate(exchange.divisor, point) != 0:
                return point
        raise ClusterError(f"No point with {exchange.divisor} != 0 found in {self.max_attempts} attempts")

    def _mismatch(self, exchange: Exchange, point: Dict[str, Fraction]) -> Optional[str]:
        minors_at = {name: evaluate(minor, point) for name, minor in exchange.minor_values().items()}
        new = evaluate(exchange.mutated.variables[exchange.vertex], minors_at)
        left = evaluate(exchange.divisor, point) * new
        right = evaluate(exchange.binomial, point)
        if left != right:
            return f"minor * mutated = {left} but P + Q = {right}"
        return None

    def check(self, exchange: Exchange) -> OracleReport:
        word, k = exchange.word, exchange.vertex
        rng = random.Random(self.prng_seed)
        for _ in range(self.trials):
            point = self._uniform_point(rng, exchange)
            mismatch = self._mismatch(exchange, point)
            if mismatch is not None:
                return OracleReport(
                    word, k, self.mode, False, counterexample=format_point(point), trials=self.trials, detail=mismatch
                )

        if not exchange.divisor.is_constant:
            for _ in range(self.trials):
                point = point_on_hypersurface(rng, exchange.divisor, exchange.divisor.ambient)
                if evaluate(exchange.binomial, point) != 0:
                    return OracleReport(
                        word,
                        k,
                        self.mode,
                        False,
                        counterexample=format_point(point),
                        trials=self.trials,
                        detail=f"{exchange.binomial} is nonzero on the zero set of {exchange.divisor}",
                    )
        return OracleReport(word, k, self.mode, True, trials=self.trials)
