from ..errors import ExactDivisionFailed, NotDivisible
from ..laurent import exact_divide
from ..minors import OracleReport
from ..seed import mutate_seed
from .base_oracle import BaseOracle, Exchange


class ExactOracle(BaseOracle):
    """Divides the substituted exchange binomial by the minor at k."""

    mode = "exact"

    def check(self, exchange: Exchange) -> OracleReport:
        word, k = exchange.word, exchange.vertex
        try:
            quotient = exact_divide(exchange.binomial, exchange.divisor)
        except NotDivisible as e:
            raise ExactDivisionFailed(
                f"{exchange.binomial} is not divisible by the minor {exchange.divisor} at vertex {k}"
            ) from e
        if not quotient.is_polynomial:
            return OracleReport(word, k, self.mode, False, detail=f"quotient {quotient} is not a polynomial")

        if self.in_minors(exchange, exchange.mutated.variables[k]) != quotient:
            return OracleReport(word, k, self.mode, False, detail=f"mutated variable does not realize {quotient}")
        back = mutate_seed(exchange.mutated, k)
        if self.in_minors(exchange, back.variables[k]) != exchange.divisor:
            return OracleReport(word, k, self.mode, False, detail="mutating twice does not return the minor")
        return OracleReport(
            word,
            k,
            self.mode,
            True,
            detail=f"{exchange.divisor} * ({quotient}) = {exchange.positive} + {exchange.negative}",
        )
