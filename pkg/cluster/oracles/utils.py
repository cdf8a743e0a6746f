import random
from fractions import Fraction
from typing import Dict, Mapping, Sequence

from ..errors import ClusterError
from ..laurent import LaurentPolynomial, evaluate, specialize

MAX_NUMERATOR = 10
MAX_DENOMINATOR = 10


def random_rational(rng: random.Random) -> Fraction:
    """Uniform over values in [-10, 10] with denominator at most 10."""
    den = rng.randint(1, MAX_DENOMINATOR)
    return Fraction(rng.randint(-MAX_NUMERATOR * den, MAX_NUMERATOR * den), den)


def random_point(rng: random.Random, names: Sequence[str]) -> Dict[str, Fraction]:
    return {name: random_rational(rng) for name in names}


def point_on_hypersurface(rng: random.Random, f: LaurentPolynomial, names: Sequence[str],
                          max_attempts: int = 100) -> Dict[str, Fraction]:
    """A random point with f = 0, for f of degree one in some variable.

    One variable of f is solved for; points where its coefficient vanishes
    are rejected and redrawn.
    """
    candidates = [var for var in f.variables if f.degree_in(var)[0] >= 0 and f.degree_in(var)[1] == 1]
    if not candidates:
        raise ClusterError(f"{f} has no variable of degree exactly one")
    for _ in range(max_attempts):
        var = rng.choice(candidates)
        point = random_point(rng, [name for name in names if name != var])
        constant = evaluate(specialize(f, {var: 0}), point)
        slope = evaluate(specialize(f, {var: 1}), point) - constant
        if slope == 0:
            continue
        point[var] = -constant / slope
        return point
    raise ClusterError(f"No point on {f} = 0 found in {max_attempts} attempts")


def format_point(point: Mapping[str, Fraction]) -> Dict[str, str]:
    return {name: str(value) for name, value in sorted(point.items())}
