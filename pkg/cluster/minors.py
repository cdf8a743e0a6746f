"""Type A realization of generalized minors.

In type A_r, D(u w_i, v w_i) restricted to the unipotent group is the minor of
the generic (r+1) x (r+1) upper unitriangular matrix with rows v.{1..i} and
columns u.{1..i}; the letter j acts on indices by swapping j and j+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import IndexOutOfRange
from .laurent import LaurentPolynomial
from .richardson import MinorLabel, richardson_spec, root_label
from .weyl import CartanDatum, Root, WeightVector, act, bruhat_leq, coset_representative, require_reduced, type_a


@dataclass(frozen=True)
class UnitriangularGeneric:
    rank: int

    @property
    def size(self) -> int:
        return self.rank + 1

    def name(self, a: int, b: int) -> str:
        return f"x{a}{b}" if self.size < 10 else f"x{a}_{b}"

    @property
    def ambient(self) -> Tuple[str, ...]:
        n = self.size
        return tuple(self.name(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1))

    def entry(self, a: int, b: int) -> LaurentPolynomial:
        if a == b:
            return LaurentPolynomial.one(self.ambient)
        if a < b:
            return LaurentPolynomial.generator(self.ambient, self.name(a, b))
        return LaurentPolynomial.zero(self.ambient)

    def degree(self, a: int, b: int) -> Root:
        """deg x_ab = a_a + ... + a_{b-1}."""
        return tuple(int(a <= j < b) for j in range(1, self.size))

    def evaluate(self, point: Mapping[str, Fraction]) -> List[List[Fraction]]:
        n = self.size
        return [
            [Fraction(1) if a == b else (Fraction(point[self.name(a, b)]) if a < b else Fraction(0))
             for b in range(1, n + 1)]
            for a in range(1, n + 1)
        ]


@dataclass
class MinorExpression:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    value: LaurentPolynomial
    label: Optional[MinorLabel] = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "value": str(self.value),
            "label": str(self.label) if self.label else None,
        }


def act_on_indices(word: Sequence[int], indices) -> Tuple[int, ...]:
    """w.S for w = s_{i_1} ... s_{i_l}, rightmost letter first."""
    current = set(indices)
    for letter in reversed(word):
        current = {letter + 1 if x == letter else letter if x == letter + 1 else x for x in current}
    return tuple(sorted(current))


def _cofactor(matrix: List[List[Any]], zero: Any) -> Any:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = zero
    for c in range(n):
        if matrix[0][c] == 0:
            continue
        minor = [row[:c] + row[c + 1:] for row in matrix[1:]]
        term = matrix[0][c] * _cofactor(minor, zero)
        total = total + term if c % 2 == 0 else total - term
    return total


def determinant(matrix: Sequence[Sequence[Any]], zero: Any, one: Any) -> Any:
    """Determinant over an exact ring whose ``/`` is exact division.

    Fraction-free Bareiss elimination; cofactor expansion for size <= 3.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return one
    if n <= 3:
        return _cofactor(a, zero)
    negate = False
    previous = one
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return zero
            a[k], a[pivot] = a[pivot], a[k]
            negate = not negate
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous
        previous = a[k][k]
    return -a[n - 1][n - 1] if negate else a[n - 1][n - 1]


def _check_index(rank: int, i: int) -> None:
    if not 1 <= i <= rank:
        raise IndexOutOfRange(f"Fundamental index {i} is outside 1..{rank}")


def minor(generic: UnitriangularGeneric, rows: Sequence[int], cols: Sequence[int]) -> LaurentPolynomial:
    matrix = [[generic.entry(a, b) for b in cols] for a in rows]
    ambient = generic.ambient
    return determinant(matrix, LaurentPolynomial.zero(ambient), LaurentPolynomial.one(ambient))


def generalized_minor(r: int, u: Sequence[int], v: Sequence[int], i: int,
                      cartan: Optional[CartanDatum] = None) -> MinorExpression:
    """D(u w_i, v w_i) in type A_r."""
    cartan = cartan or type_a(r)
    _check_index(r, i)
    u = require_reduced(cartan, u)
    v = require_reduced(cartan, v)
    base = range(1, i + 1)
    rows = act_on_indices(v, base)
    cols = act_on_indices(u, base)
    return MinorExpression(rows, cols, minor(UnitriangularGeneric(r), rows, cols), MinorLabel(u, v, i))


def minor_from_label(r: int, label: MinorLabel, cartan: Optional[CartanDatum] = None) -> MinorExpression:
    return generalized_minor(r, label.u, label.v, label.index, cartan)


def word_rank(word: Sequence[int]) -> int:
    return max(word, default=1)


def realize_seed(word: Sequence[int], p: int = 0, r: Optional[int] = None) -> Dict[int, MinorExpression]:
    """Minor of every surviving vertex of the Richardson seed (the N_w seed when p = 0)."""
    r = r or word_rank(word)
    cartan = type_a(r)
    spec = richardson_spec(cartan, word, p)
    return {l: minor_from_label(r, spec.minor_label(l), cartan) for l in spec.surviving}


def root_minor(word: Sequence[int], k: int, r: Optional[int] = None) -> MinorExpression:
    """The dual root vector at position k; its weight is beta_k."""
    r = r or word_rank(word)
    cartan = type_a(r)
    return minor_from_label(r, root_label(cartan, word, k), cartan)


def monomial_degree(generic: UnitriangularGeneric, exponents: Mapping[str, int]) -> Root:
    total = [0] * generic.rank
    for a in range(1, generic.size + 1):
        for b in range(a + 1, generic.size + 1):
            exp = exponents.get(generic.name(a, b), 0)
            if exp:
                for j, d in enumerate(generic.degree(a, b)):
                    total[j] += exp * d
    return tuple(total)


def minor_degree(expr: MinorExpression, r: int) -> set:
    """Root-lattice degrees of the monomials of ``expr``; one element when homogeneous."""
    generic = UnitriangularGeneric(r)
    return {monomial_degree(generic, m.as_dict()) for m in expr.value.terms}


def expected_degree(r: int, u: Sequence[int], v: Sequence[int], i: int) -> Root:
    """v w_i - u w_i in simple-root coordinates."""
    cartan = type_a(r)
    omega = WeightVector.fundamental_weight(cartan, i)
    return (act(cartan, v, omega) - act(cartan, u, omega)).alpha


def nonvanishing(r: int, u: Sequence[int], v: Sequence[int], i: int) -> bool:
    return not generalized_minor(r, u, v, i).value.is_zero


def predicted_nonvanishing(r: int, u: Sequence[int], v: Sequence[int], i: int) -> bool:
    """Bruhat comparison of the minimal coset representatives: rep(v) <= rep(u)."""
    cartan = type_a(r)
    _check_index(r, i)
    return bruhat_leq(cartan, coset_representative(cartan, v, i), coset_representative(cartan, u, i))


def evaluate_generic(r: int, point: Mapping[str, Fraction]) -> List[List[Fraction]]:
    return UnitriangularGeneric(r).evaluate(point)


def numeric_minor(r: int, rows: Sequence[int], cols: Sequence[int], point: Mapping[str, Fraction]) -> Fraction:
    matrix = evaluate_generic(r, point)
    sub = [[matrix[a - 1][b - 1] for b in cols] for a in rows]
    return determinant(sub, Fraction(0), Fraction(1))


# -- oracle reports -----------------------------------------------------------


@dataclass
class OracleReport:
    word: Tuple[int, ...]
    vertex: int
    mode: str
    result: bool
    counterexample: Optional[Dict[str, str]] = None
    trials: Optional[int] = None
    detail: str = ""

    def to_json(self) -> dict:
        data = {"word": list(self.word), "vertex": self.vertex, "mode": self.mode, "result": self.result}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        if self.trials is not None:
            data["trials"] = self.trials
        if self.detail:
            data["detail"] = self.detail
        return data


def verify_exchange(word: Sequence[int], k: int, mode: str = "exact", trials: int = 20,
                    prng_seed: Optional[int] = None, r: Optional[int] = None) -> OracleReport:
    """Check the exchange relation at vertex k of the N_w seed against the minors."""
    from .oracles import get_oracle

    oracle = get_oracle(mode, trials=trials, prng_seed=prng_seed)
    return oracle.check_exchange(tuple(word), k, r or word_rank(word))
