"""Weyl-group combinatorics for a symmetric generalized Cartan matrix.

Letters and fundamental indices are 1-based. A Weyl element is handled as a
word; two words name the same element when they move the regular weight rho
to the same place, so nothing here assumes finite type.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import IndexOutOfRange, InvalidCartan, NotReduced

Word = Tuple[int, ...]
Root = Tuple[int, ...]


@dataclass(frozen=True)
class CartanDatum:
    name: str
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.matrix)
        if n == 0:
            raise InvalidCartan("Cartan matrix is empty")
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise InvalidCartan(f"Cartan matrix {self.name} is not square")
            if row[i] != 2:
                raise InvalidCartan(f"c[{i + 1},{i + 1}] = {row[i]}, expected 2")
            for j, value in enumerate(row):
                if i != j and value > 0:
                    raise InvalidCartan(f"c[{i + 1},{j + 1}] = {value} is positive")
                if value != self.matrix[j][i]:
                    raise InvalidCartan(f"Cartan matrix {self.name} is not symmetric at ({i + 1},{j + 1})")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], name: str = "custom") -> "CartanDatum":
        return cls(name, tuple(tuple(int(x) for x in row) for row in matrix))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def letters(self) -> range:
        return range(1, self.rank + 1)

    def c(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def check_letter(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"Letter {i} is outside 1..{self.rank} for {self.name}")

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for letter in word:
            self.check_letter(letter)
        return word

    def to_json(self) -> dict:
        return {"name": self.name, "matrix": [list(row) for row in self.matrix]}


def type_a(n: int) -> CartanDatum:
    matrix = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    return CartanDatum.from_matrix(matrix, f"A{n}")


def type_d(n: int) -> CartanDatum:
    # Nodes 1..n-2 form a path; n-1 and n both attach to n-2.
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        matrix[i][i] = 2
    edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    for a, b in edges:
        matrix[a][b] = matrix[b][a] = -1
    return CartanDatum.from_matrix(matrix, f"D{n}")


PRESETS = {f"A{n}": (lambda n=n: type_a(n)) for n in range(1, 6)}
PRESETS["D4"] = lambda: type_d(4)


def load_cartan(spec: Union[str, Path, Mapping]) -> CartanDatum:
    """A preset name (``A1``..``A5``, ``D4``), a JSON file path, a JSON string or a parsed mapping."""
    if isinstance(spec, Mapping):
        return CartanDatum.from_matrix(spec["matrix"], spec.get("name", "custom"))
    spec = str(spec)
    if spec in PRESETS:
        return PRESETS[spec]()
    if spec.lstrip().startswith(("{", "[")):
        data = json.loads(spec)
    elif Path(spec).is_file():
        data = json.loads(Path(spec).read_text())
    else:
        raise InvalidCartan(f"Unknown Cartan datum {spec!r}; presets are {sorted(PRESETS)}")
    if isinstance(data, list):
        data = {"matrix": data}
    return load_cartan(data)


# -- weights and roots --------------------------------------------------------


@dataclass(frozen=True)
class WeightVector:
    """sum_j fundamental[j] * w_j + sum_j alpha[j] * a_j, both 0-indexed by letter - 1."""

    fundamental: Tuple[int, ...]
    alpha: Tuple[int, ...]

    @classmethod
    def fundamental_weight(cls, cartan: CartanDatum, i: int) -> "WeightVector":
        cartan.check_letter(i)
        zeros = (0,) * cartan.rank
        return cls(tuple(int(j == i) for j in cartan.letters), zeros)

    @classmethod
    def simple_root(cls, cartan: CartanDatum, i: int) -> "WeightVector":
        cartan.check_letter(i)
        zeros = (0,) * cartan.rank
        return cls(zeros, tuple(int(j == i) for j in cartan.letters))

    @classmethod
    def rho(cls, cartan: CartanDatum) -> "WeightVector":
        return cls((1,) * cartan.rank, (0,) * cartan.rank)

    def fundamental_coordinates(self, cartan: CartanDatum) -> Tuple[int, ...]:
        """Coordinates in the w_j basis only, using a_j = sum_i c_ij w_i."""
        return tuple(
            self.fundamental[i - 1] + sum(cartan.c(i, j) * self.alpha[j - 1] for j in cartan.letters)
            for i in cartan.letters
        )

    def same_weight(self, other: "WeightVector", cartan: CartanDatum) -> bool:
        return self.fundamental_coordinates(cartan) == other.fundamental_coordinates(cartan)

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a - b for a, b in zip(self.fundamental, other.fundamental)),
            tuple(a - b for a, b in zip(self.alpha, other.alpha)),
        )

    def __str__(self) -> str:
        parts = []
        for symbol, coords in (("ϖ", self.fundamental), ("α", self.alpha)):
            for j, value in enumerate(coords, start=1):
                if value:
                    parts.append((value, f"{symbol}{j}"))
        if not parts:
            return "0"
        out = []
        for n, (value, name) in enumerate(parts):
            magnitude = "" if abs(value) == 1 else f"{abs(value)}"
            sign = "-" if value < 0 else "+"
            out.append(f"{'-' if sign == '-' else ''}{magnitude}{name}" if n == 0 else f" {sign} {magnitude}{name}")
        return "".join(out)


def pairing(cartan: CartanDatum, i: int, weight: WeightVector) -> int:
    """<h_i, weight>."""
    return weight.fundamental[i - 1] + sum(cartan.c(i, j) * weight.alpha[j - 1] for j in cartan.letters)


def reflect(cartan: CartanDatum, i: int, weight: WeightVector) -> WeightVector:
    """s_i(weight) = weight - <h_i, weight> a_i."""
    cartan.check_letter(i)
    shift = pairing(cartan, i, weight)
    alpha = list(weight.alpha)
    alpha[i - 1] -= shift
    return WeightVector(weight.fundamental, tuple(alpha))


def act(cartan: CartanDatum, word: Sequence[int], weight: WeightVector) -> WeightVector:
    """The product s_{i_1} ... s_{i_l} applied to ``weight`` (rightmost letter first)."""
    for letter in reversed(cartan.check_word(word)):
        weight = reflect(cartan, letter, weight)
    return weight


def _root_pairing(cartan: CartanDatum, i: int, root: Root) -> int:
    return sum(cartan.c(i, j) * root[j - 1] for j in cartan.letters)


def reflect_root(cartan: CartanDatum, i: int, root: Root) -> Root:
    shift = _root_pairing(cartan, i, root)
    out = list(root)
    out[i - 1] -= shift
    return tuple(out)


def act_root(cartan: CartanDatum, word: Sequence[int], root: Root) -> Root:
    for letter in reversed(word):
        root = reflect_root(cartan, letter, root)
    return root


def simple_root(cartan: CartanDatum, i: int) -> Root:
    return tuple(int(j == i) for j in cartan.letters)


def is_positive(root: Root) -> bool:
    return any(root) and all(c >= 0 for c in root)


def root_pairing(beta: Root, weight: WeightVector, cartan: CartanDatum) -> int:
    """Symmetric form (beta, weight) with (a_i, a_j) = c_ij and (a_i, w_j) = delta_ij."""
    return sum(coeff * pairing(cartan, i, weight) for i, coeff in zip(cartan.letters, beta))


def format_root(root: Root) -> str:
    weight = WeightVector((0,) * len(root), tuple(root))
    return str(weight)


# -- words --------------------------------------------------------------------


def _betas(cartan: CartanDatum, word: Word) -> List[Root]:
    return [act_root(cartan, word[:k], simple_root(cartan, letter)) for k, letter in enumerate(word)]


def is_reduced(cartan: CartanDatum, word: Sequence[int]) -> bool:
    word = cartan.check_word(word)
    return all(is_positive(beta) for beta in _betas(cartan, word))


def require_reduced(cartan: CartanDatum, word: Sequence[int]) -> Word:
    word = cartan.check_word(word)
    if not is_reduced(cartan, word):
        raise NotReduced(word)
    return word


def beta_roots(cartan: CartanDatum, word: Sequence[int]) -> List[Root]:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(a_{i_k}) for each position k."""
    return _betas(cartan, require_reduced(cartan, word))


def reduce_word(cartan: CartanDatum, word: Sequence[int]) -> Word:
    """A reduced word for the same element, by the exchange condition."""
    reduced: List[int] = []
    for letter in cartan.check_word(word):
        image = act_root(cartan, reduced, simple_root(cartan, letter))
        if is_positive(image):
            reduced.append(letter)
            continue
        target = tuple(-c for c in image)
        for j in range(len(reduced)):
            if act_root(cartan, reduced[:j], simple_root(cartan, reduced[j])) == target:
                del reduced[j]
                break
    return tuple(reduced)


def length(cartan: CartanDatum, word: Sequence[int]) -> int:
    return len(reduce_word(cartan, word))


def element_key(cartan: CartanDatum, word: Sequence[int]) -> Tuple[int, ...]:
    return act(cartan, word, WeightVector.rho(cartan)).fundamental_coordinates(cartan)


def same_element(cartan: CartanDatum, first: Sequence[int], second: Sequence[int]) -> bool:
    return element_key(cartan, first) == element_key(cartan, second)


def has_right_descent(cartan: CartanDatum, word: Sequence[int], i: int) -> bool:
    """True when l(w s_i) < l(w), i.e. w sends a_i to a negative root."""
    return not is_positive(act_root(cartan, cartan.check_word(word), simple_root(cartan, i)))


def descents(cartan: CartanDatum, word: Sequence[int]) -> List[int]:
    return [i for i in cartan.letters if has_right_descent(cartan, word, i)]


def length_additive(cartan: CartanDatum, w: Sequence[int], v: Sequence[int]) -> bool:
    """Whether w = v u with l(w) = l(v) + l(u)."""
    w = require_reduced(cartan, w)
    v = require_reduced(cartan, v)
    return length(cartan, tuple(reversed(v)) + w) == len(w) - len(v)


def bruhat_leq(cartan: CartanDatum, v: Sequence[int], w: Sequence[int]) -> bool:
    """v <= w in the Bruhat order.

    Equivalent to the subword criterion; computed by recursion on the last
    letter s of w: if vs < v then v <= w iff vs <= ws, otherwise v <= w iff v <= ws.
    """
    v = require_reduced(cartan, v)
    w = require_reduced(cartan, w)

    @lru_cache(maxsize=None)
    def leq(v: Word, w: Word) -> bool:
        if len(v) > len(w):
            return False
        if not w:
            return not v
        s = w[-1]
        if has_right_descent(cartan, v, s):
            return leq(reduce_word(cartan, v + (s,)), w[:-1])
        return leq(v, w[:-1])

    return leq(v, w)


def frozen_set(cartan: CartanDatum, word: Sequence[int]) -> frozenset:
    """Positions (1-based) whose letter does not occur again later in the word."""
    word = require_reduced(cartan, word)
    return frozenset(k for k in range(1, len(word) + 1) if word[k - 1] not in word[k:])


def next_occurrence(word: Sequence[int], k: int) -> int:
    """k+ : the next position carrying the letter of position k, or len(word) + 1."""
    for l in range(k + 1, len(word) + 1):
        if word[l - 1] == word[k - 1]:
            return l
    return len(word) + 1


def previous_occurrence(word: Sequence[int], k: int) -> int:
    """k- : the previous position carrying the letter of position k, or 0."""
    for l in range(k - 1, 0, -1):
        if word[l - 1] == word[k - 1]:
            return l
    return 0


def enumerate_elements(cartan: CartanDatum, max_length: int) -> List[Word]:
    """One reduced word per element of length <= max_length, shortest first."""
    seen: Dict[Tuple[int, ...], Word] = {element_key(cartan, ()): ()}
    queue = deque([()])
    while queue:
        word = queue.popleft()
        if len(word) == max_length:
            continue
        for i in cartan.letters:
            if has_right_descent(cartan, word, i):
                continue
            longer = word + (i,)
            key = element_key(cartan, longer)
            if key not in seen:
                seen[key] = longer
                queue.append(longer)
    return sorted(seen.values(), key=lambda w: (len(w), w))


def longest_word(cartan: CartanDatum, limit: int = 256) -> Word:
    """Reduced word of the longest element (finite type only)."""
    word: Word = ()
    while True:
        ascents = [i for i in cartan.letters if not has_right_descent(cartan, word, i)]
        if not ascents:
            return word
        if len(word) >= limit:
            raise InvalidCartan(f"{cartan.name} has no longest element within length {limit}")
        word = word + (ascents[0],)


def positive_roots(cartan: CartanDatum) -> List[Root]:
    return beta_roots(cartan, longest_word(cartan))


def coset_representative(cartan: CartanDatum, word: Sequence[int], i: int) -> Word:
    """Minimal-length u with u w_i = w w_i."""
    mu = act(cartan, word, WeightVector.fundamental_weight(cartan, i))
    letters: List[int] = []
    while True:
        lowering = [j for j in cartan.letters if pairing(cartan, j, mu) < 0]
        if not lowering:
            return tuple(letters)
        j = lowering[0]
        mu = reflect(cartan, j, mu)
        letters.append(j)
