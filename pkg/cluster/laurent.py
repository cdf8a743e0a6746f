"""Exact sparse Laurent polynomials over the rationals.

Every cluster variable in the workbench is a ``LaurentPolynomial``. Values are
immutable: operations return new objects and never touch their inputs.

Terms are kept in a dict keyed by ``Monomial``. A monomial stores only
nonzero exponents, keyed by variable *name*; the ambient variable list of the
polynomial fixes the lexicographic term order used for printing,
serialization and division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import AmbientMismatch, DivideByZero, NotDivisible, ZeroToNegativePower

Rational = Union[int, Fraction]
Ambient = Tuple[str, ...]


@dataclass(frozen=True)
class Monomial:
    """A product of variables with signed exponents; zero exponents are never stored."""

    exponents: Tuple[Tuple[str, int], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> "Monomial":
        return cls(tuple(sorted((var, int(exp)) for var, exp in mapping.items() if exp != 0)))

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "Monomial":
        return cls.from_mapping({name: exponent})

    def as_dict(self) -> Dict[str, int]:
        return dict(self.exponents)

    def degree_in(self, name: str) -> int:
        for var, exp in self.exponents:
            if var == name:
                return exp
        return 0

    def key(self, ambient: Sequence[str]) -> Tuple[int, ...]:
        exps = self.as_dict()
        return tuple(exps.get(var, 0) for var in ambient)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged = self.as_dict()
        for var, exp in other.exponents:
            merged[var] = merged.get(var, 0) + exp
        return Monomial.from_mapping(merged)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial.from_mapping({var: exp * n for var, exp in self.exponents})

    def inverse(self) -> "Monomial":
        return self ** -1

    def is_polynomial(self) -> bool:
        return all(exp > 0 for _, exp in self.exponents)

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "*".join(var if exp == 1 else f"{var}^{exp}" for var, exp in self.exponents)


ONE = Monomial()


class LaurentPolynomial:
    """An element of Q[x_i^{±1}] over a fixed ambient variable list."""

    __slots__ = ("ambient", "terms", "_hash")

    def __init__(self, ambient: Iterable[str], terms: Optional[Mapping[Monomial, Rational]] = None):
        self.ambient: Ambient = tuple(ambient)
        known = set(self.ambient)
        cleaned: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            for var, _ in monomial.exponents:
                if var not in known:
                    raise ValueError(f"Variable {var!r} is not in the ambient list {list(self.ambient)}")
            cleaned[monomial] = coeff
        self.terms: Dict[Monomial, Fraction] = cleaned
        self._hash: Optional[int] = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ambient: Iterable[str]) -> "LaurentPolynomial":
        return cls(ambient)

    @classmethod
    def constant(cls, ambient: Iterable[str], value: Rational) -> "LaurentPolynomial":
        return cls(ambient, {ONE: value})

    @classmethod
    def one(cls, ambient: Iterable[str]) -> "LaurentPolynomial":
        return cls.constant(ambient, 1)

    @classmethod
    def generator(cls, ambient: Iterable[str], name: str) -> "LaurentPolynomial":
        return cls(ambient, {Monomial.variable(name): 1})

    @classmethod
    def from_monomial(cls, ambient: Iterable[str], exponents: Mapping[str, int],
                      coeff: Rational = 1) -> "LaurentPolynomial":
        return cls(ambient, {Monomial.from_mapping(exponents): coeff})

    @classmethod
    def _raw(cls, ambient: Ambient, terms: Dict[Monomial, Fraction]) -> "LaurentPolynomial":
        # Caller guarantees canonical terms over ``ambient``.
        poly = cls.__new__(cls)
        poly.ambient = ambient
        poly.terms = terms
        poly._hash = None
        return poly

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_polynomial(self) -> bool:
        return all(all(exp > 0 for _, exp in m.exponents) for m in self.terms)

    @property
    def variables(self) -> Tuple[str, ...]:
        present = {var for m in self.terms for var, _ in m.exponents}
        return tuple(var for var in self.ambient if var in present)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a constant")
        return self.terms.get(ONE, Fraction(0))

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        """Terms in canonical order: descending lexicographic exponent vectors."""
        return sorted(self.terms.items(), key=lambda item: item[0].key(self.ambient), reverse=True)

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("The zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda item: item[0].key(self.ambient))

    def min_exponents(self) -> Monomial:
        """The largest monomial dividing every term (componentwise minimum)."""
        lows: Dict[str, int] = {}
        for var in self.variables:
            lows[var] = min(m.degree_in(var) for m in self.terms)
        return Monomial.from_mapping(lows)

    def degree_in(self, name: str) -> Tuple[int, int]:
        """(lowest, highest) exponent of ``name`` across the terms."""
        degrees = [m.degree_in(name) for m in self.terms] or [0]
        return min(degrees), max(degrees)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.ambient != self.ambient:
                raise AmbientMismatch(self.ambient, other.ambient)
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.ambient, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for monomial, coeff in other.terms.items():
            total = terms.get(monomial, 0) + coeff
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
        return LaurentPolynomial._raw(self.ambient, terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._raw(self.ambient, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                product = m1 * m2
                total = terms.get(product, 0) + c1 * c2
                if total:
                    terms[product] = total
                else:
                    terms.pop(product, None)
        return LaurentPolynomial._raw(self.ambient, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            if not self.is_monomial:
                raise NotDivisible(f"{self} is not a unit of the Laurent ring")
            ((monomial, coeff),) = self.terms.items()
            return LaurentPolynomial._raw(self.ambient, {monomial ** n: coeff ** n})
        result = LaurentPolynomial.one(self.ambient)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return exact_divide(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value() == other
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (monomial, coeff) in enumerate(self.sorted_terms()):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if monomial == ONE:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = f"{magnitude}*{monomial}"
            if i == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"


def _check_same_ambient(a: LaurentPolynomial, b: LaurentPolynomial) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatch(a.ambient, b.ambient)


def combine(a: LaurentPolynomial, b: LaurentPolynomial, op: str) -> LaurentPolynomial:
    """Ring operation ``op`` (one of add, sub, mul) on two polynomials of one ambient."""
    _check_same_ambient(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"Unknown ring operation: {op}")


def _shift(poly: LaurentPolynomial, monomial: Monomial) -> LaurentPolynomial:
    return LaurentPolynomial._raw(poly.ambient, {m * monomial: c for m, c in poly.terms.items()})


def _divide_polynomials(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    # Both are genuine polynomials; no variable divides b.
    ambient = a.ambient
    lead_b, lead_coeff = b.leading_term()
    remainder = dict(a.terms)
    quotient: Dict[Monomial, Fraction] = {}
    while remainder:
        lead_r = max(remainder, key=lambda m: m.key(ambient))
        ratio = lead_r * lead_b.inverse()
        if not all(exp > 0 for _, exp in ratio.exponents):
            raise NotDivisible(f"{a} is not divisible by {b}")
        coeff = remainder[lead_r] / lead_coeff
        quotient[ratio] = quotient.get(ratio, 0) + coeff
        for monomial, c in b.terms.items():
            target = monomial * ratio
            total = remainder.get(target, 0) - coeff * c
            if total:
                remainder[target] = total
            else:
                remainder.pop(target, None)
    return LaurentPolynomial._raw(ambient, {m: c for m, c in quotient.items() if c})


def exact_divide(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Return q with q * b == a in the Laurent ring.

    Both operands are cleared to polynomials by their monomial content; the
    divisor is then coprime to every variable, so a Laurent quotient exists
    exactly when the polynomial quotient does. The polynomial quotient is
    found by leading-term elimination in lexicographic order.
    """
    _check_same_ambient(a, b)
    if b.is_zero:
        raise DivideByZero(f"Division of {a} by zero")
    if a.is_zero:
        return LaurentPolynomial.zero(a.ambient)
    if b.is_monomial:
        ((monomial, coeff),) = b.terms.items()
        inverse = monomial.inverse()
        return LaurentPolynomial._raw(a.ambient, {m * inverse: c / coeff for m, c in a.terms.items()})
    content_a = a.min_exponents()
    content_b = b.min_exponents()
    quotient = _divide_polynomials(_shift(a, content_a.inverse()), _shift(b, content_b.inverse()))
    return _shift(quotient, content_a * content_b.inverse())


def specialize(f: LaurentPolynomial, assignment: Mapping[str, Rational]) -> LaurentPolynomial:
    """Substitute rational values for some variables; the others survive."""
    terms: Dict[Monomial, Fraction] = {}
    for monomial, coeff in f.terms.items():
        for var, exp in monomial.exponents:
            if exp < 0 and var in assignment and assignment[var] == 0:
                raise ZeroToNegativePower(f"{var} = 0 but {var} appears with exponent {exp} in {f}")
        value = Fraction(coeff)
        remaining = {}
        for var, exp in monomial.exponents:
            if var not in assignment:
                remaining[var] = exp
                continue
            point = Fraction(assignment[var])
            if point == 0:
                value = Fraction(0)
                break
            value *= point ** exp
        if value == 0:
            continue
        key = Monomial.from_mapping(remaining)
        total = terms.get(key, 0) + value
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return LaurentPolynomial._raw(f.ambient, terms)


def evaluate(f: LaurentPolynomial, point: Mapping[str, Rational]) -> Fraction:
    """Exact value of ``f`` at a point assigning every variable it uses."""
    missing = [var for var in f.variables if var not in point]
    if missing:
        raise ValueError(f"No value given for {missing}")
    return specialize(f, point).constant_value()


def rename(f: LaurentPolynomial, mapping: Mapping[str, str], ambient: Iterable[str]) -> LaurentPolynomial:
    """Move ``f`` into another ambient ring by renaming its variables."""
    ambient = tuple(ambient)
    terms: Dict[Monomial, Fraction] = {}
    for monomial, coeff in f.terms.items():
        moved: Dict[str, int] = {}
        for var, exp in monomial.exponents:
            if var not in mapping:
                raise ValueError(f"No target for variable {var}")
            moved[mapping[var]] = moved.get(mapping[var], 0) + exp
        key = Monomial.from_mapping(moved)
        total = terms.get(key, 0) + coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return LaurentPolynomial(ambient, terms)


def substitute(f: LaurentPolynomial, values: Mapping[str, LaurentPolynomial],
               ambient: Iterable[str]) -> LaurentPolynomial:
    """Apply the ring map x -> values[x] into the Laurent ring over ``ambient``.

    Negative powers are cleared first and divided out exactly at the end, so
    the images of variables with negative exponents need not be monomials.
    """
    ambient = tuple(ambient)
    denominator: Dict[str, int] = {}
    for monomial in f.terms:
        for var, exp in monomial.exponents:
            if exp < 0:
                denominator[var] = max(denominator.get(var, 0), -exp)
    cleared = _shift(f, Monomial.from_mapping(denominator))
    powers: Dict[Tuple[str, int], LaurentPolynomial] = {}

    def power(var: str, exp: int) -> LaurentPolynomial:
        if (var, exp) not in powers:
            if var not in values:
                raise ValueError(f"No image given for variable {var}")
            image = values[var]
            if image.ambient != ambient:
                raise AmbientMismatch(image.ambient, ambient)
            powers[(var, exp)] = image ** exp
        return powers[(var, exp)]

    numerator = LaurentPolynomial.zero(ambient)
    for monomial, coeff in cleared.terms.items():
        term = LaurentPolynomial.constant(ambient, coeff)
        for var, exp in monomial.exponents:
            term = term * power(var, exp)
        numerator = numerator + term
    if not denominator:
        return numerator
    divisor = LaurentPolynomial.one(ambient)
    for var, exp in denominator.items():
        divisor = divisor * power(var, exp)
    return exact_divide(numerator, divisor)


def to_json(f: LaurentPolynomial) -> List[dict]:
    return [
        {
            "coeff_num": coeff.numerator,
            "coeff_den": coeff.denominator,
            "exponents": monomial.as_dict(),
        }
        for monomial, coeff in f.sorted_terms()
    ]


def from_json(records: Iterable[Mapping], ambient: Iterable[str]) -> LaurentPolynomial:
    terms: Dict[Monomial, Fraction] = {}
    for record in records:
        monomial = Monomial.from_mapping(record.get("exponents", {}))
        coeff = Fraction(int(record["coeff_num"]), int(record.get("coeff_den", 1)))
        terms[monomial] = terms.get(monomial, 0) + coeff
    return LaurentPolynomial(ambient, terms)


def to_sympy(f: LaurentPolynomial):
    import sympy

    symbols = {var: sympy.Symbol(var) for var in f.ambient}
    expr = sympy.Integer(0)
    for monomial, coeff in f.terms.items():
        term = sympy.Rational(coeff.numerator, coeff.denominator)
        for var, exp in monomial.exponents:
            term *= symbols[var] ** exp
        expr += term
    return expr


def parse(text: str, ambient: Iterable[str]) -> LaurentPolynomial:
    """Read a Laurent polynomial such as ``"(x1 + x2)/x1 - 3/2*x3^-1"``.

    The denominator after bringing the expression over a common denominator
    must be a monomial.
    """
    import sympy
    from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

    ambient = tuple(ambient)
    symbols = {var: sympy.Symbol(var) for var in ambient}
    try:
        expr = parse_expr(text, local_dict=symbols, transformations=standard_transformations + (convert_xor,))
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise ValueError(f"Could not parse polynomial {text!r}") from e
    unknown = {str(s) for s in expr.free_symbols} - set(ambient)
    if unknown:
        raise ValueError(f"Polynomial {text!r} uses variables outside {list(ambient)}: {sorted(unknown)}")
    numerator, denominator = sympy.fraction(sympy.together(expr))
    gens = [symbols[var] for var in ambient]

    def convert(expr_part) -> LaurentPolynomial:
        poly = sympy.Poly(sympy.expand(expr_part), *gens) if gens else None
        if poly is None:
            value = sympy.Rational(expr_part)
            return LaurentPolynomial.constant(ambient, Fraction(int(value.p), int(value.q)))
        terms = {}
        for exps, coeff in poly.terms():
            coeff = sympy.Rational(coeff)
            terms[Monomial.from_mapping(dict(zip(ambient, exps)))] = Fraction(int(coeff.p), int(coeff.q))
        return LaurentPolynomial(ambient, terms)

    top = convert(numerator)
    bottom = convert(denominator)
    if not bottom.is_monomial:
        raise ValueError(f"{text!r} is not a Laurent polynomial (denominator {denominator})")
    return exact_divide(top, bottom)
