from __future__ import annotations

import re
import sys
from collections.abc import Iterable, Iterator, Mapping, Sequence

from sortedcontainers import SortedDict

from tclab.errors import InputError
from tclab.gfp import PrimeField

if sys.version_info >= (3, 10):
    from typing import TypeAlias

    # Exponent vector, one entry per variable.
    Monomial: TypeAlias = tuple[int, ...]
else:
    Monomial = tuple

variable_name = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def term_order_key(monomial: Monomial) -> tuple:
    """
    Sort key putting the graded-lex largest monomial first.

    The degree compared is the unweighted total degree, the order sympy's
    ``grlex`` uses for the relation ideal. Terms of a weighted-homogeneous
    polynomial share their weighted degree, so on a weighted ring this still
    orders by exponent sum first.
    """
    return (-sum(monomial), tuple(-e for e in monomial))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial | None:
    """``a / b`` when ``b`` divides ``a``, otherwise None."""
    quotient = tuple(x - y for x, y in zip(a, b))
    return quotient if min(quotient, default=0) >= 0 else None


class PolynomialRing:
    """
    The ambient ring F_p[x_1..x_m] with positive integer weights.

    Carries everything polynomials need to know about their variables: names for
    parsing and printing, weights for degrees and the coefficient field.
    """

    def __init__(
        self,
        names: Sequence[str],
        field: PrimeField,
        weights: Sequence[int] | None = None,
    ):
        names = tuple(names)
        weights = tuple(weights) if weights is not None else (1,) * len(names)

        if not names:
            raise InputError("A ring needs at least one variable.")
        if len(weights) != len(names):
            raise InputError(f"Got {len(weights)} weights for {len(names)} variables.")
        for name in names:
            if not variable_name.fullmatch(name):
                raise InputError(f"Invalid variable name {name!r}.")
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise InputError(f"Duplicate variable(s): {', '.join(duplicates)}.")
        if any(not isinstance(w, int) or w < 1 for w in weights):
            raise InputError(f"Variable weights must be positive integers: {weights}.")

        self.names = names
        self.weights = weights
        self.field = field
        self.index = {name: i for i, name in enumerate(names)}
        self._monomials: dict[int, tuple[Monomial, ...]] = {}

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self) -> int:
        return hash((self.names, self.weights, self.field))

    def __repr__(self) -> str:
        variables = ", ".join(
            name if w == 1 else f"{name}:{w}"
            for name, w in zip(self.names, self.weights)
        )
        return f"F_{self.p}[{variables}]"

    def weighted_degree(self, monomial: Monomial) -> int:
        return sum(e * w for e, w in zip(monomial, self.weights))

    def monomials_of_degree(self, n: int) -> tuple[Monomial, ...]:
        """All monomials of weighted degree ``n``, graded-lex largest first."""
        if n < 0:
            return ()
        if n not in self._monomials:
            found = list(self._compositions(n, 0))
            found.sort(key=term_order_key)
            self._monomials.setdefault(n, tuple(found))
        return self._monomials[n]

    def _compositions(self, n: int, start: int) -> Iterator[Monomial]:
        if start == self.nvars - 1:
            if n % self.weights[start] == 0:
                yield (n // self.weights[start],)
            return
        for e in range(n // self.weights[start] + 1):
            for rest in self._compositions(n - e * self.weights[start], start + 1):
                yield (e, *rest)

    def unit(self, i: int) -> Monomial:
        return tuple(int(j == i) for j in range(self.nvars))

    @property
    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def constant(self, value: int) -> Polynomial:
        return Polynomial(self, {self.one_monomial: value})

    def one(self) -> Polynomial:
        return self.constant(1)

    def monomial(self, exponents: Monomial, coefficient: int = 1) -> Polynomial:
        return Polynomial(self, {tuple(exponents): coefficient})

    def variable(self, name: str | int) -> Polynomial:
        i = name if isinstance(name, int) else self.index[name]
        return self.monomial(self.unit(i))

    def variables(self) -> list[Polynomial]:
        return [self.variable(i) for i in range(self.nvars)]

    def parse(self, text: str) -> Polynomial:
        from tclab.polynomials.parser import parse

        return parse(text, self)

    def parse_list(self, text: str) -> list[Polynomial]:
        """Parse ``"f1; f2; ..."``; blank entries are skipped."""
        return [self.parse(part) for part in text.split(";") if part.strip()]


class Polynomial:
    """
    An immutable sparse polynomial over F_p.

    Terms are stored in a SortedDict keyed in graded-lex order, so iteration,
    printing and hashing are canonical. No zero coefficient is ever stored.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, int]):
        p = ring.p
        self.ring = ring
        self._terms = SortedDict(
            term_order_key,
            {tuple(m): c % p for m, c in terms.items() if c % p},
        )
        self._hash = None

    # -- inspection -------------------------------------------------------------
    def items(self) -> Iterable[tuple[Monomial, int]]:
        return self._terms.items()

    def monomials(self) -> list[Monomial]:
        return list(self._terms.keys())

    def coefficient(self, monomial: Monomial) -> int:
        return self._terms.get(tuple(monomial), 0)

    def as_dict(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    @property
    def leading_monomial(self) -> Monomial | None:
        return self._terms.keys()[0] if self._terms else None

    @property
    def leading_coefficient(self) -> int:
        return self._terms.values()[0] if self._terms else 0

    def degrees(self) -> set[int]:
        return {self.ring.weighted_degree(m) for m in self._terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int | None:
        """Weighted degree when homogeneous and nonzero, otherwise None."""
        degrees = self.degrees()
        return degrees.pop() if len(degrees) == 1 else None

    def require_homogeneous(self, what: str = "element") -> int:
        degrees = self.degrees()
        if not degrees:
            raise InputError(f"The {what} is zero.")
        if len(degrees) > 1:
            raise InputError(
                f"The {what} {self} is not homogeneous: it mixes degrees "
                f"{', '.join(map(str, sorted(degrees)))}."
            )
        return degrees.pop()

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: Polynomial):
        if other.ring != self.ring:
            raise InputError(
                f"Cannot combine elements of {self.ring} and {other.ring}."
            )

    def __add__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            other = self.ring.constant(other)
        self._check(other)
        terms = dict(self._terms)
        for m, c in other.items():
            terms[m] = terms.get(m, 0) + c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {m: -c for m, c in self.items()})

    def __sub__(self, other: Polynomial | int) -> Polynomial:
        return self + (-other)

    def __rsub__(self, other: int) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Polynomial | int) -> Polynomial:
        if isinstance(other, int):
            return Polynomial(self.ring, {m: c * other for m, c in self.items()})
        self._check(other)
        terms: dict[Monomial, int] = {}
        p = self.ring.p
        for m1, c1 in self.items():
            for m2, c2 in other.items():
                m = monomial_product(m1, m2)
                terms[m] = (terms.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise InputError("Negative powers are not polynomials.")
        result, base = self.ring.one(), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def shift(self, monomial: Monomial, coefficient: int = 1) -> Polynomial:
        """Multiply by the term ``coefficient * monomial``."""
        return Polynomial(
            self.ring,
            {monomial_product(m, monomial): c * coefficient for m, c in self.items()},
        )

    def frobenius_pow(self, e: int) -> Polynomial:
        """
        ``f^(p^e)``: in characteristic p the p-th power of a sum is the sum of the
        p-th powers, and Fermat fixes every coefficient.
        """
        if e < 0:
            raise InputError("Frobenius exponent must be nonnegative.")
        q = self.ring.p**e
        return Polynomial(
            self.ring, {tuple(q * a for a in m): c for m, c in self.items()}
        )

    def partial_derivative(self, var: int | str) -> Polynomial:
        i = var if isinstance(var, int) else self.ring.index[var]
        if not 0 <= i < self.ring.nvars:
            raise InputError(f"No variable with index {i} in {self.ring}.")
        terms = {}
        for m, c in self.items():
            if m[i]:
                lowered = m[:i] + (m[i] - 1,) + m[i + 1 :]
                terms[lowered] = c * m[i]
        return Polynomial(self.ring, terms)

    # -- identity ---------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and list(self.items()) == list(other.items())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.items())))
        return self._hash

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def format_monomial(ring: PolynomialRing, monomial: Monomial) -> str:
    factors = []
    for name, e in zip(ring.names, monomial):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero:
        return "0"
    terms = []
    for m, c in f.items():
        body = format_monomial(f.ring, m)
        if not body:
            terms.append(str(c))
        elif c == 1:
            terms.append(body)
        else:
            terms.append(f"{c}*{body}")
    return " + ".join(terms)


def parse(text: str, ring: PolynomialRing) -> Polynomial:
    return ring.parse(text)


def frobenius_pow(f: Polynomial, e: int) -> Polynomial:
    return f.frobenius_pow(e)


def partial_derivative(f: Polynomial, var_index: int) -> Polynomial:
    return f.partial_derivative(var_index)


def determinant(matrix: Sequence[Sequence[Polynomial]], ring: PolynomialRing):
    """Laplace expansion along the first row; meant for the small Jacobian minors."""
    size = len(matrix)
    if size == 0:
        return ring.one()
    if size == 1:
        return matrix[0][0]
    total = ring.zero()
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * determinant(minor, ring)
        total = total - term if j % 2 else total + term
    return total


def random_polynomial(ring: PolynomialRing, degree: int, rng) -> Polynomial:
    """Uniformly random homogeneous ambient polynomial of the given degree."""
    monomials = ring.monomials_of_degree(degree)
    coefficients = rng.integers(0, ring.p, size=len(monomials))
    return Polynomial(ring, dict(zip(monomials, (int(c) for c in coefficients))))


__all__ = [
    "Monomial",
    "Polynomial",
    "PolynomialRing",
    "determinant",
    "frobenius_pow",
    "monomial_product",
    "monomial_quotient",
    "parse",
    "partial_derivative",
    "random_polynomial",
    "term_order_key",
]
