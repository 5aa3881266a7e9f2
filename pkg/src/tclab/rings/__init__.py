"""
Graded rings ``R = F_p[x_1..x_m]/(f_1..f_r)`` and exact coordinates for their pieces.

A ``RingPresentation`` is the immutable description (field, weighted variables,
homogeneous relations, declared or estimated dimension). A ``GradedRing`` is the
engine built around it: it fixes a normal-monomial basis of every piece ``R_n``,
computes normal forms and builds the matrices of multiplication and Frobenius
maps between pieces. Everything above this module works in these coordinates.
"""

from __future__ import annotations

import math
import sys
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sortedcontainers import SortedDict

from tclab.bounds import DIM_TRIALS, Window
from tclab.errors import InconclusiveError, InputError
from tclab.gfp import MatrixGFp, PrimeField, Subspace, kernel
from tclab.polynomials import (
    Monomial,
    Polynomial,
    PolynomialRing,
    monomial_product,
    monomial_quotient,
    term_order_key,
)
from tclab.rings.groebner import Reducer, groebner_reducers
from tclab.verdicts import Verdict

USER_DECLARED = "user-declared"
GENERICALLY_ESTIMATED = "generically-estimated"


@dataclass(frozen=True)
class RingPresentation:
    poly_ring: PolynomialRing
    relations: tuple[Polynomial, ...] = ()
    dim: int | None = None
    dim_provenance: str | None = None
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for f in self.relations:
            if f.ring != self.poly_ring:
                raise InputError(
                    f"Relation {f} lives in {f.ring}, not {self.poly_ring}."
                )
            degree = f.require_homogeneous("relation")
            if degree == 0:
                raise InputError(f"Relation {f} is a unit; R would be the zero ring.")
        if self.dim is not None:
            if self.dim < 0 or self.dim > self.poly_ring.nvars:
                raise InputError(
                    f"Dimension {self.dim} is impossible for {self.poly_ring.nvars} "
                    "variables."
                )
            if self.dim_provenance is None:
                object.__setattr__(self, "dim_provenance", USER_DECLARED)

    @property
    def field(self) -> PrimeField:
        return self.poly_ring.field

    @property
    def p(self) -> int:
        return self.poly_ring.p

    def describe(self) -> str:
        if self.name:
            return self.name
        relations = ", ".join(map(str, self.relations))
        return f"{self.poly_ring}/({relations})" if relations else repr(self.poly_ring)


class DegreeBasis:
    """
    Coordinates on ``R_n``: the normal monomials of degree n, graded-lex largest
    first. The relation subspace of the ambient piece is available on demand; its
    non-pivot columns are the same normal monomials.
    """

    def __init__(
        self, ring: GradedRing, degree: int, monomials: tuple[Monomial, ...]
    ):
        self.ring = ring
        self.degree = degree
        self.normal_monomials = monomials
        self.index = {m: i for i, m in enumerate(monomials)}

    @property
    def dim(self) -> int:
        return len(self.normal_monomials)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"DegreeBasis(degree={self.degree}, dim={self.dim})"

    @cached_property
    def ambient_monomials(self) -> tuple[Monomial, ...]:
        return self.ring.poly_ring.monomials_of_degree(self.degree)

    @cached_property
    def relation_subspace(self) -> Subspace:
        """Row-reduced span of ``{m·f_j}`` in ambient coordinates of degree n."""
        columns = {m: i for i, m in enumerate(self.ambient_monomials)}
        rows = []
        for f in self.ring.presentation.relations:
            shift = self.degree - f.degree
            for m in self.ring.poly_ring.monomials_of_degree(shift):
                row = np.zeros(len(columns), dtype=np.int64)
                for t, c in f.items():
                    row[columns[monomial_product(m, t)]] = c
                rows.append(row)
        if not rows:
            return Subspace.zero(self.ring.field, len(columns))
        return Subspace.spanned_by(self.ring.field, len(columns), np.array(rows))

    @cached_property
    def eliminated_monomials(self) -> tuple[Monomial, ...]:
        """Ambient monomials at the non-pivot columns of the relation subspace."""
        pivots = set(self.relation_subspace.pivots)
        return tuple(
            m for i, m in enumerate(self.ambient_monomials) if i not in pivots
        )

    def normal_coordinates(self, f: Polynomial) -> np.ndarray:
        if not f.is_zero and f.degree != self.degree:
            raise InputError(f"{f} is not homogeneous of degree {self.degree}.")
        return self.coordinates_of(self.ring.normal_form_terms(f.as_dict()))

    def coordinates_of(self, terms: dict[Monomial, int]) -> np.ndarray:
        vector = np.zeros(self.dim, dtype=np.int64)
        for m, c in terms.items():
            vector[self.index[m]] = c
        return vector

    def element(self, vector) -> Polynomial:
        return Polynomial(
            self.ring.poly_ring,
            {m: int(c) for m, c in zip(self.normal_monomials, vector) if c},
        )


class GradedRing:
    """
    Normal-form engine for a ``RingPresentation``.

    Normal monomials are the standard monomials of a reduced graded-lex Gröbner
    basis. Degree bases and monomial normal forms are cached with insert-if-absent
    semantics, so one ring may be shared by worker threads.
    """

    def __init__(self, presentation: RingPresentation, verbose: bool = False):
        self.presentation = presentation
        self.poly_ring = presentation.poly_ring
        self.field = presentation.field
        self.p = presentation.p
        self.verbose = verbose

        self.reducers: list[Reducer] = groebner_reducers(
            presentation.relations, self.poly_ring
        )
        self._standard: dict[int, tuple[Monomial, ...]] = {
            0: (self.poly_ring.one_monomial,)
        }
        self._bases: dict[int, DegreeBasis] = {}
        self._normal_forms: dict[Monomial, dict[Monomial, int]] = {}
        self._dimension: tuple[int, str] | None = None
        if presentation.dim is not None:
            self._dimension = (presentation.dim, presentation.dim_provenance)

        if verbose:
            print(
                f"Ring {presentation.describe()}: Gröbner basis with "
                f"{len(self.reducers)} elements.",
                file=sys.stderr,
            )

    # -- description ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"GradedRing({self.presentation.describe()})"

    @property
    def names(self) -> tuple[str, ...]:
        return self.poly_ring.names

    @property
    def weights(self) -> tuple[int, ...]:
        return self.poly_ring.weights

    @property
    def standard_graded(self) -> bool:
        return self.poly_ring.standard_graded

    @property
    def generic_degree(self) -> int:
        """Degree in which every variable has a power: lcm of the weights."""
        return math.lcm(*self.weights)

    @property
    def dimension(self) -> tuple[int, str]:
        """Krull dimension with provenance, estimated on first use if undeclared."""
        if self._dimension is None:
            self._dimension = dim_estimate(self, DIM_TRIALS, 0)
        return self._dimension

    @property
    def dim(self) -> int:
        return self.dimension[0]

    # -- normal monomials -------------------------------------------------------
    def divisor(self, monomial: Monomial) -> Reducer | None:
        for reducer in self.reducers:
            if monomial_quotient(monomial, reducer.lead) is not None:
                return reducer
        return None

    def is_normal(self, monomial: Monomial) -> bool:
        return self.divisor(monomial) is None

    def standard_monomials(self, n: int) -> tuple[Monomial, ...]:
        """
        Normal monomials of degree n, graded-lex largest first. Divisors of normal
        monomials are normal, so degree n is grown from lower degrees.
        """
        if n < 0:
            return ()
        if not self.reducers:
            return self.poly_ring.monomials_of_degree(n)
        if n in self._standard:
            return self._standard[n]

        start = max(k for k in self._standard if k < n) + 1
        for k in range(start, n + 1):
            found = set()
            for j, w in enumerate(self.weights):
                if k - w < 0:
                    continue
                for s in self._standard[k - w]:
                    m = s[:j] + (s[j] + 1,) + s[j + 1 :]
                    if self.is_normal(m):
                        found.add(m)
            self._standard.setdefault(k, tuple(sorted(found, key=term_order_key)))
        return self._standard[n]

    def degree_basis(self, n: int) -> DegreeBasis:
        if n not in self._bases:
            basis = DegreeBasis(self, n, self.standard_monomials(n))
            self._bases.setdefault(n, basis)
        return self._bases[n]

    def hilbert(self, degrees: Iterable[int]) -> list[tuple[int, int]]:
        return [(n, self.degree_basis(n).dim) for n in degrees]

    # -- normal forms -----------------------------------------------------------
    def normal_form_terms(self, terms: dict[Monomial, int]) -> dict[Monomial, int]:
        """
        Normal form of ``Σ c·m`` as a term dictionary.

        The worklist is processed graded-lex largest first, so every monomial is
        reduced once no matter how many branches produce it.
        """
        p = self.p
        work = SortedDict(term_order_key, {m: c % p for m, c in terms.items()})
        result: dict[Monomial, int] = {}
        while work:
            m, c = work.popitem(0)
            if not c:
                continue
            known = self._normal_forms.get(m)
            if known is not None:
                for t, v in known.items():
                    result[t] = (result.get(t, 0) + c * v) % p
                continue
            reducer = self.divisor(m)
            if reducer is None:
                result[m] = (result.get(m, 0) + c) % p
                continue
            u = monomial_quotient(m, reducer.lead)
            for t, v in reducer.tail:
                child = monomial_product(u, t)
                work[child] = (work.get(child, 0) + c * v) % p
        return {m: c for m, c in result.items() if c}

    def normal_form_monomial(self, monomial: Monomial) -> dict[Monomial, int]:
        known = self._normal_forms.get(monomial)
        if known is None:
            known = self.normal_form_terms({monomial: 1})
            self._normal_forms.setdefault(monomial, known)
        return known

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.poly_ring:
            raise InputError(f"{f} does not belong to {self}.")
        return Polynomial(self.poly_ring, self.normal_form_terms(f.as_dict()))

    def is_zero(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero

    def multiply(self, *factors: Polynomial) -> Polynomial:
        result = self.poly_ring.one()
        for f in factors:
            result = self.reduce(result * f)
        return result

    def power(self, f: Polynomial, exponent: int) -> Polynomial:
        result, base = self.poly_ring.one(), self.reduce(f)
        while exponent:
            if exponent & 1:
                result = self.reduce(result * base)
            exponent >>= 1
            if exponent:
                base = self.reduce(base * base)
        return result

    def parse(self, text: str) -> Polynomial:
        return self.reduce(self.poly_ring.parse(text))

    def parse_list(self, text: str) -> list[Polynomial]:
        return [self.reduce(f) for f in self.poly_ring.parse_list(text)]

    # -- coordinates ------------------------------------------------------------
    def coordinates(self, f: Polynomial, n: int | None = None) -> np.ndarray:
        if n is None:
            n = f.require_homogeneous()
        return self.degree_basis(n).normal_coordinates(f)

    def element(self, vector, n: int) -> Polynomial:
        return self.degree_basis(n).element(vector)

    def elements(self, rows: MatrixGFp, n: int) -> list[Polynomial]:
        return [self.element(row, n) for row in rows]

    def piece(self, rows: MatrixGFp, n: int) -> Subspace:
        return Subspace.spanned_by(self.field, self.degree_basis(n).dim, rows)

    def _rows(self, sources: Sequence[Monomial], terms_of, degree: int) -> np.ndarray:
        target = self.degree_basis(degree)
        rows = np.zeros((len(sources), target.dim), dtype=np.int64)
        p = self.p
        for r, s in enumerate(sources):
            row = rows[r]
            for t, c in terms_of(s):
                for m, v in self.normal_form_monomial(t).items():
                    col = target.index[m]
                    row[col] = (row[col] + c * v) % p
        return rows

    def multiplication_rows(self, f: Polynomial, n: int) -> np.ndarray:
        """
        Matrix of ``v ↦ v·f`` from ``R_n`` to ``R_{n + deg f}``, one row per normal
        monomial of degree n.
        """
        degree = n + f.require_homogeneous("multiplier")
        terms = list(f.items())
        return self._rows(
            self.standard_monomials(n),
            lambda s: ((monomial_product(s, t), c) for t, c in terms),
            degree,
        )

    def frobenius_rows(self, c: Polynomial, n: int, q: int) -> np.ndarray:
        """
        Matrix of ``v ↦ c·v^q`` from ``R_n`` to ``R_{qn + deg c}``.

        In characteristic p the q-th power of ``Σ a_s·s`` is ``Σ a_s·s^q``, so the
        map is linear and its rows are the images of the basis monomials.
        """
        degree = q * n + c.require_homogeneous("test element")
        terms = list(c.items())
        return self._rows(
            self.standard_monomials(n),
            lambda s: (
                (monomial_product(tuple(q * a for a in s), t), v) for t, v in terms
            ),
            degree,
        )

    def multiples(self, generators: Sequence[Polynomial], n: int) -> Subspace:
        """``[(g_1..g_k)]_n``: span of every ``s·g``, s normal of degree n - deg g."""
        blocks = []
        for g in generators:
            if g.is_zero:
                continue
            shift = n - g.require_homogeneous("generator")
            if shift >= 0 and self.degree_basis(shift).dim:
                blocks.append(self.multiplication_rows(g, shift))
        dim = self.degree_basis(n).dim
        if not blocks:
            return Subspace.zero(self.field, dim)
        return Subspace.spanned_by(self.field, dim, np.vstack(blocks))

    def quotient_dim(self, generators: Sequence[Polynomial], n: int) -> int:
        return self.degree_basis(n).dim - self.multiples(generators, n).dim


def as_graded_ring(ring: GradedRing | RingPresentation) -> GradedRing:
    return ring if isinstance(ring, GradedRing) else GradedRing(ring)


def degree_basis(ring: GradedRing, n: int) -> DegreeBasis:
    return ring.degree_basis(n)


def hilbert(ring: GradedRing, window: Window | Iterable[int]) -> list[tuple[int, int]]:
    degrees = window.degrees() if isinstance(window, Window) else window
    return ring.hilbert(degrees)


def window_top(window: Window | int | None) -> int:
    if window is None:
        return Window().n_hi
    return window.n_hi if isinstance(window, Window) else int(window)


def artinian_window_check(
    ring: GradedRing,
    generators: Sequence[Polynomial],
    window: Window | int | None = None,
    claim: str | None = None,
) -> Verdict:
    """
    Does ``R/(generators)`` vanish in the trailing degrees ``[max(n_hi - w, 1), n_hi]``,
    w the largest weight? In a standard graded ring one zero degree forces every
    higher degree to vanish, which certifies finite length.
    """
    n_hi = window_top(window)
    if n_hi < 1:
        raise InputError(f"Window top {n_hi} leaves no degree to test.")
    generators = [g for g in generators if not g.is_zero]
    claim = claim or (
        f"R/({', '.join(map(str, generators))}) has finite length"
        if generators
        else "R has finite length"
    )
    degrees = range(max(n_hi - max(ring.weights), 1), n_hi + 1)
    dims = {n: ring.quotient_dim(generators, n) for n in degrees}

    zeros = [n for n in degrees if dims[n] == 0]
    if ring.standard_graded and zeros:
        return Verdict.certified_true(claim, witness={"vanishing_degree": zeros[0]})
    if not ring.standard_graded and len(zeros) == len(dims):
        return Verdict.evidence_true(claim, bound={"n_hi": n_hi})
    first = next(n for n in degrees if dims[n])
    return Verdict.evidence_false(
        claim, bound={"n_hi": n_hi}, witness={"degree": first, "dim": dims[first]}
    )


def random_element(
    ring: GradedRing, degree: int, rng: np.random.Generator
) -> Polynomial:
    basis = ring.degree_basis(degree)
    return basis.element(rng.integers(0, ring.p, size=basis.dim))


def dim_estimate(
    ring: GradedRing,
    trials: int = DIM_TRIALS,
    rng_seed: int = 0,
    window: Window | int | None = None,
) -> tuple[int, str]:
    """
    Smallest k such that k random forms of degree lcm(weights) cut R down to finite
    length, maximised over trials. Probabilistic for small p.
    """
    if trials < 1:
        raise InputError("dim_estimate needs at least one trial.")
    rng = np.random.default_rng(rng_seed)
    degree = ring.generic_degree
    estimate = -1
    for trial in range(trials):
        forms: list[Polynomial] = []
        for k in range(ring.poly_ring.nvars + 1):
            if k:
                forms.append(random_element(ring, degree, rng))
            if artinian_window_check(ring, forms, window).holds:
                estimate = max(estimate, k)
                break
        else:
            verdict = Verdict.inconclusive(
                "dimension estimate",
                witness={"trial": trial, "seed": rng_seed},
            )
            raise InconclusiveError(
                f"No {ring.poly_ring.nvars} random forms of degree {degree} made "
                f"{ring} artinian.",
                verdict,
            )
    if ring.verbose:
        print(f"Estimated dim {ring} = {estimate}.", file=sys.stderr)
    return estimate, GENERICALLY_ESTIMATED


def is_nonzerodivisor_evidence(
    ring: GradedRing, x: Polynomial, window: Window | int | None = None
) -> Verdict:
    """Multiplication by x is injective on ``R_n`` for ``0 <= n <= n_hi``."""
    n_hi = window_top(window)
    x = ring.reduce(x)
    claim = f"{x} is a nonzerodivisor"
    if x.is_zero:
        return Verdict.certified_false(claim, witness={"degree": 0, "element": "1"})
    for n in range(max(n_hi, 0) + 1):
        rows = ring.multiplication_rows(x, n)
        if not rows.shape[0]:
            continue
        image = ring.piece(rows, n + x.degree)
        if image.dim < rows.shape[0]:
            killed = kernel(ring.field, rows, rows.shape[1]).basis[0]
            return Verdict.certified_false(
                claim, witness={"degree": n, "element": str(ring.element(killed, n))}
            )
    return Verdict.evidence_true(claim, bound={"n_hi": n_hi})


def section(
    ring: GradedRing | RingPresentation,
    x: Polynomial,
    dim: int | None = None,
    window: Window | int | None = None,
) -> RingPresentation:
    """
    ``R/xR`` as a presentation. The dimension drops by one when x passes the
    nonzerodivisor check, is re-estimated otherwise, and ``dim`` overrides both.
    """
    ring = as_graded_ring(ring)
    x = ring.reduce(x)
    if x.is_zero:
        raise InputError("Cannot take a section by an element that is zero in R.")
    if x.require_homogeneous("section element") == 0:
        raise InputError(f"Sectioning by the unit {x} gives the zero ring.")

    parent = ring.presentation
    name = f"{parent.describe()}/({x})"
    relations = (*parent.relations, x)
    if dim is not None:
        return RingPresentation(parent.poly_ring, relations, dim, USER_DECLARED, name)

    parent_dim, provenance = ring.dimension
    if is_nonzerodivisor_evidence(ring, x, window).holds:
        return RingPresentation(
            parent.poly_ring, relations, max(parent_dim - 1, 0), provenance, name
        )
    estimate, provenance = GradedRing(
        RingPresentation(parent.poly_ring, relations, name=name)
    ).dimension
    return RingPresentation(parent.poly_ring, relations, estimate, provenance, name)


def generic_combination(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    rng_seed: int | np.random.Generator = 0,
    attempts: int = 64,
) -> Polynomial:
    """``Σ α_i·e_i`` with α_i uniform in F_p, redrawn until nonzero."""
    elements = [ring.reduce(e) for e in elements]
    degrees = {e.degree for e in elements if not e.is_zero}
    if len(degrees) > 1:
        raise InputError(
            "Cannot combine elements of degrees "
            f"{', '.join(map(str, sorted(degrees)))}."
        )
    if not degrees:
        raise InputError("Every element to combine is zero.")

    rng = (
        rng_seed
        if isinstance(rng_seed, np.random.Generator)
        else np.random.default_rng(rng_seed)
    )
    for _ in range(attempts):
        alphas = rng.integers(0, ring.p, size=len(elements))
        combination = ring.poly_ring.zero()
        for alpha, e in zip(alphas, elements):
            combination = combination + e * int(alpha)
        if not combination.is_zero:
            return combination
    raise InputError(f"No nonzero combination found in {attempts} draws.")


__all__ = [
    "DegreeBasis",
    "GradedRing",
    "RingPresentation",
    "artinian_window_check",
    "as_graded_ring",
    "degree_basis",
    "dim_estimate",
    "generic_combination",
    "hilbert",
    "is_nonzerodivisor_evidence",
    "random_element",
    "section",
]
