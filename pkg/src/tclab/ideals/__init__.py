"""
Ideals of a graded ring, handled one degree piece at a time.

Ideals are never given generator lists for their colons or closures; every
operation returns the piece it was asked for as a ``Subspace`` of ``R_n``.
"""

from __future__ import annotations

import sys
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from tclab.bounds import DEFAULT_SEED, SOP_ATTEMPTS, Window
from tclab.errors import InconclusiveError, InputError
from tclab.gfp import Subspace, preimage
from tclab.polynomials import Polynomial
from tclab.rings import (
    GENERICALLY_ESTIMATED,
    GradedRing,
    artinian_window_check,
    random_element,
    window_top,
)
from tclab.verdicts import Status, Verdict


POWER_STABLE = ("sop", "usd", "standard")


def _label(generators: Iterable[Polynomial]) -> str:
    return "(" + ", ".join(map(str, generators)) + ")"


@dataclass(frozen=True)
class IdealHandle:
    ring: GradedRing = field(repr=False, compare=False)
    generators: tuple[Polynomial, ...]
    label: str

    @classmethod
    def generated_by(
        cls,
        ring: GradedRing,
        generators: Iterable[Polynomial],
        label: str | None = None,
    ) -> IdealHandle:
        reduced = []
        for g in generators:
            g = ring.reduce(g)
            if g.is_zero:
                continue
            g.require_homogeneous("ideal generator")
            reduced.append(g)
        if label is None:
            label = _label(reduced) if reduced else "(0)"
        return cls(ring, tuple(reduced), label)

    @classmethod
    def parse(cls, ring: GradedRing, text: str, label: str | None = None):
        return cls.generated_by(ring, ring.poly_ring.parse_list(text), label)

    @classmethod
    def zero(cls, ring: GradedRing) -> IdealHandle:
        return cls(ring, (), "(0)")

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __add__(self, other: IdealHandle) -> IdealHandle:
        return IdealHandle.generated_by(
            self.ring, (*self.generators, *other.generators), None
        )

    def __str__(self) -> str:
        return self.label


def ideal_piece(ideal: IdealHandle, n: int) -> Subspace:
    return ideal.ring.multiples(ideal.generators, n)


def colon_piece(ideal: IdealHandle, f: Polynomial, n: int) -> Subspace:
    """``[I : f]_n = {v ∈ R_n : v·f ∈ I}``, one linear solve."""
    ring = ideal.ring
    f = ring.reduce(f)
    source = ring.degree_basis(n).dim
    if f.is_zero:
        return Subspace.full(ring.field, source)
    degree = f.require_homogeneous("colon element")
    if not source:
        return Subspace.zero(ring.field, 0)
    rows = ring.multiplication_rows(f, n)
    return preimage(ring.field, rows, ideal_piece(ideal, n + degree))


def frobenius_power_ideal(ideal: IdealHandle, e: int) -> IdealHandle:
    """``I^[q]``, q = p^e: generators raised to their q-th powers."""
    if e < 0:
        raise InputError("Frobenius exponent must be nonnegative.")
    if e == 0:
        return ideal
    q = ideal.ring.p**e
    return IdealHandle.generated_by(
        ideal.ring,
        (g.frobenius_pow(e) for g in ideal.generators),
        f"{ideal.label}^[{q}]",
    )


def quotient_hilbert(
    ideal: IdealHandle, degrees: Iterable[int]
) -> list[tuple[int, int]]:
    ring = ideal.ring
    return [
        (n, ring.degree_basis(n).dim - ideal_piece(ideal, n).dim) for n in degrees
    ]


@dataclass(frozen=True)
class SopData:
    """
    A homogeneous sequence x_1..x_d with the evidence gathered about it.

    ``flags`` maps a property name (``sop``, ``usd``, ``standard``) to the verdict
    that established it, bound included. ``exponent`` records the power N this
    sequence was raised to.
    """

    ring: GradedRing = field(repr=False, compare=False)
    elements: tuple[Polynomial, ...]
    flags: Mapping[str, Verdict] = field(default_factory=dict, compare=False)
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for x in self.elements:
            if x.require_homogeneous("sequence element") < 1:
                raise InputError(f"Sequence element {x} must have positive degree.")

    @classmethod
    def parse(cls, ring: GradedRing, text: str) -> SopData:
        return cls(ring, tuple(ring.parse_list(text)))

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(x.degree for x in self.elements)

    def delta(self, i: int) -> int:
        """δ_i, the sum of the first i degrees."""
        return sum(self.degrees[:i])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def ideal(self, i: int | None = None, skip: int | None = None) -> IdealHandle:
        """``(x_1..x_i)``, optionally with ``x_skip`` left out (0-based)."""
        i = len(self) if i is None else i
        chosen = [x for j, x in enumerate(self.elements[:i]) if j != skip]
        return IdealHandle.generated_by(self.ring, chosen)

    def product(self, i: int | None = None) -> Polynomial:
        i = len(self) if i is None else i
        return self.ring.multiply(*self.elements[:i])

    def power(self, n: int) -> SopData:
        """
        x_1^n..x_d^n. Being a sop and being unconditioned strong d are kept under
        powers; d-sequence evidence is dropped.
        """
        if n < 1:
            raise InputError("Sequence powers must be positive.")
        if n == 1:
            return self
        flags = {k: v for k, v in self.flags.items() if k in POWER_STABLE}
        return SopData(
            self.ring,
            tuple(self.ring.power(x, n) for x in self.elements),
            flags,
            self.exponent * n,
        )

    def with_flag(self, name: str, verdict: Verdict) -> SopData:
        return SopData(
            self.ring, self.elements, {**self.flags, name: verdict}, self.exponent
        )

    def has_evidence(self, name: str) -> bool:
        flag = self.flags.get(name)
        return flag is not None and flag.holds

    @property
    def label(self) -> str:
        return ", ".join(map(str, self.elements))

    def __str__(self) -> str:
        return f"({self.label})"


def _is_nilpotent(ring: GradedRing, x: Polynomial, top: int = 3) -> int | None:
    """Smallest power 2^j, j <= top, with x^(2^j) = 0."""
    power = x
    for j in range(1, top + 1):
        power = ring.multiply(power, power)
        if power.is_zero:
            return 2**j
    return None


def non_parameter_witness(
    ring: GradedRing, elements: Sequence[Polynomial]
) -> dict | None:
    """A zero or nilpotent element, which is never a parameter when dim R >= 1."""
    for x in elements:
        if x.is_zero:
            return {"zero": "0"}
        if (k := _is_nilpotent(ring, x)) is not None:
            return {"nilpotent": str(x), "power": k}
    return None


def sop_check(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    window: Window | int | None = None,
    rng_seed: int = DEFAULT_SEED,
) -> Verdict:
    """
    Is x_1..x_i part of a system of parameters?

    The sequence is completed by d - i random forms of degree lcm(weights) and the
    quotient is tested for finite length. A random completion can only give
    evidence; the full-length case inherits the finite-length verdict. A zero or
    nilpotent element of a positive-dimensional ring is certified not to be a
    parameter.
    """
    elements = [ring.reduce(x) for x in elements]
    for x in elements:
        if not x.is_zero:
            x.require_homogeneous("sequence element")
    d, provenance = ring.dimension
    i = len(elements)
    if i > d:
        raise InputError(f"{i} elements cannot be part of a sop of length {d}.")

    claim = f"({', '.join(map(str, elements))}) is part of a system of parameters"
    assumptions = (
        (f"dim R = {d} (generic estimate)",)
        if provenance == GENERICALLY_ESTIMATED
        else ()
    )

    if d >= 1 and (witness := non_parameter_witness(ring, elements)) is not None:
        return Verdict.decided(claim, False, witness=witness, assumptions=assumptions)

    rng = np.random.default_rng(rng_seed)
    completion = [random_element(ring, ring.generic_degree, rng) for _ in range(d - i)]
    verdict = artinian_window_check(ring, elements + completion, window, claim)
    if completion:
        bound = {"n_hi": window_top(window), "completion": len(completion)}
        witness = {"completion": [str(c) for c in completion]}
        if verdict.holds:
            verdict = Verdict.evidence_true(claim, bound, witness=witness)
        else:
            verdict = Verdict.evidence_false(claim, bound, witness=witness)
    return verdict.with_assumptions(assumptions)


def sop_suggest(
    ring: GradedRing,
    degrees: Sequence[int],
    rng_seed: int = DEFAULT_SEED,
    attempts: int = SOP_ATTEMPTS,
    window: Window | int | None = None,
) -> SopData:
    """Random homogeneous elements of the given degrees that pass ``sop_check``."""
    d = ring.dim
    if len(degrees) != d:
        raise InputError(f"Need {d} degrees for a system of parameters, got {degrees}.")
    for degree in degrees:
        if degree < 1 or not ring.degree_basis(degree).dim:
            raise InputError(f"R has no nonzero elements of degree {degree}.")

    rng = np.random.default_rng(rng_seed)
    last = None
    for attempt in range(attempts):
        elements = []
        for degree in degrees:
            x = random_element(ring, degree, rng)
            while x.is_zero:
                x = random_element(ring, degree, rng)
            elements.append(x)
        last = sop_check(ring, elements, window, rng_seed + attempt)
        if last.holds:
            if ring.verbose:
                print(f"Suggested sop after {attempt + 1} attempt(s).", file=sys.stderr)
            return SopData(ring, tuple(elements), {"sop": last})

    verdict = Verdict(
        "a system of parameters of degrees " + ", ".join(map(str, degrees)),
        Status.INCONCLUSIVE,
        bound={"attempts": attempts},
        witness={"seed": rng_seed, "last": last.to_dict() if last else None},
    )
    raise InconclusiveError(
        f"No system of parameters found in {attempts} attempts.", verdict
    )

