"""
Closure operations on parameter ideals, one degree piece at a time.

``limit``  I^lim  = ∪_s (x_1^s..x_i^s) : (x_1..x_i)^(s-1)
``tight``  I*     = {z : c·z^q ∈ I^[q] for q = p^e >> 0}
``germ``   I^germ = Σ_j (x_1..x̂_j..x_i)*
``unmixed`` I^unm = ∪_N (x_1..x_i) : x_(i+1)^N

Every piece comes back as a ``ClosurePiece`` whose verdict says how far the
quantifier in its definition was pushed.
"""

from __future__ import annotations

import sys
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from tclab.bounds import DEFAULT_SEED, Window
from tclab.errors import InconclusiveError, InputError
from tclab.gfp import Subspace, preimage
from tclab.ideals import IdealHandle, colon_piece, frobenius_power_ideal, ideal_piece
from tclab.polynomials import Polynomial
from tclab.rings import (
    GradedRing,
    RingPresentation,
    dim_estimate,
    generic_combination,
    is_nonzerodivisor_evidence,
    section,
)
from tclab.verdicts import Verdict

JACOBIAN = "jacobian"
USER = "user"


class ClosurePiece(NamedTuple):
    degree: int
    subspace: Subspace
    verdict: Verdict

    @property
    def dim(self) -> int:
        return self.subspace.dim


def r_circle_evidence(ring: GradedRing, c: Polynomial) -> bool:
    """
    Evidence that c avoids every minimal prime: a nonzero constant, a
    nonzerodivisor on the window, or an element cutting the dimension down.
    """
    c = ring.reduce(c)
    if c.is_zero:
        return False
    if c.is_constant:
        return True
    if is_nonzerodivisor_evidence(ring, c).holds:
        return True
    quotient = GradedRing(
        RingPresentation(ring.poly_ring, (*ring.presentation.relations, c))
    )
    try:
        return dim_estimate(quotient)[0] < ring.dim
    except InconclusiveError:
        return False


@dataclass(frozen=True)
class TestElementCandidate:
    """
    The element c of the tight-closure test ``c·z^q ∈ I^[q]``.

    Unless ``certified`` is set (by the user, or for the unit of a polynomial
    ring, which is regular) every verdict built on c carries the assumption that
    c is a parameter test element.
    """

    __test__ = False

    element: Polynomial
    source: str
    certified: bool = False

    @property
    def degree(self) -> int:
        return self.element.degree

    @property
    def assumptions(self) -> tuple[str, ...]:
        if self.certified:
            return ()
        return (f"c = {self.element} is a parameter test element",)

    def to_dict(self) -> dict:
        return {
            "element": str(self.element),
            "source": self.source,
            "certified": self.certified,
        }

    @classmethod
    def from_user(
        cls, ring: GradedRing, element: Polynomial, certified: bool = False
    ) -> TestElementCandidate:
        element = ring.reduce(element)
        if element.is_zero:
            raise InputError("The test element c must be nonzero in R.")
        element.require_homogeneous("test element")
        if not r_circle_evidence(ring, element):
            raise InputError(f"The test element {element} lies in a minimal prime.")
        return cls(element, USER, certified)

    @classmethod
    def from_jacobian(
        cls, ring: GradedRing, rng_seed: int = DEFAULT_SEED, attempts: int = 8
    ) -> TestElementCandidate:
        """
        Generic combination of the lowest-degree Jacobian minors, redrawn until it
        passes the R° check.
        """
        from tclab.rings.jacobian import jacobian_and_isolated_check

        ideal, _ = jacobian_and_isolated_check(ring)
        if ideal.is_zero:
            raise InputError(
                "The Jacobian ideal vanishes in R; supply a test element explicitly."
            )
        lowest = min(g.degree for g in ideal.generators)
        generators = [g for g in ideal.generators if g.degree == lowest]
        if lowest == 0:
            # A unit minor: R is regular when it has no relations at all.
            return cls(ring.poly_ring.one(), JACOBIAN, certified=not ring.reducers)

        rng = np.random.default_rng(rng_seed)
        for _ in range(attempts):
            c = generic_combination(ring, generators, rng)
            if r_circle_evidence(ring, c):
                return cls(c, JACOBIAN)
        raise InputError(
            f"No combination of Jacobian minors passed the R° check in {attempts} "
            "draws."
        )


def power_ideal(ring: GradedRing, elements: Sequence[Polynomial], s: int):
    """``(x_1^s..x_i^s)``"""
    return IdealHandle.generated_by(ring, (ring.power(x, s) for x in elements))


def limit_member(
    ring: GradedRing,
    z: Polynomial,
    elements: Sequence[Polynomial],
    s_max: int = Window.s_max,
) -> Verdict:
    """
    Is ``x^(s-1)·z ∈ (x_1^s..x_i^s)`` for some s <= s_max? The condition is
    monotone in s, so the first success certifies membership.
    """
    z = ring.reduce(z)
    elements = [ring.reduce(x) for x in elements]
    label = ", ".join(map(str, elements))
    claim = f"{z} ∈ ({label})^lim"
    if z.is_zero:
        return Verdict.certified_true(claim, witness={"s": 0})
    degree = z.require_homogeneous()
    if not elements:
        return Verdict.certified_false(claim, witness={"reason": "(0)^lim = 0"})

    product = ring.multiply(*elements)
    for s in range(1, s_max + 1):
        multiple = ring.multiply(z, ring.power(product, s - 1))
        target = degree + (s - 1) * product.degree
        if multiple.is_zero or ideal_piece(
            power_ideal(ring, elements, s), target
        ).contains(ring.coordinates(multiple, target)):
            return Verdict.certified_true(claim, witness={"s": s})
    return Verdict.evidence_false(claim, bound={"s_max": s_max})


def limit_piece(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    n: int,
    s_max: int = Window.s_max,
) -> ClosurePiece:
    """Ascending union over s <= s_max of ``(x_1^s..x_i^s) : x^(s-1)`` in degree n."""
    elements = [ring.reduce(x) for x in elements]
    dim = ring.degree_basis(n).dim
    label = ", ".join(map(str, elements))
    claim = f"[({label})^lim]_{n}"
    zero = Subspace.zero(ring.field, dim)
    if not elements or not dim:
        return ClosurePiece(n, zero, Verdict.certified_true(claim))

    product = ring.multiply(*elements)
    union, dims = zero, []
    for s in range(1, s_max + 1):
        union = union + colon_piece(
            power_ideal(ring, elements, s), ring.power(product, s - 1), n
        )
        dims.append(union.dim)

    bound = {"s_max": s_max}
    witness = {"dims": dims}
    if len(dims) >= 2 and dims[-1] == dims[-2]:
        verdict = Verdict.evidence_true(claim, bound, witness=witness)
    else:
        verdict = Verdict.inconclusive(claim, bound=bound, witness=witness)
    return ClosurePiece(n, union, verdict)


def tight_piece(
    ring: GradedRing,
    ideal: IdealHandle,
    n: int,
    c: TestElementCandidate,
    e_max: int = Window.e_max,
    degree_cap: int = Window.degree_cap,
) -> ClosurePiece:
    """
    ``∩_e ker(v ↦ c·v^q mod I^[q])`` on ``R_n`` for e <= e_max.

    The map is linear because Frobenius is additive and fixes F_p. The chain of
    kernels is declared stable when the last two agree.
    """
    dim = ring.degree_basis(n).dim
    claim = f"[{ideal.label}*]_{n}"
    if not dim:
        return ClosurePiece(
            n, Subspace.zero(ring.field, dim), Verdict.certified_true(claim)
        )

    current = Subspace.full(ring.field, dim)
    dims: list[int] = []
    for e in range(1, e_max + 1):
        q = ring.p**e
        target_degree = q * n + c.degree
        if target_degree > degree_cap:
            verdict = Verdict.inconclusive(
                claim,
                bound={"e": e, "degree": target_degree, "degree_cap": degree_cap},
                witness={"dims": dims},
                assumptions=c.assumptions,
            )
            return ClosurePiece(n, current, verdict)

        rows = ring.frobenius_rows(c.element, n, q)
        target = ideal_piece(frobenius_power_ideal(ideal, e), target_degree)
        current = current & preimage(ring.field, rows, target)
        dims.append(current.dim)
        if ring.verbose:
            print(f"{claim}: e={e} kernel dim {current.dim}", file=sys.stderr)

    bound = {"e_max": e_max}
    witness = {"dims": dims}
    if len(dims) >= 2 and dims[-1] == dims[-2]:
        verdict = Verdict.evidence_true(
            claim, bound, witness=witness, assumptions=c.assumptions
        )
    else:
        verdict = Verdict.inconclusive(
            claim, bound=bound, witness=witness, assumptions=c.assumptions
        )
    return ClosurePiece(n, current, verdict)


def tight_member(
    ring: GradedRing,
    z: Polynomial,
    ideal: IdealHandle,
    c: TestElementCandidate,
    e_max: int = Window.e_max,
    degree_cap: int = Window.degree_cap,
) -> Verdict:
    """
    Is ``c·z^q ∈ I^[q]`` for every q = p^e, e <= e_max? A failure refutes
    membership as far as c really is a test element.
    """
    z = ring.reduce(z)
    claim = f"{z} ∈ {ideal.label}*"
    bound = {"e_max": e_max}
    if z.is_zero:
        return Verdict.evidence_true(claim, bound, witness={"reason": "z = 0"})
    degree = z.require_homogeneous()
    if ideal_piece(ideal, degree).contains(ring.coordinates(z, degree)):
        return Verdict.evidence_true(claim, bound, witness={"reason": "z ∈ I"})

    for e in range(1, e_max + 1):
        q = ring.p**e
        target_degree = q * degree + c.degree
        if target_degree > degree_cap:
            return Verdict.inconclusive(
                claim,
                bound={"e": e, "degree": target_degree, "degree_cap": degree_cap},
                assumptions=c.assumptions,
            )
        image = ring.reduce(c.element * z.frobenius_pow(e))
        if image.is_zero:
            continue
        target = ideal_piece(frobenius_power_ideal(ideal, e), target_degree)
        if not target.contains(ring.coordinates(image, target_degree)):
            return Verdict.decided(
                claim,
                False,
                bound={"e": e},
                witness={"e": e, "q": q, "c": str(c.element)},
                assumptions=c.assumptions,
            )
    return Verdict.evidence_true(claim, bound, assumptions=c.assumptions)


def germ_piece(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    n: int,
    c: TestElementCandidate,
    e_max: int = Window.e_max,
    degree_cap: int = Window.degree_cap,
) -> ClosurePiece:
    """``Σ_j [(x_1..x̂_j..x_i)*]_n``; a single element gives ``(0)*``."""
    elements = [ring.reduce(x) for x in elements]
    dim = ring.degree_basis(n).dim
    label = ", ".join(map(str, elements))
    claim = f"[({label})^germ]_{n}"
    if not elements or not dim:
        return ClosurePiece(
            n, Subspace.zero(ring.field, dim), Verdict.certified_true(claim)
        )

    pieces = []
    for j in range(len(elements)):
        deleted = [x for k, x in enumerate(elements) if k != j]
        ideal = (
            IdealHandle.generated_by(ring, deleted)
            if deleted
            else IdealHandle.zero(ring)
        )
        pieces.append(tight_piece(ring, ideal, n, c, e_max, degree_cap))

    total = Subspace.zero(ring.field, dim)
    for piece in pieces:
        total = total + piece.subspace
    return ClosurePiece(n, total, Verdict.combine(claim, (p.verdict for p in pieces)))


def unmixed_piece(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    following: Polynomial,
    n: int,
    powers: Sequence[int] = Window.powers,
) -> ClosurePiece:
    """
    ``∪_N [(x_1..x_i) : x_(i+1)^N]_n`` over the power ladder. Components of
    ``(x_1..x_i)`` below the top dimension are killed by a power of the next
    parameter, so the ladder stabilizes at the unmixed hull.
    """
    elements = [ring.reduce(x) for x in elements]
    dim = ring.degree_basis(n).dim
    ideal = (
        IdealHandle.generated_by(ring, elements) if elements else IdealHandle.zero(ring)
    )
    claim = f"[{ideal.label}^unm]_{n}"
    union = Subspace.zero(ring.field, dim)
    dims = []
    for power in powers:
        union = union + colon_piece(ideal, ring.power(following, power), n)
        dims.append(union.dim)

    bound = {"powers": list(powers)}
    witness = {"dims": dims}
    if len(dims) >= 2 and dims[-1] == dims[-2]:
        verdict = Verdict.evidence_true(claim, bound, witness=witness)
    else:
        verdict = Verdict.inconclusive(claim, bound=bound, witness=witness)
    return ClosurePiece(n, union, verdict)


def section_test_element(
    ring: GradedRing, quotient: GradedRing, c: TestElementCandidate
) -> TestElementCandidate:
    """A test element for a section ring: its own Jacobian one, else the image of c."""
    try:
        return TestElementCandidate.from_jacobian(quotient)
    except InputError:
        return TestElementCandidate.from_user(quotient, c.element)


def section_ring(ring: GradedRing, x: Polynomial) -> GradedRing:
    return GradedRing(section(ring, x), verbose=ring.verbose)

