"""
Bounded checks of d-sequences, unconditioned strong d-sequences (USD) and
standard systems of parameters.

Universal statements are only ever checked on the window, so success is
evidence; a failure comes with the colon piece that witnesses it.
"""

from __future__ import annotations

import sys
from collections.abc import Callable, Sequence
from itertools import permutations, product

from tclab.bounds import Window
from tclab.closures.cohomology import schenzel_subspaces
from tclab.errors import InputError
from tclab.gfp import Subspace
from tclab.ideals import IdealHandle, SopData, colon_piece, non_parameter_witness
from tclab.polynomials import Polynomial
from tclab.rings import GradedRing, section, window_top
from tclab.verdicts import Verdict


def _label(elements: Sequence[Polynomial]) -> str:
    return "(" + ", ".join(map(str, elements)) + ")"


def is_d_sequence(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    window: Window | int | None = None,
) -> Verdict:
    """
    ``(x_1..x_i) : x_(i+1)·x_k = (x_1..x_i) : x_k`` for all 0 <= i < n and k > i,
    compared in every degree ``0..n_hi``.
    """
    elements = [ring.reduce(x) for x in elements]
    for x in elements:
        if not x.is_zero:
            x.require_homogeneous("sequence element")
    n_hi = window_top(window)
    claim = f"{_label(elements)} is a d-sequence"

    for i in range(len(elements)):
        ideal = IdealHandle.generated_by(ring, elements[:i])
        for k in range(i, len(elements)):
            product_ = ring.multiply(elements[i], elements[k])
            for degree in range(n_hi + 1):
                if not ring.degree_basis(degree).dim:
                    continue
                wide = colon_piece(ideal, product_, degree)
                narrow = colon_piece(ideal, elements[k], degree)
                if wide != narrow:
                    extra = wide.complement(narrow)[0]
                    return Verdict.certified_false(
                        claim,
                        witness={
                            "i": i,
                            "k": k + 1,
                            "degree": degree,
                            "element": str(ring.element(extra, degree)),
                        },
                    )
    return Verdict.evidence_true(claim, {"n_hi": n_hi})


def is_strong_d_sequence(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    m_max: int = Window.m_max,
    window: Window | int | None = None,
) -> Verdict:
    """Every ``x_1^(m_1)..x_n^(m_n)`` with m_j <= m_max is a d-sequence."""
    return is_usd(ring, elements, m_max, window, permute=False)


def is_usd(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    m_max: int = Window.m_max,
    window: Window | int | None = None,
    map_fn: Callable = map,
    permute: bool = True,
) -> Verdict:
    if m_max < 1:
        raise InputError("The exponent bound m_max must be positive.")
    elements = [ring.reduce(x) for x in elements]
    kind = "an unconditioned" if permute else "a"
    claim = f"{_label(elements)} is {kind} strong d-sequence"
    if len(elements) > 4 and ring.verbose:
        print(
            f"Warning: checking {len(elements)}! orderings of {claim}.",
            file=sys.stderr,
        )

    orders = (
        list(permutations(range(len(elements))))
        if permute
        else [tuple(range(len(elements)))]
    )
    cells = [
        (order, exponents)
        for order in orders
        for exponents in product(range(1, m_max + 1), repeat=len(elements))
    ]

    def check(cell):
        order, exponents = cell
        sequence = [ring.power(elements[j], m) for j, m in zip(order, exponents)]
        return is_d_sequence(ring, sequence, window)

    for (order, exponents), verdict in zip(cells, map_fn(check, cells)):
        if verdict.fails:
            witness = {
                "order": [j + 1 for j in order],
                "exponents": list(exponents),
                **(verdict.witness or {}),
            }
            return Verdict.certified_false(claim, witness=witness)
    return Verdict.evidence_true(
        claim, {"m_max": m_max, "n_hi": window_top(window)}
    )


def _section_by(ring: GradedRing, elements: Sequence[Polynomial], dim: int):
    """``R/(x_1..x_k)`` for part of a sop of a ring of dimension ``dim``."""
    quotient = ring
    for x in elements:
        x = quotient.reduce(x)
        if x.is_zero:
            continue
        dim -= 1
        quotient = GradedRing(section(quotient, x, dim=dim), verbose=ring.verbose)
    return quotient


def _unkilled_class(
    quotient: GradedRing, rest: SopData, j: int, degrees: Sequence[int]
) -> dict | None:
    """First class of ``H^j`` (colon formula over ``rest``) some x_k fails to kill."""
    denominators: dict[int, Subspace] = {}

    def denominator(degree: int) -> Subspace:
        if degree not in denominators:
            denominators[degree] = schenzel_subspaces(j, rest, degree)[1]
        return denominators[degree]

    for n in degrees:
        degree = n + rest.delta(j)
        if degree < 0 or not quotient.degree_basis(degree).dim:
            continue
        numerator, _ = schenzel_subspaces(j, rest, degree)
        for row in numerator.complement(numerator & denominator(degree)):
            r = quotient.element(row, degree)
            for x in rest:
                image = quotient.multiply(r, x)
                target = degree + x.degree
                if image.is_zero or denominator(target).contains(
                    quotient.coordinates(image, target)
                ):
                    continue
                return {"n": n, "representative": str(r), "multiplier": str(x)}
    return None


def is_standard(
    ring: GradedRing,
    sop: SopData,
    window: Window | None = None,
) -> Verdict:
    """
    ``(x_1..x_d)·H^j(R/(x_1..x_(i-1))) = 0`` whenever i + j <= d, i >= 1.

    Each quotient is presented as an iterated section. Its cohomology is read
    through the colon formula with the remaining parameters, and every
    representative times every remaining ``x_k`` must land in the denominator.
    """
    window = window or Window()
    d = len(sop)
    claim = f"{sop} is a standard system of parameters"
    witness = non_parameter_witness(ring, [ring.reduce(x) for x in sop])
    if d >= 1 and witness is not None:
        return Verdict.certified_false(
            claim, witness={"reason": "not a system of parameters", **witness}
        )
    for i in range(1, d + 1):
        quotient = _section_by(ring, sop[: i - 1], d)
        images = [quotient.reduce(x) for x in sop[i - 1 :]]
        if any(x.is_zero for x in images):
            return Verdict.certified_false(
                claim, witness={"i": i, "reason": "a parameter vanishes"}
            )
        rest = SopData(quotient, tuple(images))
        for j in range(d - i + 1):
            failure = _unkilled_class(quotient, rest, j, window.degrees())
            if failure is not None:
                return Verdict.certified_false(
                    claim, witness={"i": i, "j": j, **failure}
                )
    return Verdict.evidence_true(claim, {"n_lo": window.n_lo, "n_hi": window.n_hi})


def usd_power_search(
    ring: GradedRing,
    sop: SopData,
    n_max: int = 4,
    m_max: int = Window.m_max,
    window: Window | int | None = None,
    map_fn: Callable = map,
) -> tuple[int | None, Verdict]:
    """Smallest N <= n_max such that x_1^N..x_d^N passes ``is_usd``."""
    if n_max < 1:
        raise InputError("The power bound n_max must be positive.")
    for power in range(1, n_max + 1):
        verdict = is_usd(ring, sop.power(power).elements, m_max, window, map_fn)
        if verdict.holds:
            return power, verdict
        if ring.verbose:
            print(f"Power {power} of {sop} is not USD.", file=sys.stderr)
    return None, Verdict.inconclusive(
        f"some power of {sop} is an unconditioned strong d-sequence",
        bound={"n_max": n_max, "m_max": m_max},
    )


def hypersurface_persistence_check(
    ring: GradedRing,
    sop: SopData,
    i: int,
    window: Window | None = None,
) -> Verdict:
    """
    A standard sop stays standard after cutting by one of its elements: the
    images of the other parameters in ``R/x_i R`` (i 1-based) are standard.
    """
    window = window or Window()
    if not 1 <= i <= len(sop):
        raise InputError(f"Element index {i} must lie in [1, {len(sop)}].")
    x = sop[i - 1]
    claim = f"{sop} standard implies its image in R/({x}) is standard"
    premise = is_standard(ring, sop, window)
    if not premise.holds:
        return Verdict.evidence_true(
            claim,
            {"n_lo": window.n_lo, "n_hi": window.n_hi},
            witness={"premise": premise.status.value},
        )

    quotient = GradedRing(section(ring, x, dim=len(sop) - 1), verbose=ring.verbose)
    images = tuple(
        quotient.reduce(y) for j, y in enumerate(sop.elements) if j != i - 1
    )
    if any(y.is_zero for y in images):
        conclusion = Verdict.certified_false(claim, witness={"reason": "zero image"})
    else:
        conclusion = is_standard(quotient, SopData(quotient, images), window)
    witness = {"premise": premise.status.value, "conclusion": conclusion.status.value}
    return Verdict.combine(claim, (premise, conclusion), witness=witness)
