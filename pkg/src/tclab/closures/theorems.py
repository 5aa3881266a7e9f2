"""
Checks of the statements that tie closures to local cohomology, each run over a
finite window and reported with the verdict it earned there.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from tclab.bounds import Window
from tclab.closures import (
    TestElementCandidate,
    germ_piece,
    limit_member,
    limit_piece,
    section_ring,
    section_test_element,
    tight_piece,
    unmixed_piece,
)
from tclab.closures.cohomology import (
    CohomologyEntry,
    schenzel_piece,
    tc0_piece,
    thm1_piece,
    top_kernel,
)
from tclab.errors import InputError, PreconditionError
from tclab.gfp import preimage
from tclab.ideals import IdealHandle, SopData, ideal_piece
from tclab.polynomials import Polynomial
from tclab.rings import GradedRing
from tclab.verdicts import Verdict


@dataclass
class CheckReport:
    """A verdict together with the table it was read from."""

    verdict: Verdict
    rows: list[dict[str, Any]] = field(default_factory=list)
    details: list[Verdict] = field(default_factory=list)

    @property
    def name(self) -> str:
        return self.verdict.claim

    def to_dict(self) -> dict[str, Any]:
        return {
            "verdict": self.verdict.to_dict(),
            "rows": self.rows,
            "details": [v.to_dict() for v in self.details],
        }


def _window_bound(window: Window) -> dict[str, Any]:
    return {"n_lo": window.n_lo, "n_hi": window.n_hi}


def _quotient_dim(first, second) -> int:
    """``dim first / (first ∩ second)`` for two ``ClosurePiece``s."""
    return first.dim - (first.subspace & second.subspace).dim


def zero_maps_check(
    ring: GradedRing,
    sop: SopData,
    c: TestElementCandidate,
    window: Window | None = None,
    power: int = 1,
) -> CheckReport:
    """
    Every representative r of ``[(y_1..y_i)*/(y_1..y_i)^lim]`` has both r and
    ``r·y_(i+1)`` in ``(y_1..y_(i+1))^lim``, so the maps out of ``H^i`` vanish.
    """
    window = window or Window()
    y = sop.power(power)
    claim = f"the maps ρ_i and ψ_i vanish for {y}"
    rows, details = [], []
    for i in range(len(sop)):
        following = y[: i + 1]
        for n in window.degrees():
            entry = thm1_piece(ring, i, n, sop, c, power, window)
            for r in entry.representatives:
                images = (("ρ", r), ("ψ", ring.multiply(r, y[i])))
                for name, z in images:
                    verdict = limit_member(ring, z, following, window.s_max)
                    details.append(verdict.renamed(f"{name}_{i}([{r}]) = 0 at n = {n}"))
            rows.append(
                {
                    "i": i,
                    "n": n,
                    "dim": entry.dim,
                    "representatives": [str(r) for r in entry.representatives],
                }
            )
    return CheckReport(Verdict.combine(claim, details), rows, details)


def kodaira_check(
    ring: GradedRing,
    i: int,
    threshold: int,
    sop: SopData,
    c: TestElementCandidate,
    window: Window | None = None,
) -> CheckReport:
    """
    ``[H^i]_n = 0`` for all n < threshold exactly when ``I* ⊆ I^lim`` in every
    degree below ``δ_i + threshold``, I = (x_1..x_i). Both sides are evaluated on
    the window and the verdict is whether they agree.
    """
    window = window or Window()
    if not 0 <= i < len(sop):
        raise InputError(f"Cohomological index {i} must lie in [0, {len(sop) - 1}].")
    delta = sop.delta(i)
    claim = (
        f"[H^{i}]_n = 0 for n < {threshold} iff {sop.ideal(i).label}* ⊆ "
        f"{sop.ideal(i).label}^lim + R_(>= {delta + threshold})"
    )
    rows, details = [], []

    lhs = True
    for n in window.degrees():
        if n >= threshold:
            break
        entry = schenzel_piece(ring, i, n, sop)
        details.append(entry.verdict)
        rows.append({"side": "cohomology", "n": n, "dim": entry.dim})
        lhs = lhs and entry.dim == 0

    rhs = True
    for degree in range(max(0, window.n_lo + delta), delta + threshold):
        if degree > window.n_hi + delta:
            break
        tight = tight_piece(
            ring, sop.ideal(i), degree, c, window.e_max, window.degree_cap
        )
        limit = limit_piece(ring, sop[:i], degree, window.s_max)
        excess = _quotient_dim(tight, limit)
        details += [tight.verdict, limit.verdict]
        rows.append({"side": "closure", "degree": degree, "excess": excess})
        rhs = rhs and excess == 0

    witness = {"cohomology_vanishes": lhs, "tight_in_limit": rhs}
    bound = _window_bound(window)
    if lhs != rhs:
        assumptions = tuple(a for v in details for a in v.assumptions)
        verdict = Verdict.evidence_false(
            claim, bound, witness=witness, assumptions=assumptions
        )
    else:
        verdict = Verdict.combine(
            claim, [*details, Verdict.evidence_true(claim, bound)], witness=witness
        )
    return CheckReport(verdict, rows, details)


def vanishing_bound_check(
    ring: GradedRing, sop: SopData, t: int = 1, window: Window | None = None
) -> CheckReport:
    """
    ``[H^i]_n = 0`` for n < -(i-1)·t, i < d, for a sop inside ``m^t``. The
    weaker bound n < -i·t is tabulated alongside.
    """
    window = window or Window()
    if t < 1:
        raise InputError("The power t of the maximal ideal must be positive.")
    if any(x.degree < t for x in sop):
        raise InputError(f"The sop {sop} does not lie in m^{t}.")
    claim = f"[H^i]_n = 0 for n < -(i-1)·{t} and i < {len(sop)}"
    rows, details, failures = [], [], []
    for i in range(len(sop)):
        for n in window.degrees():
            if n >= -(i - 1) * t:
                continue
            entry = schenzel_piece(ring, i, n, sop)
            details.append(entry.verdict)
            rows.append(
                {
                    "i": i,
                    "n": n,
                    "dim": entry.dim,
                    "bound": -(i - 1) * t,
                    "baseline": -i * t,
                    "below_baseline": n < -i * t,
                }
            )
            if entry.dim:
                failures.append({"i": i, "n": n, "dim": entry.dim})

    bound = _window_bound(window)
    if failures:
        assumptions = tuple(a for v in details for a in v.assumptions)
        verdict = Verdict.evidence_false(
            claim, bound, witness=failures[0], assumptions=assumptions
        )
    else:
        verdict = Verdict.combine(
            claim, [*details, Verdict.evidence_true(claim, bound)]
        )
    return CheckReport(verdict, rows, details)


def section_map_rows(ring: GradedRing, quotient: GradedRing, degree: int):
    """Matrix of the surjection ``R_degree → (R/xR)_degree``."""
    basis = ring.degree_basis(degree)
    target = quotient.degree_basis(degree)
    rows = [
        target.normal_coordinates(ring.poly_ring.monomial(m))
        for m in basis.normal_monomials
    ]
    return ring.field.matrix(rows, target.dim)


def _tight_over_limit(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    degree: int,
    c: TestElementCandidate,
    window: Window,
):
    ideal = IdealHandle.generated_by(ring, elements)
    tight = tight_piece(ring, ideal, degree, c, window.e_max, window.degree_cap)
    limit = limit_piece(ring, elements, degree, window.s_max)
    return tight, limit


def main_theorem_check(
    ring: GradedRing,
    n: int,
    sop: SopData,
    c: TestElementCandidate,
    window: Window | None = None,
) -> CheckReport:
    """
    For ℓ = 1..l_max and a = ℓ·deg x_d:

    * is multiplication by ``x_d^ℓ`` injective from ``[H^d]_n`` to ``[H^d]_(n+a)``?
    * in the section ring ``R/x_d^ℓ``, does the natural map carry
      ``[(x)*/(x)^lim]_(n+δ_d)`` injectively into ``[(x̄)*/(x̄)^lim]_(n+δ_d)``,
      x̄ the images of x_1..x_(d-1)?
    * is the limit closure strictly larger than the kernel of that map?
    * when multiplication is injective and the section side is nonzero in
      degree ``n + a + δ_(d-1)``, ``[H^(d-1)]_(n+a)`` must not vanish.
    """
    window = window or Window()
    d = len(sop)
    if d < 1:
        raise InputError("The main theorem needs a sop of positive length.")
    tc0 = tc0_piece(ring, n, sop, c, window)
    if not tc0.dim:
        raise PreconditionError(
            f"[0*_(H^{d})]_{n} vanishes over {sop}; the main theorem does not apply."
        )

    x = sop[d - 1]
    delta = sop.delta(d)
    k = tc0.exponent
    stage_degree = n + k * delta
    kernel = top_kernel(ring, sop, k, stage_degree, window.k_max)
    head = sop.elements[: d - 1]
    degree = n + delta
    tight, limit = _tight_over_limit(ring, sop.elements, degree, c, window)
    left_dim = _quotient_dim(tight, limit)

    rows, details, verdicts = [], [], []
    for ell in range(1, window.l_max + 1):
        a = ell * x.degree
        multiplier = ring.power(x, ell)

        shifted = top_kernel(ring, sop, k, stage_degree + a, window.k_max)
        pulled = preimage(
            ring.field, ring.multiplication_rows(multiplier, stage_degree), shifted
        )
        injective = pulled.dim == kernel.dim
        claim = f"·{multiplier}: [H^{d}]_{n} → [H^{d}]_{n + a} is injective"
        bound = {"k_max": window.k_max}
        witness = {"kernel_growth": pulled.dim - kernel.dim}
        if injective:
            injectivity = Verdict.evidence_true(claim, bound, witness=witness)
        else:
            injectivity = Verdict.evidence_false(claim, bound, witness=witness)
        details.append(injectivity)

        quotient = section_ring(ring, multiplier)
        quotient_c = section_test_element(ring, quotient, c)
        images = [quotient.reduce(y) for y in head]
        right_tight, right_limit = _tight_over_limit(
            quotient, images, degree, quotient_c, window
        )
        right_dim = _quotient_dim(right_tight, right_limit)

        phi = section_map_rows(ring, quotient, degree)
        pulled_limit = preimage(ring.field, phi, right_limit.subspace)
        kernel_of_nat = tight.subspace & pulled_limit
        nat_injective = limit.subspace.contains_subspace(kernel_of_nat)
        inclusion = Verdict.combine(
            f"[(x)*/(x)^lim]_{degree} embeds in R/({multiplier})",
            [
                tight.verdict,
                limit.verdict,
                right_tight.verdict,
                right_limit.verdict,
                Verdict.decided("the natural map is injective", nat_injective),
            ],
            witness={"left_dim": left_dim, "right_dim": right_dim},
        )
        condition = not pulled_limit.contains_subspace(limit.subspace)

        predicted_degree = n + a + sop.delta(d - 1)
        if predicted_degree == degree:
            predicted_dim = right_dim
        else:
            predicted_dim = _quotient_dim(
                *_tight_over_limit(
                    quotient, images, predicted_degree, quotient_c, window
                )
            )
        predicted = injective and predicted_dim > 0
        computed = _lower_cohomology(ring, d - 1, n + a, sop, c, window)
        consistency = Verdict.combine(
            f"[H^{d - 1}]_{n + a} is nonzero when predicted",
            [
                computed.verdict,
                Verdict.decided(
                    "prediction matches computation",
                    not predicted or computed.dim > 0,
                ),
            ],
            witness={"predicted_nonzero": predicted, "computed_dim": computed.dim},
        )
        details += [inclusion, consistency]
        verdicts += [inclusion, consistency]
        rows.append(
            {
                "l": ell,
                "a": a,
                "injective": injective,
                "section": quotient.presentation.describe(),
                "left_dim": left_dim,
                "right_dim": right_dim,
                "nat_injective": nat_injective,
                "limit_exceeds_kernel": condition,
                "predicted_nonzero": predicted,
                "computed_dim": computed.dim,
                "status": consistency.status.value,
            }
        )

    claim = f"main theorem consistent at n = {n} over {sop}"
    verdict = Verdict.combine(claim, [tc0.verdict, *verdicts])
    return CheckReport(verdict, rows, details)


def _lower_cohomology(
    ring: GradedRing,
    i: int,
    n: int,
    sop: SopData,
    c: TestElementCandidate,
    window: Window,
) -> CohomologyEntry:
    if sop.has_evidence("standard") or sop.has_evidence("usd"):
        return schenzel_piece(ring, i, n, sop)
    return thm1_piece(ring, i, n, sop, c, 1, window)


def germ_limit_check(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    c: TestElementCandidate,
    window: Window | None = None,
) -> CheckReport:
    """``I^germ + I = I^lim`` degree by degree."""
    window = window or Window()
    ideal = IdealHandle.generated_by(ring, elements)
    claim = f"{ideal.label}^germ + {ideal.label} = {ideal.label}^lim"
    rows, details, failures = [], [], []
    for n in window.degrees():
        if n < 0:
            continue
        germ = germ_piece(ring, elements, n, c, window.e_max, window.degree_cap)
        limit = limit_piece(ring, elements, n, window.s_max)
        left = germ.subspace + ideal_piece(ideal, n)
        details += [germ.verdict, limit.verdict]
        rows.append({"n": n, "germ_plus_ideal": left.dim, "limit": limit.dim})
        if left != limit.subspace:
            failures.append({"n": n, "left": left.dim, "limit": limit.dim})
    verdict = _agreement(claim, details, failures, window).with_assumptions(
        (f"the generators of {ideal.label} lie in the parameter test ideal",)
    )
    return CheckReport(verdict, rows, details)


def containment_chain_check(
    ring: GradedRing,
    elements: Sequence[Polynomial],
    c: TestElementCandidate,
    window: Window | None = None,
) -> CheckReport:
    """``I ⊆ I^lim ⊆ I*`` degree by degree."""
    window = window or Window()
    ideal = IdealHandle.generated_by(ring, elements)
    claim = f"{ideal.label} ⊆ {ideal.label}^lim ⊆ {ideal.label}*"
    rows, details, failures = [], [], []
    for n in window.degrees():
        if n < 0:
            continue
        base = ideal_piece(ideal, n)
        limit = limit_piece(ring, elements, n, window.s_max)
        tight = tight_piece(ring, ideal, n, c, window.e_max, window.degree_cap)
        details += [limit.verdict, tight.verdict]
        rows.append({"n": n, "ideal": base.dim, "limit": limit.dim, "tight": tight.dim})
        if not (base <= limit.subspace and limit.subspace <= tight.subspace):
            failures.append({"n": n})
    return CheckReport(_agreement(claim, details, failures, window), rows, details)


def unmixed_tight_check(
    ring: GradedRing,
    sop: SopData,
    i: int,
    c: TestElementCandidate,
    window: Window | None = None,
) -> CheckReport:
    """``(x_1..x_i)^unm = (x_1..x_i)*`` for i < d on an isolated singularity."""
    window = window or Window()
    if not 0 <= i < len(sop):
        raise InputError(f"Parameter count {i} must lie in [0, {len(sop) - 1}].")
    ideal = sop.ideal(i)
    claim = f"{ideal.label}^unm = {ideal.label}*"
    rows, details, failures = [], [], []
    for n in window.degrees():
        if n < 0:
            continue
        unmixed = unmixed_piece(ring, sop[:i], sop[i], n, window.powers)
        tight = tight_piece(ring, ideal, n, c, window.e_max, window.degree_cap)
        details += [unmixed.verdict, tight.verdict]
        rows.append({"n": n, "unmixed": unmixed.dim, "tight": tight.dim})
        if unmixed.subspace != tight.subspace:
            failures.append({"n": n, "unmixed": unmixed.dim, "tight": tight.dim})
    verdict = _agreement(claim, details, failures, window)
    return CheckReport(
        verdict.with_assumptions(("R has an isolated singularity",)), rows, details
    )


def dual_route_check(
    ring: GradedRing,
    sop: SopData,
    c: TestElementCandidate,
    window: Window | None = None,
    powers: Iterable[int] = (1,),
) -> CheckReport:
    """The colon route and the tight-over-limit route give the same dimensions."""
    window = window or Window()
    claim = f"both routes to H^i agree over {sop}"
    rows, details, failures = [], [], []
    for power in powers:
        for i in range(len(sop)):
            for n in window.degrees():
                colon = schenzel_piece(ring, i, n, sop, power)
                closure = thm1_piece(ring, i, n, sop, c, power, window)
                details += [colon.verdict, closure.verdict]
                rows.append(
                    {
                        "power": power,
                        "i": i,
                        "n": n,
                        "schenzel": colon.dim,
                        "thm1": closure.dim,
                    }
                )
                if colon.dim != closure.dim:
                    failures.append(rows[-1])
    return CheckReport(_agreement(claim, details, failures, window), rows, details)


def sop_independence_check(
    ring: GradedRing,
    first: SopData,
    second: SopData,
    window: Window | None = None,
) -> CheckReport:
    """Two standard sops give the same colon-route dimensions."""
    window = window or Window()
    if len(first) != len(second):
        raise InputError("Both sequences must be systems of parameters of R.")
    claim = f"H^i does not depend on the choice of {first} or {second}"
    rows, details, failures = [], [], []
    for i in range(len(first)):
        for n in window.degrees():
            a = schenzel_piece(ring, i, n, first)
            b = schenzel_piece(ring, i, n, second)
            details += [a.verdict, b.verdict]
            rows.append({"i": i, "n": n, "first": a.dim, "second": b.dim})
            if a.dim != b.dim:
                failures.append(rows[-1])
    return CheckReport(_agreement(claim, details, failures, window), rows, details)


def _agreement(
    claim: str,
    details: list[Verdict],
    failures: list[dict[str, Any]],
    window: Window,
) -> Verdict:
    bound = _window_bound(window)
    if failures:
        assumptions = tuple(a for v in details for a in v.assumptions)
        return Verdict.evidence_false(
            claim, bound, witness=failures[0], assumptions=assumptions
        )
    return Verdict.combine(claim, [*details, Verdict.evidence_true(claim, bound)])

