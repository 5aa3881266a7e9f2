"""
Graded pieces of local cohomology ``H^i_m(R)`` computed from a system of
parameters x_1..x_d.

Two routes are available below the top index:

* ``schenzel``: ``((y_1..y_i) : y_(i+1)) / (Σ_j (y_1..ŷ_j..y_i) : y_j + (y_1..y_i))``
  for a standard sop, read in degree ``n + δ_i``;
* ``thm1``: ``(x_1..x_i)* / (x_1..x_i)^lim`` in degree ``n + δ_i``, valid for an
  equidimensional ring and a parameter test element.

The top index is the direct limit of ``R/(x_1^k..x_d^k)`` under multiplication by
``x_1···x_d``.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, NamedTuple

from tclab.bounds import Window
from tclab.closures import (
    TestElementCandidate,
    limit_piece,
    tight_piece,
)
from tclab.errors import InputError, PreconditionError
from tclab.gfp import Subspace
from tclab.ideals import SopData, colon_piece, ideal_piece
from tclab.polynomials import Polynomial
from tclab.rings import GradedRing
from tclab.rings.jacobian import jacobian_and_isolated_check
from tclab.verdicts import Verdict

SCHENZEL = "schenzel"
THM1 = "thm1"
TOP = "top-limit"
METHODS = (SCHENZEL, THM1)


class CohomologyEntry(NamedTuple):
    """
    One graded piece ``[H^i]_n``. Representatives live in ``R_degree`` and stand
    for fractions over the ``exponent``-th power of the sop.
    """

    i: int
    n: int
    dim: int
    method: str
    verdict: Verdict
    representatives: tuple[Polynomial, ...] = ()
    degree: int | None = None
    exponent: int = 1
    stages: tuple[dict[str, Any], ...] = ()

    def to_row(self) -> dict[str, Any]:
        row = {
            "i": self.i,
            "n": self.n,
            "dim": self.dim,
            "method": self.method,
            "status": self.verdict.status.value,
        }
        if self.representatives:
            row["representatives"] = [str(r) for r in self.representatives]
        if self.stages:
            row["stages"] = list(self.stages)
        return row


def standard_sop_verdict(sop: SopData, claim: str) -> Verdict:
    """The colon formula is exact for a standard sop; anything less is a guess."""
    for name in ("standard", "usd"):
        flag = sop.flags.get(name)
        if flag is not None and flag.holds:
            witness = {"standard_by": name}
            if flag.status.certified:
                return Verdict.certified_true(claim, witness=witness)
            return Verdict.evidence_true(
                claim,
                flag.bound or {},
                witness=witness,
                assumptions=flag.assumptions,
            )
    return Verdict.inconclusive(
        claim, witness={"missing": "no standard or usd evidence for the sop"}
    )


def _check_index(i: int, sop: SopData) -> None:
    if not 0 <= i < len(sop):
        raise InputError(f"Cohomological index {i} must lie in [0, {len(sop) - 1}].")


def schenzel_subspaces(
    i: int, sop: SopData, degree: int
) -> tuple[Subspace, Subspace]:
    """Numerator and denominator of the colon formula for ``H^i`` in ``R_degree``."""
    numerator = colon_piece(sop.ideal(i), sop[i], degree)
    denominator = ideal_piece(sop.ideal(i), degree)
    for j in range(i):
        denominator = denominator + colon_piece(sop.ideal(i, skip=j), sop[j], degree)
    return numerator, denominator


def schenzel_piece(
    ring: GradedRing, i: int, n: int, sop: SopData, power: int = 1
) -> CohomologyEntry:
    _check_index(i, sop)
    y = sop.power(power)
    degree = n + y.delta(i)
    claim = f"[H^{i}]_{n} by colons of {y}"
    verdict = standard_sop_verdict(sop, claim)
    if degree < 0 or not ring.degree_basis(degree).dim:
        return CohomologyEntry(i, n, 0, SCHENZEL, verdict, (), degree, y.exponent)

    numerator, denominator = schenzel_subspaces(i, y, degree)
    common = numerator & denominator
    representatives = ring.elements(numerator.complement(common), degree)
    return CohomologyEntry(
        i,
        n,
        numerator.dim - common.dim,
        SCHENZEL,
        verdict,
        tuple(representatives),
        degree,
        y.exponent,
    )


def thm1_piece(
    ring: GradedRing,
    i: int,
    n: int,
    sop: SopData,
    c: TestElementCandidate,
    power: int = 1,
    window: Window | None = None,
) -> CohomologyEntry:
    """``[(x_1..x_i)* / (x_1..x_i)^lim]`` in degree ``n + δ_i``."""
    window = window or Window()
    _check_index(i, sop)
    y = sop.power(power)
    degree = n + y.delta(i)
    claim = f"[H^{i}]_{n} as tight over limit closure of {y}"
    if degree < 0:
        return CohomologyEntry(
            i, n, 0, THM1, Verdict.certified_true(claim), (), degree, y.exponent
        )

    tight = tight_piece(
        ring, y.ideal(i), degree, c, window.e_max, window.degree_cap
    )
    limit = limit_piece(ring, y[:i], degree, window.s_max)
    common = tight.subspace & limit.subspace
    representatives = ring.elements(tight.subspace.complement(common), degree)
    verdict = Verdict.combine(claim, (tight.verdict, limit.verdict))
    return CohomologyEntry(
        i,
        n,
        tight.dim - common.dim,
        THM1,
        verdict,
        tuple(representatives),
        degree,
        y.exponent,
    )


def top_kernel(
    ring: GradedRing, sop: SopData, k: int, degree: int, depth: int
) -> Subspace:
    """
    Classes ``v/(x^k)``, v in ``R_degree``, that die in ``H^d`` after at most
    ``depth`` limit maps: ``∪_j (x^(k+j)) : (x_1···x_d)^j``.
    """
    dim = ring.degree_basis(degree).dim
    kernel = Subspace.zero(ring.field, dim)
    if not dim:
        return kernel
    product = sop.product()
    for j in range(1, depth + 1):
        kernel = kernel + colon_piece(
            sop.power(k + j).ideal(), ring.power(product, j), degree
        )
    return kernel


def _stable(values: Sequence[int]) -> bool:
    return len(values) >= 2 and values[-1] == values[-2]


def first_stage(n: int, delta: int) -> int:
    """Smallest k >= 1 with ``n + k·delta >= 0``."""
    return max(1, -(n // delta))


def top_preconditions(
    ring: GradedRing, sop: SopData, window: Window | None = None
) -> tuple[str, ...]:
    """
    The isolated-singularity check on ``R`` and the USD flag of ``sop``. A check
    that did not pass raises; one that only gathered evidence, or a missing USD
    flag, comes back as an assumption.
    """
    window = window or Window()
    _, isolated = jacobian_and_isolated_check(ring, max(window.n_hi, Window.n_hi))
    if not isolated.holds:
        raise PreconditionError(
            f"{isolated.claim} is not established ({isolated.status.value})."
        )
    usd = sop.flags.get("usd") or sop.flags.get("standard")
    if usd is not None and not usd.holds:
        raise PreconditionError(f"{usd.claim} is not established ({usd.status.value}).")

    assumptions = [*isolated.assumptions]
    if not isolated.status.certified:
        assumptions.append(isolated.claim)
    if usd is None:
        assumptions.append(f"{sop} is an unconditioned strong d-sequence")
    elif not usd.status.certified:
        assumptions += [*usd.assumptions, usd.claim]
    return tuple(assumptions)


def top_piece(
    ring: GradedRing, n: int, sop: SopData, k_max: int = Window.k_max
) -> CohomologyEntry:
    """
    ``[H^d]_n`` as the image of stage ``[R/(x^k)]_(n + k·δ_d)``. The k_max stages
    compared start at the first k whose degree is nonnegative; images grow
    with k.
    """
    d = len(sop)
    delta = sop.delta(d)
    claim = f"[H^{d}]_{n} as a direct limit over {sop}"
    stages: list[dict[str, Any]] = []
    values: list[int] = []
    representatives: tuple[Polynomial, ...] = ()
    last_degree, last_k = None, 1
    start = first_stage(n, delta)
    for k in range(start, start + k_max):
        degree = n + k * delta
        kernel = top_kernel(ring, sop, k, degree, k_max)
        value = kernel.ambient_dim - kernel.dim
        stages.append({"k": k, "degree": degree, "dim": value})
        values.append(value)
        full = Subspace.full(ring.field, kernel.ambient_dim)
        representatives = tuple(ring.elements(full.complement(kernel), degree))
        last_degree, last_k = degree, k

    bound = {"k_max": k_max}
    if _stable(values):
        verdict = Verdict.evidence_true(claim, bound, witness={"values": values})
    else:
        verdict = Verdict.inconclusive(claim, bound=bound, witness={"values": values})
    return CohomologyEntry(
        d,
        n,
        values[-1],
        TOP,
        verdict,
        representatives,
        last_degree,
        last_k,
        tuple(stages),
    )


def tc0_piece(
    ring: GradedRing,
    n: int,
    sop: SopData,
    c: TestElementCandidate,
    window: Window | None = None,
) -> CohomologyEntry:
    """
    ``[0*_{H^d}]_n`` as the union over k of ``(x^k)*/(x^k)^lim`` in degree
    ``n + k·δ_d``; each stage embeds in ``[H^d]_n`` and the images grow with k.
    Needs an isolated singularity and a USD sop, see ``top_preconditions``.
    """
    window = window or Window()
    preconditions = top_preconditions(ring, sop, window)
    d = len(sop)
    delta = sop.delta(d)
    claim = f"[0*_(H^{d})]_{n} over {sop}"
    stages: list[dict[str, Any]] = []
    values: list[int] = []
    verdicts: list[Verdict] = []
    representatives: tuple[Polynomial, ...] = ()
    last_degree, last_k = None, 1
    start = first_stage(n, delta)
    for k in range(start, start + window.k_max):
        y = sop.power(k)
        degree = n + k * delta
        tight = tight_piece(
            ring, y.ideal(), degree, c, window.e_max, window.degree_cap
        )
        limit = limit_piece(ring, y.elements, degree, window.s_max)
        common = tight.subspace & limit.subspace
        value = tight.dim - common.dim
        stages.append({"k": k, "degree": degree, "dim": value})
        values.append(value)
        verdicts += [tight.verdict, limit.verdict]
        representatives = tuple(
            ring.elements(tight.subspace.complement(common), degree)
        )
        last_degree, last_k = degree, k

    bound = {"k_max": window.k_max}
    if _stable(values):
        verdicts.append(Verdict.evidence_true(claim, bound))
    else:
        verdicts.append(Verdict.inconclusive(claim, bound=bound))
    verdict = Verdict.combine(claim, verdicts, witness={"values": values})
    return CohomologyEntry(
        d,
        n,
        max(values),
        "tight-zero",
        verdict.with_assumptions(preconditions),
        representatives,
        last_degree,
        last_k,
        tuple(stages),
    )


@dataclass
class CohomologyReport:
    """Graded pieces of several ``H^i`` collected into one table."""

    entries: dict[tuple[int, int], CohomologyEntry] = field(default_factory=dict)

    def add(self, entry: CohomologyEntry) -> None:
        self.entries[entry.i, entry.n] = entry

    def __getitem__(self, key: tuple[int, int]) -> CohomologyEntry:
        return self.entries[key]

    def __contains__(self, key) -> bool:
        return key in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def dims(self, i: int) -> dict[int, int]:
        return {n: e.dim for (j, n), e in sorted(self.entries.items()) if j == i}

    def rows(self) -> list[dict[str, Any]]:
        return [self.entries[key].to_row() for key in sorted(self.entries)]

    def verdicts(self) -> list[Verdict]:
        return [self.entries[key].verdict for key in sorted(self.entries)]

    def verdict(self, claim: str = "local cohomology table") -> Verdict:
        return Verdict.combine(claim, self.verdicts())


def cohomology_report(
    ring: GradedRing,
    sop: SopData,
    degrees: Iterable[int],
    indices: Iterable[int] | None = None,
    method: str = SCHENZEL,
    c: TestElementCandidate | None = None,
    window: Window | None = None,
    power: int = 1,
    map_fn: Callable = map,
) -> CohomologyReport:
    """
    Fill a table of ``[H^i]_n``. Indices below d use ``method``; the top index
    always uses the direct limit. ``map_fn`` may be an executor's ordered map.
    """
    window = window or Window()
    if method not in METHODS:
        raise InputError(f"Unknown method {method!r}; choose one of {METHODS}.")
    if method == THM1 and c is None:
        raise InputError("The thm1 method needs a test element.")
    d = len(sop)
    indices = range(d + 1) if indices is None else list(indices)
    tasks = [(i, n) for i in indices for n in degrees]
    for i, _ in tasks:
        if not 0 <= i <= d:
            raise InputError(f"Cohomological index {i} must lie in [0, {d}].")

    def compute(task: tuple[int, int]) -> CohomologyEntry:
        i, n = task
        if i == d:
            return top_piece(ring, n, sop, window.k_max)
        if method == SCHENZEL:
            return schenzel_piece(ring, i, n, sop, power)
        return thm1_piece(ring, i, n, sop, c, power, window)

    report = CohomologyReport()
    for entry in map_fn(compute, tasks):
        report.add(entry)
    return report

