from __future__ import annotations

import sys
from itertools import combinations

from tclab.bounds import Window
from tclab.ideals import IdealHandle
from tclab.polynomials import determinant
from tclab.rings import GradedRing, artinian_window_check, window_top
from tclab.verdicts import Verdict

DEGENERATE = "degenerate Jacobian"


def jacobian_matrix(ring: GradedRing):
    relations = ring.presentation.relations
    return [
        [f.partial_derivative(j) for j in range(ring.poly_ring.nvars)]
        for f in relations
    ]


def jacobian_minors(ring: GradedRing, size: int):
    matrix = jacobian_matrix(ring)
    nvars = ring.poly_ring.nvars
    for rows in combinations(range(len(matrix)), size):
        for cols in combinations(range(nvars), size):
            minor = determinant(
                [[matrix[r][c] for c in cols] for r in rows], ring.poly_ring
            )
            if not minor.is_zero:
                yield minor


def jacobian_and_isolated_check(
    ring: GradedRing, window: Window | int | None = None
) -> tuple[IdealHandle, Verdict]:
    """
    The ideal of maximal minors of the Jacobian (size = #vars - dim R) and whether
    it is m-primary, i.e. whether R is regular away from the irrelevant ideal.
    """
    claim = "R has an isolated singularity"
    codimension = ring.poly_ring.nvars - ring.dim
    if codimension == 0:
        # A polynomial ring: the empty minor is 1.
        ideal = IdealHandle.generated_by(ring, [ring.poly_ring.one()], "jacobian")
        return ideal, artinian_window_check(ring, ideal.generators, window, claim)

    matrix = jacobian_matrix(ring)
    if all(entry.is_zero for row in matrix for entry in row):
        if ring.verbose:
            print(f"Warning: {DEGENERATE} in characteristic {ring.p}.", file=sys.stderr)
        verdict = Verdict.inconclusive(
            claim, witness={"warning": DEGENERATE, "char": ring.p}
        )
        return IdealHandle.zero(ring), verdict

    reduced = {ring.reduce(m) for m in jacobian_minors(ring, codimension)}
    minors = sorted(
        (m for m in reduced if not m.is_zero), key=lambda g: (g.degree, str(g))
    )
    if not minors:
        if ring.verbose:
            print("Warning: every Jacobian minor vanishes in R.", file=sys.stderr)
        verdict = Verdict.inconclusive(
            claim,
            bound={"n_hi": window_top(window)},
            witness={"warning": DEGENERATE, "char": ring.p},
        )
        return IdealHandle.zero(ring), verdict
    ideal = IdealHandle.generated_by(ring, minors, "jacobian")
    return ideal, artinian_window_check(ring, ideal.generators, window, claim)
