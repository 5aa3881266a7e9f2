import pytest

from tclab.bounds import Window
from tclab.closures import TestElementCandidate
from tclab.closures.cohomology import (
    SCHENZEL,
    THM1,
    TOP,
    cohomology_report,
    schenzel_piece,
    tc0_piece,
    top_piece,
)
from tclab.errors import InputError, PreconditionError
from tclab.gfp import PrimeField
from tclab.ideals import SopData
from tclab.polynomials import PolynomialRing
from tclab.rings import GradedRing, RingPresentation
from tclab.verdicts import Status, Verdict


@pytest.fixture(scope="module")
def line():
    poly_ring = PolynomialRing(("x",), PrimeField(7))
    return GradedRing(RingPresentation(poly_ring, (), 1))


def test_first_cohomology_of_the_quartic_cone(curve3):
    sop = SopData.parse(curve3, "a; d")
    entry = schenzel_piece(curve3, 1, 1, sop)
    assert entry.dim == 1
    assert entry.degree == 2
    assert [str(r) for r in entry.representatives] == ["b^2"]
    assert entry.method == SCHENZEL
    # No standard or usd evidence was attached to the sop.
    assert entry.verdict.status == Status.INCONCLUSIVE

    assert schenzel_piece(curve3, 1, 0, sop).dim == 0
    assert schenzel_piece(curve3, 0, 1, sop).dim == 0


def test_schenzel_verdict_follows_the_sop_flags(curve3):
    sop = SopData.parse(curve3, "a; d").with_flag(
        "usd", Verdict.evidence_true("usd", {"m_max": 2})
    )
    entry = schenzel_piece(curve3, 1, 1, sop)
    assert entry.verdict.status == Status.EVIDENCE_TRUE
    assert entry.verdict.witness == {"standard_by": "usd"}


def test_schenzel_index_out_of_range(curve3):
    sop = SopData.parse(curve3, "a; d")
    with pytest.raises(InputError):
        schenzel_piece(curve3, 2, 0, sop)


QUARTIC_CONE = ((4, 0), (3, 1), (1, 3), (0, 4))


def saturation_gap(n: int) -> int:
    """Monomials s^u t^v with u + v = 4n that are not sums of n cone generators."""
    if n < 0:
        return 0
    sums = {(0, 0)}
    for _ in range(n):
        sums = {(u + a, v + b) for u, v in sums for a, b in QUARTIC_CONE}
    return 4 * n + 1 - len(sums)


@pytest.mark.parametrize("n", range(-3, 5))
def test_first_cohomology_counts_the_missing_monomials(curve7, n):
    sop = SopData.parse(curve7, "a; d")
    assert schenzel_piece(curve7, 1, n, sop).dim == saturation_gap(n)


@pytest.mark.parametrize(
    "n, dim", [(-6, 1), (-4, 1), (-3, 1), (-2, 1), (-1, 1), (0, 0), (1, 0)]
)
def test_top_cohomology_of_a_line(line, n, dim):
    entry = top_piece(line, n, SopData.parse(line, "x"))
    assert entry.dim == dim
    assert entry.method == TOP
    assert entry.verdict.status == Status.EVIDENCE_TRUE


@pytest.mark.parametrize("n, dim", [(-3, 2), (-2, 1), (-1, 0)])
def test_top_cohomology_of_the_plane(poly2, n, dim):
    entry = top_piece(poly2, n, SopData.parse(poly2, "x; y"))
    assert entry.dim == dim


def test_top_piece_records_its_stages(line):
    entry = top_piece(line, -2, SopData.parse(line, "x"), k_max=3)
    assert [stage["degree"] for stage in entry.stages] == [0, 1, 2]
    assert entry.stages[0]["k"] == 2
    assert entry.verdict.witness == {"values": [1, 1, 1]}


def test_top_cohomology_of_the_fermat_cubic(fermat7):
    entry = top_piece(fermat7, 0, SopData.parse(fermat7, "x; y"))
    assert entry.dim == 1
    assert entry.i == 2


def test_tight_closure_of_zero_in_top_cohomology(fermat7):
    c = TestElementCandidate.from_jacobian(fermat7)
    sop = SopData.parse(fermat7, "x; y")
    entry = tc0_piece(fermat7, 0, sop, c, Window(k_max=3))
    assert entry.dim == 1
    assert [stage["degree"] for stage in entry.stages] == [2, 4, 6]
    assert entry.verdict.witness == {"values": [1, 1, 1]}
    assert entry.verdict.holds
    assert entry.verdict.assumptions == (
        *c.assumptions,
        "(x, y) is an unconditioned strong d-sequence",
    )


@pytest.fixture(scope="module")
def double_plane():
    """F_5[x,y,z]/(x^2), singular along the whole line x = 0."""
    poly_ring = PolynomialRing(("x", "y", "z"), PrimeField(5))
    return GradedRing(RingPresentation(poly_ring, (poly_ring.parse("x^2"),), 2))


def test_tight_zero_needs_an_isolated_singularity(double_plane):
    sop = SopData.parse(double_plane, "y; z")
    c = TestElementCandidate.from_user(double_plane, double_plane.parse("y"))
    with pytest.raises(PreconditionError, match="isolated singularity"):
        tc0_piece(double_plane, 0, sop, c, Window(k_max=2))


def test_tight_zero_follows_the_usd_flag(fermat7):
    c = TestElementCandidate.from_jacobian(fermat7)
    sop = SopData.parse(fermat7, "x; y")
    failed = sop.with_flag("usd", Verdict.certified_false("(x, y) is usd"))
    with pytest.raises(PreconditionError, match="is usd"):
        tc0_piece(fermat7, 0, failed, c, Window(k_max=2))

    passed = sop.with_flag("usd", Verdict.evidence_true("(x, y) is usd", {"m_max": 2}))
    entry = tc0_piece(fermat7, 0, passed, c, Window(k_max=2))
    assert entry.verdict.assumptions == (*c.assumptions, "(x, y) is usd")


def test_cohomology_report(fermat7):
    sop = SopData.parse(fermat7, "x; y")
    report = cohomology_report(fermat7, sop, range(-1, 2), indices=[0, 1])
    assert len(report) == 6
    assert report.dims(1) == {-1: 0, 0: 0, 1: 0}
    assert (0, 1) in report
    assert report[1, 0].method == SCHENZEL
    assert [row["i"] for row in report.rows()] == [0, 0, 0, 1, 1, 1]
    assert report.verdict().status == Status.INCONCLUSIVE


def test_cohomology_report_in_parallel_order(curve3):
    sop = SopData.parse(curve3, "a; d")
    calls = []

    def recording_map(fn, tasks):
        tasks = list(tasks)
        calls.append(tasks)
        return map(fn, tasks)

    report = cohomology_report(
        curve3, sop, [0, 1], indices=[1], map_fn=recording_map
    )
    assert calls == [[(1, 0), (1, 1)]]
    assert report.dims(1) == {0: 0, 1: 1}


@pytest.mark.parametrize(
    "kwargs",
    [{"method": "local"}, {"method": THM1}, {"indices": [3]}],
    ids=("unknown-method", "thm1-without-c", "index-too-large"),
)
def test_cohomology_report_errors(fermat7, kwargs):
    sop = SopData.parse(fermat7, "x; y")
    with pytest.raises(InputError):
        cohomology_report(fermat7, sop, [0], **kwargs)
