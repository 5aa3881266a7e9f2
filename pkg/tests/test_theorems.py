import pytest

from tclab.bounds import Window
from tclab.closures import TestElementCandidate
from tclab.closures.theorems import (
    containment_chain_check,
    dual_route_check,
    germ_limit_check,
    kodaira_check,
    main_theorem_check,
    sop_independence_check,
    unmixed_tight_check,
    vanishing_bound_check,
    zero_maps_check,
)
from tclab.errors import InputError, PreconditionError
from tclab.gfp import PrimeField
from tclab.ideals import SopData, sop_suggest
from tclab.polynomials import PolynomialRing
from tclab.ring_files import registry_ring
from tclab.rings import GradedRing, RingPresentation
from tclab.verdicts import Status, Verdict


@pytest.fixture(scope="module")
def curve_sop(curve3):
    return SopData.parse(curve3, "a; d")


@pytest.fixture(scope="module")
def curve_c(curve3):
    return TestElementCandidate.from_jacobian(curve3)


def test_vanishing_bound(curve_sop):
    flagged = curve_sop.with_flag("usd", Verdict.evidence_true("usd", {"m_max": 2}))
    window = Window(n_lo=-2, n_hi=1)
    report = vanishing_bound_check(flagged.ring, flagged, 1, window)
    assert report.verdict.status == Status.EVIDENCE_TRUE
    assert {(row["i"], row["n"]) for row in report.rows} == {
        (0, -2),
        (0, -1),
        (0, 0),
        (1, -2),
        (1, -1),
    }
    assert all(row["dim"] == 0 for row in report.rows)


@pytest.mark.parametrize("t", [0, 2], ids=("zero", "above-the-sop-degree"))
def test_vanishing_bound_rejects_t(curve_sop, t):
    with pytest.raises(InputError):
        vanishing_bound_check(curve_sop.ring, curve_sop, t)


@pytest.mark.parametrize(
    "threshold, sides",
    [(1, True), (2, False)],
    ids=("below-the-socle", "through-the-socle"),
)
def test_kodaira_sides_agree(curve3, curve_sop, curve_c, threshold, sides):
    window = Window(n_lo=0, n_hi=2)
    report = kodaira_check(curve3, 1, threshold, curve_sop, curve_c, window)
    assert not report.verdict.fails
    assert report.verdict.witness == {
        "cohomology_vanishes": sides,
        "tight_in_limit": sides,
    }


def test_kodaira_index_out_of_range(curve3, curve_sop, curve_c):
    with pytest.raises(InputError):
        kodaira_check(curve3, 2, 1, curve_sop, curve_c)


def test_zero_maps(curve3, curve_sop, curve_c):
    report = zero_maps_check(curve3, curve_sop, curve_c, Window(n_lo=0, n_hi=1))
    assert [(row["i"], row["n"], row["dim"]) for row in report.rows] == [
        (0, 0, 0),
        (0, 1, 0),
        (1, 0, 0),
        (1, 1, 1),
    ]
    assert len(report.details) == 2
    assert report.verdict.status == Status.CERTIFIED_TRUE


def test_dual_route(curve3, curve_sop, curve_c):
    report = dual_route_check(curve3, curve_sop, curve_c, Window(n_lo=-1, n_hi=1))
    assert len(report.rows) == 6
    assert all(row["schenzel"] == row["thm1"] for row in report.rows)
    assert not report.verdict.fails


@pytest.mark.parametrize("name", ["poly2", "fermat7"], ids=("plane", "cubic-cone"))
def test_dual_route_over_sop_powers(request, name):
    ring = request.getfixturevalue(name)
    sop = SopData.parse(ring, "x; y")
    c = TestElementCandidate.from_jacobian(ring)
    report = dual_route_check(ring, sop, c, Window(n_lo=-1, n_hi=1), powers=(1, 2))
    assert len(report.rows) == 12
    assert {row["power"] for row in report.rows} == {1, 2}
    assert all(row["schenzel"] == row["thm1"] == 0 for row in report.rows)
    assert not report.verdict.fails


@pytest.mark.parametrize("name", ["poly2", "fermat7"], ids=("plane", "cubic-cone"))
def test_seeded_sops_agree(request, name):
    ring = request.getfixturevalue(name)
    first, second = (sop_suggest(ring, [1, 1], seed) for seed in (1, 2))
    report = sop_independence_check(ring, first, second, Window(n_lo=-2, n_hi=3))
    assert all(row["first"] == row["second"] for row in report.rows)
    assert not report.verdict.fails


def test_main_theorem_needs_tight_zero(poly2):
    c = TestElementCandidate.from_jacobian(poly2)
    sop = SopData.parse(poly2, "x; y")
    with pytest.raises(PreconditionError):
        main_theorem_check(poly2, -2, sop, c, Window(k_max=2))


def test_main_theorem_needs_an_isolated_singularity():
    poly_ring = PolynomialRing(("x", "y", "z"), PrimeField(5))
    ring = GradedRing(RingPresentation(poly_ring, (poly_ring.parse("x^2"),), 2))
    c = TestElementCandidate.from_user(ring, ring.parse("y"))
    with pytest.raises(PreconditionError, match="isolated singularity"):
        main_theorem_check(ring, 0, SopData.parse(ring, "y; z"), c, Window(k_max=2))


def test_main_theorem_on_the_fermat_cubic(fermat7):
    c = TestElementCandidate.from_jacobian(fermat7)
    sop = SopData.parse(fermat7, "x; y")
    report = main_theorem_check(fermat7, 0, sop, c, Window(k_max=2, l_max=1))
    assert len(report.rows) == 1
    row = report.rows[0]
    assert (row["l"], row["a"]) == (1, 1)
    # [H^2]_1 vanishes for the cubic cone while [H^2]_0 does not.
    assert row["injective"] is False
    assert set(row) >= {
        "injective",
        "left_dim",
        "right_dim",
        "nat_injective",
        "limit_exceeds_kernel",
        "predicted_nonzero",
        "computed_dim",
    }


def test_germ_plus_ideal_is_the_limit_closure(curve3, curve_sop, curve_c):
    report = germ_limit_check(curve3, list(curve_sop), curve_c, Window(n_lo=0, n_hi=2))
    assert not report.verdict.fails
    assert [row["limit"] for row in report.rows] == [0, 2, 9]


def test_containment_chain(curve3, curve_sop, curve_c):
    report = containment_chain_check(
        curve3, list(curve_sop), curve_c, Window(n_lo=0, n_hi=2)
    )
    assert not report.verdict.fails
    assert [row["ideal"] for row in report.rows] == [0, 2, 7]


@pytest.mark.parametrize(
    "name, elements, limits",
    [("poly2", "x; y", [0, 2, 3, 4]), ("fermat7", "x^2; y^2", [0, 0, 2, 6])],
    ids=("plane", "cubic-cone"),
)
def test_germ_limit_with_jacobian_elements(request, name, elements, limits):
    ring = request.getfixturevalue(name)
    c = TestElementCandidate.from_jacobian(ring)
    xs = ring.parse_list(elements)
    report = germ_limit_check(ring, xs, c, Window(n_lo=0, n_hi=3))
    assert not report.verdict.fails
    assert [row["limit"] for row in report.rows] == limits
    assert [row["germ_plus_ideal"] for row in report.rows] == limits
    assert (
        f"the generators of ({elements.replace(';', ',')}) lie in the parameter "
        "test ideal" in report.verdict.assumptions
    )


@pytest.mark.parametrize(
    "name, elements",
    [
        ("poly2", "x; y"),
        ("fermat3", "x; y"),
        ("nodalline", "x + y"),
        ("curve4", "a; d"),
    ],
)
def test_containment_chain_on_the_registry(name, elements):
    ring = GradedRing(registry_ring(name, 7))
    c = TestElementCandidate.from_jacobian(ring)
    report = containment_chain_check(
        ring, ring.parse_list(elements), c, Window(n_lo=0, n_hi=2)
    )
    assert not report.verdict.fails
    assert all(row["ideal"] <= row["limit"] <= row["tight"] for row in report.rows)


def test_unmixed_hull_is_the_tight_closure(curve3, curve_sop, curve_c):
    report = unmixed_tight_check(curve3, curve_sop, 1, curve_c, Window(n_lo=0, n_hi=2))
    assert not report.verdict.fails
    assert "R has an isolated singularity" in report.verdict.assumptions
    assert [row["unmixed"] for row in report.rows] == [0, 1, 5]
    with pytest.raises(InputError):
        unmixed_tight_check(curve3, curve_sop, 2, curve_c)


def test_sop_independence(curve3, curve_sop):
    swapped = SopData.parse(curve3, "d; a")
    report = sop_independence_check(
        curve3, curve_sop, swapped, Window(n_lo=0, n_hi=2)
    )
    assert not report.verdict.fails
    with pytest.raises(InputError):
        sop_independence_check(curve3, curve_sop, SopData.parse(curve3, "a"))
