import pytest

from tclab.errors import InputError
from tclab.gfp import PrimeField
from tclab.polynomials import PolynomialRing
from tclab.ring_files import load_ring, registry_ring
from tclab.rings import (
    GENERICALLY_ESTIMATED,
    USER_DECLARED,
    GradedRing,
    RingPresentation,
    artinian_window_check,
    dim_estimate,
    generic_combination,
    hilbert,
    is_nonzerodivisor_evidence,
    section,
)
from tclab.rings.jacobian import DEGENERATE, jacobian_and_isolated_check
from tclab.verdicts import Status


def test_fermat_hilbert_function(fermat7):
    assert hilbert(fermat7, range(-1, 5)) == [
        (-1, 0),
        (0, 1),
        (1, 3),
        (2, 6),
        (3, 9),
        (4, 12),
    ]


def test_weighted_hilbert_function(data_dir):
    ring = GradedRing(load_ring(data_dir / "weighted.ring"))
    assert [dim for _, dim in ring.hilbert(range(6))] == [1, 1, 2, 2, 2, 2]


@pytest.mark.parametrize(
    "name, char, degree",
    [("fermat3", 7, 4), ("curve4", 3, 3), ("nodalline", 5, 3)],
    ids=("fermat", "curve", "nodal"),
)
def test_normal_monomials_match_relation_subspace(name, char, degree):
    ring = GradedRing(registry_ring(name, char))
    basis = ring.degree_basis(degree)
    assert set(basis.normal_monomials) == set(basis.eliminated_monomials)
    assert basis.dim + basis.relation_subspace.dim == len(basis.ambient_monomials)


def test_normal_form(fermat7):
    f = fermat7.reduce(fermat7.poly_ring.parse("x^3"))
    assert str(f) == "6*y^3 + 6*z^3"
    assert fermat7.is_zero(fermat7.poly_ring.parse("x^4 + x*y^3 + x*z^3"))


def test_coordinates_round_trip(curve3):
    f = curve3.parse("b^2 + a*d + 2*c*d")
    vector = curve3.coordinates(f)
    assert curve3.element(vector, 2) == f


def test_multiplication_and_frobenius_rows(fermat7, poly2):
    x = fermat7.parse("x")
    assert fermat7.multiplication_rows(x, 2).shape == (6, 9)

    rows = poly2.frobenius_rows(poly2.parse("1"), 1, 7)
    assert rows.shape == (2, 8)
    assert rows[0].tolist() == [1, 0, 0, 0, 0, 0, 0, 0]
    assert rows[1].tolist() == [0, 0, 0, 0, 0, 0, 0, 1]


def test_artinian_window_check(poly2):
    x, y = poly2.poly_ring.variables()
    verdict = artinian_window_check(poly2, [x, y])
    assert verdict.status == Status.CERTIFIED_TRUE
    assert verdict.witness == {"vanishing_degree": 7}
    assert artinian_window_check(poly2, [x]).status == Status.EVIDENCE_FALSE


@pytest.mark.parametrize(
    "relations, expected",
    [((), 2), (("x^3 + y^3 + z^3",), 2), (("x", "y*z"), 1)],
    ids=("plane", "fermat", "two-lines"),
)
def test_dim_estimate(relations, expected):
    poly_ring = PolynomialRing(("x", "y", "z"), PrimeField(10007))
    if not relations:
        poly_ring = PolynomialRing(("x", "y"), PrimeField(10007))
    presentation = RingPresentation(
        poly_ring, tuple(poly_ring.parse(f) for f in relations)
    )
    ring = GradedRing(presentation)
    assert dim_estimate(ring) == (expected, GENERICALLY_ESTIMATED)
    assert ring.dimension == (expected, GENERICALLY_ESTIMATED)


def test_declared_dimension_is_kept(curve3):
    assert curve3.dimension == (2, USER_DECLARED)


def test_nonzerodivisor_evidence(nodal5):
    verdict = is_nonzerodivisor_evidence(nodal5, nodal5.parse("x"))
    assert verdict.status == Status.CERTIFIED_FALSE
    assert verdict.witness == {"degree": 1, "element": "y"}

    verdict = is_nonzerodivisor_evidence(nodal5, nodal5.parse("x + y"), 4)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.bound == {"n_hi": 4}


def test_section_by_a_nonzerodivisor(fermat7):
    presentation = section(fermat7, fermat7.parse("z"))
    assert presentation.dim == 1
    assert presentation.dim_provenance == USER_DECLARED
    quotient = GradedRing(presentation)
    assert [dim for _, dim in quotient.hilbert(range(5))] == [1, 2, 3, 3, 3]


@pytest.mark.parametrize("element", ["0", "1", "x^3 + y^3 + z^3"])
def test_section_errors(fermat7, element):
    with pytest.raises(InputError):
        section(fermat7, fermat7.poly_ring.parse(element))


def test_generic_combination(fermat7):
    x, y, z = fermat7.poly_ring.variables()
    combination = generic_combination(fermat7, [x, y, z], 3)
    assert combination.degree == 1
    with pytest.raises(InputError):
        generic_combination(fermat7, [x, x * y])
    with pytest.raises(InputError):
        generic_combination(fermat7, [fermat7.poly_ring.zero()])


@pytest.mark.parametrize(
    "relation, dim",
    [("x^2 + y", None), ("x*y", 3), ("3", None)],
    ids=("inhomogeneous", "too-large-dim", "unit"),
)
def test_bad_presentations(relation, dim):
    poly_ring = PolynomialRing(("x", "y"), PrimeField(7))
    with pytest.raises(InputError):
        RingPresentation(poly_ring, (poly_ring.parse(relation),), dim)


def test_jacobian_of_fermat(fermat7):
    ideal, verdict = jacobian_and_isolated_check(fermat7)
    assert sorted(map(str, ideal.generators)) == ["3*x^2", "3*y^2", "3*z^2"]
    assert verdict.status == Status.CERTIFIED_TRUE


def test_degenerate_jacobian_in_characteristic_3():
    ring = GradedRing(registry_ring("fermat3", 3))
    ideal, verdict = jacobian_and_isolated_check(ring)
    assert ideal.is_zero
    assert verdict.status == Status.INCONCLUSIVE
    assert verdict.witness["warning"] == DEGENERATE


def test_jacobian_minors_vanishing_in_the_ring():
    """Every 2x2 minor of (x, y)^2 lies in (x, y)^2."""
    poly_ring = PolynomialRing(("x", "y", "z"), PrimeField(5))
    relations = tuple(poly_ring.parse(f) for f in ("x^2", "x*y", "y^2"))
    ring = GradedRing(RingPresentation(poly_ring, relations, 1))
    ideal, verdict = jacobian_and_isolated_check(ring, 4)
    assert ideal.is_zero
    assert verdict.status == Status.INCONCLUSIVE
    assert verdict.bound == {"n_hi": 4}
    assert verdict.witness["warning"] == DEGENERATE


def test_jacobian_of_regular_and_nodal_rings(poly2, nodal5):
    ideal, verdict = jacobian_and_isolated_check(poly2)
    assert [str(g) for g in ideal.generators] == ["1"]
    assert verdict.holds

    ideal, verdict = jacobian_and_isolated_check(nodal5)
    assert sorted(map(str, ideal.generators)) == ["x", "y"]
    assert verdict.status == Status.CERTIFIED_TRUE
