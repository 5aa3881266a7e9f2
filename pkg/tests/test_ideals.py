import pytest

from tclab.errors import InconclusiveError, InputError
from tclab.gfp import PrimeField
from tclab.ideals import (
    IdealHandle,
    SopData,
    colon_piece,
    frobenius_power_ideal,
    ideal_piece,
    quotient_hilbert,
    sop_check,
    sop_suggest,
)
from tclab.polynomials import PolynomialRing
from tclab.ring_files import registry_ring
from tclab.rings import GradedRing, RingPresentation
from tclab.verdicts import Status, Verdict


@pytest.fixture(scope="module")
def double_line():
    """F_5[x,y]/(x^2): x is nilpotent."""
    poly_ring = PolynomialRing(("x", "y"), PrimeField(5))
    return GradedRing(RingPresentation(poly_ring, (poly_ring.parse("x^2"),), 1))


def test_ideal_handle(curve3):
    ideal = IdealHandle.parse(curve3, "a; 0; d")
    assert len(ideal) == 2
    assert ideal.label == "(a, d)"
    assert IdealHandle.generated_by(curve3, []).label == "(0)"
    with pytest.raises(InputError):
        IdealHandle.parse(curve3, "a + b^2")


def test_ideal_piece_and_quotient_hilbert(poly2, curve3):
    ideal = IdealHandle.parse(poly2, "x; y")
    assert quotient_hilbert(ideal, range(3)) == [(0, 1), (1, 0), (2, 0)]
    assert ideal_piece(IdealHandle.parse(curve3, "a; d"), 2).dim == 7
    assert ideal_piece(IdealHandle.parse(curve3, "a"), 2).dim == 4


def test_annihilator_as_colon(nodal5):
    zero = IdealHandle.zero(nodal5)
    piece = colon_piece(zero, nodal5.parse("x"), 1)
    assert piece.dim == 1
    assert piece.contains(nodal5.coordinates(nodal5.parse("y")))
    assert colon_piece(zero, nodal5.poly_ring.zero(), 1).dim == 2


def test_colon_of_the_quartic_cone(curve3):
    """b^2·d = a·c^2, so b^2 lies in (a) : d but not in (a)."""
    ideal = IdealHandle.parse(curve3, "a")
    piece = colon_piece(ideal, curve3.parse("d"), 2)
    b2 = curve3.coordinates(curve3.parse("b^2"))
    assert piece.dim == 5
    assert piece.contains(b2)
    assert not ideal_piece(ideal, 2).contains(b2)


def test_frobenius_power_ideal(poly2):
    ideal = IdealHandle.parse(poly2, "x; y")
    bracket = frobenius_power_ideal(ideal, 1)
    assert [str(g) for g in bracket] == ["x^7", "y^7"]
    assert bracket.label == "(x, y)^[7]"
    assert frobenius_power_ideal(ideal, 0) is ideal
    with pytest.raises(InputError):
        frobenius_power_ideal(ideal, -1)


def test_sop_data(curve3):
    sop = SopData.parse(curve3, "a; d")
    assert sop.degrees == (1, 1)
    assert sop.delta(2) == 2
    assert str(sop.product()) == "b*c"
    assert sop.ideal(2, skip=0).label == "(d)"

    flagged = sop.with_flag("usd", Verdict.evidence_true("usd", {"m_max": 2}))
    flagged = flagged.with_flag("dseq", Verdict.evidence_true("dseq", {"n_hi": 8}))
    squared = flagged.power(2)
    assert squared.exponent == 2
    assert [str(x) for x in squared] == ["a^2", "d^2"]
    assert squared.has_evidence("usd")
    assert not squared.has_evidence("dseq")
    with pytest.raises(InputError):
        SopData.parse(curve3, "1")


def test_sop_check_full_length(fermat7):
    verdict = sop_check(fermat7, fermat7.parse_list("x; y"))
    assert verdict.status == Status.CERTIFIED_TRUE


def test_sop_check_zero_divisor(nodal5):
    verdict = sop_check(nodal5, [nodal5.parse("x")])
    assert verdict.status == Status.EVIDENCE_FALSE


def test_sop_check_nilpotent(double_line):
    verdict = sop_check(double_line, [double_line.parse("x")])
    assert verdict.status == Status.CERTIFIED_FALSE
    assert verdict.witness == {"nilpotent": "x", "power": 2}


def test_sop_check_partial_sequence():
    ring = GradedRing(registry_ring("poly2", 10007))
    verdict = sop_check(ring, [ring.parse("x")], rng_seed=1)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.bound["completion"] == 1


def test_sop_check_too_long(poly2):
    with pytest.raises(InputError):
        sop_check(poly2, poly2.parse_list("x; y; x + y"))


def test_sop_suggest():
    ring = GradedRing(registry_ring("fermat3", 10007))
    sop = sop_suggest(ring, [1, 2], rng_seed=5)
    assert sop.degrees == (1, 2)
    assert sop.flags["sop"].holds
    with pytest.raises(InputError):
        sop_suggest(ring, [1])


def test_sop_suggest_gives_up():
    """A plane declared to be a curve has no one-element sop."""
    poly_ring = PolynomialRing(("x", "y"), PrimeField(5))
    ring = GradedRing(RingPresentation(poly_ring, (), 1))
    with pytest.raises(InconclusiveError) as excinfo:
        sop_suggest(ring, [1], attempts=2)
    assert excinfo.value.verdict.status == Status.INCONCLUSIVE
