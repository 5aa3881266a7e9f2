import pytest

from tclab.bounds import Window
from tclab.errors import InputError
from tclab.gfp import PrimeField
from tclab.ideals import SopData
from tclab.polynomials import PolynomialRing
from tclab.rings import GradedRing, RingPresentation
from tclab.sequences import (
    hypersurface_persistence_check,
    is_d_sequence,
    is_standard,
    is_strong_d_sequence,
    is_usd,
    usd_power_search,
)
from tclab.verdicts import Status

small = Window(n_lo=-1, n_hi=3)
wide = Window(n_lo=0, n_hi=10)


@pytest.fixture(scope="module")
def double_line():
    poly_ring = PolynomialRing(("x", "y"), PrimeField(5))
    return GradedRing(RingPresentation(poly_ring, (poly_ring.parse("x^2"),), 1))


def test_nilpotent_is_not_a_d_sequence(double_line):
    verdict = is_d_sequence(double_line, [double_line.parse("x")], 3)
    assert verdict.status == Status.CERTIFIED_FALSE
    assert verdict.witness == {"i": 0, "k": 1, "degree": 0, "element": "1"}


def test_regular_sequence_is_a_d_sequence(poly2):
    verdict = is_d_sequence(poly2, poly2.parse_list("x; y"), 4)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.bound == {"n_hi": 4}


def test_zero_divisor_can_be_a_d_sequence(nodal5):
    """Both x and x^2 are killed exactly by (y)."""
    x = nodal5.parse("x")
    assert is_d_sequence(nodal5, [x], 3).holds
    assert is_strong_d_sequence(nodal5, [x], 2, 3).holds


def test_usd(poly2, double_line):
    verdict = is_usd(poly2, poly2.parse_list("x; y"), 2, 3)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.bound == {"m_max": 2, "n_hi": 3}

    verdict = is_usd(double_line, [double_line.parse("x")], 1, 3)
    assert verdict.status == Status.CERTIFIED_FALSE
    assert verdict.witness["order"] == [1]
    assert verdict.witness["exponents"] == [1]


def test_usd_needs_a_positive_exponent_bound(poly2):
    with pytest.raises(InputError):
        is_usd(poly2, poly2.parse_list("x; y"), 0)


def test_cohen_macaulay_sop_is_standard(fermat7):
    verdict = is_standard(fermat7, SopData.parse(fermat7, "x; y"), small)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.bound == {"n_lo": -1, "n_hi": 3}


def test_buchsbaum_sop_is_standard(curve3):
    assert is_standard(curve3, SopData.parse(curve3, "a; d"), small).holds


def test_nilpotent_is_neither_standard_nor_usd(double_line):
    sop = SopData.parse(double_line, "x")
    standard = is_standard(double_line, sop, wide)
    assert standard.status == Status.CERTIFIED_FALSE
    assert standard.witness == {
        "reason": "not a system of parameters",
        "nilpotent": "x",
        "power": 2,
    }
    usd = is_usd(double_line, sop.elements, 2, wide)
    assert usd.status == Status.CERTIFIED_FALSE


@pytest.mark.parametrize(
    "ring_name, text",
    [("poly2", "x; y"), ("curve7", "a; d")],
    ids=("plane", "quartic-cone"),
)
def test_standard_and_usd_agree(request, ring_name, text):
    ring = request.getfixturevalue(ring_name)
    sop = SopData.parse(ring, text)
    standard = is_standard(ring, sop, wide)
    usd = is_usd(ring, sop.elements, 2, wide)
    assert standard.status == usd.status


def test_usd_power_search(poly2):
    power, verdict = usd_power_search(
        poly2, SopData.parse(poly2, "x; y"), n_max=2, m_max=1, window=2
    )
    assert power == 1
    assert verdict.holds
    with pytest.raises(InputError):
        usd_power_search(poly2, SopData.parse(poly2, "x; y"), n_max=0)


def test_hypersurface_persistence(fermat7):
    sop = SopData.parse(fermat7, "x; y")
    verdict = hypersurface_persistence_check(fermat7, sop, 1, small)
    assert verdict.status == Status.EVIDENCE_TRUE
    assert verdict.witness == {"premise": "EvidenceTrue", "conclusion": "EvidenceTrue"}
    with pytest.raises(InputError):
        hypersurface_persistence_check(fermat7, sop, 3, small)
