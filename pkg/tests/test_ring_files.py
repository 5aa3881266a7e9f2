import pytest

from tclab.errors import InputError
from tclab.ring_files import (
    coerce_ring,
    default_sop,
    load_ring,
    parse_ring,
    registry,
    registry_ring,
)
from tclab.rings import USER_DECLARED, RingPresentation


def test_load_ring(data_dir):
    presentation = load_ring(data_dir / "fermat7.ring")
    assert presentation.poly_ring.names == ("x", "y", "z")
    assert presentation.poly_ring.field.p == 7
    assert [str(f) for f in presentation.relations] == ["x^3 + y^3 + z^3"]
    assert (presentation.dim, presentation.dim_provenance) == (2, USER_DECLARED)
    assert presentation.name == "fermat7.ring"
    assert default_sop(presentation) is None


def test_comments_and_weights():
    text = "# weighted\nchar 5  # prime\nvar x 1\nvar y 2\n\nrel x^4 - y^2\n"
    presentation = parse_ring(text)
    assert presentation.poly_ring.weights == (1, 2)
    assert presentation.dim is None


errors = {
    "unknown-keyword": ("char 7\nvariable x 1\n", "<ring>:2:"),
    "missing-argument": ("char\n", "<ring>:1:"),
    "char-twice": ("char 7\nchar 5\n", "<ring>:2:"),
    "bad-var": ("char 7\nvar x\n", "<ring>:2:"),
    "bad-dim": ("char 7\nvar x 1\ndim two\n", "<ring>:3:"),
    "inhomogeneous": ("char 7\nvar x 1\nvar y 1\nrel x^2 + y\n", "<ring>:4:"),
    "no-char": ("var x 1\n", "missing 'char"),
    "no-vars": ("char 7\n", "no variables"),
}


@pytest.mark.parametrize("text, message", list(errors.values()), ids=list(errors))
def test_parse_errors(text, message):
    with pytest.raises(InputError, match=message):
        parse_ring(text)


@pytest.mark.parametrize("name", ["bad_char.ring", "inhomogeneous.ring", "none.ring"])
def test_bad_ring_files(data_dir, name):
    with pytest.raises(InputError):
        load_ring(data_dir / name)


def test_registry():
    assert set(registry()) == {"poly2", "fermat3", "nodalline", "curve4"}
    presentation = registry_ring("curve4", 3)
    assert presentation.name == "@curve4"
    assert len(presentation.relations) == 4
    assert default_sop(presentation) == "a; d"
    with pytest.raises(InputError, match="Unknown example ring"):
        registry_ring("cusp", 7)


def test_coerce_ring(data_dir):
    presentation = coerce_ring("@poly2", 11)
    assert presentation.poly_ring.field.p == 11
    assert coerce_ring(presentation) is presentation
    assert isinstance(coerce_ring(data_dir / "curve.ring"), RingPresentation)
    assert isinstance(coerce_ring(str(data_dir / "curve.ring")), RingPresentation)
    with pytest.raises(InputError, match="--char"):
        coerce_ring("@poly2")
