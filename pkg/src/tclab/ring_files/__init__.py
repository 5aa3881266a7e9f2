"""
Ring definition files and the curated example rings.

A ring file is line oriented, UTF-8, with ``#`` comments::

    char 7
    var x 1
    var y 1
    var z 1
    rel x^3 + y^3 + z^3
    dim 2
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple, TypeAlias

from tclab.errors import InputError
from tclab.gfp import PrimeField
from tclab.polynomials import PolynomialRing
from tclab.rings import RingPresentation

RingSource: TypeAlias = Path | str | RingPresentation

keywords = ("char", "var", "rel", "dim")


class RegistryEntry(NamedTuple):
    variables: tuple[str, ...]
    relations: tuple[str, ...]
    dim: int
    sop: str


_registry = {
    "poly2": RegistryEntry(("x", "y"), (), 2, "x; y"),
    "fermat3": RegistryEntry(("x", "y", "z"), ("x^3 + y^3 + z^3",), 2, "x; y"),
    "nodalline": RegistryEntry(("x", "y"), ("x*y",), 1, "x + y"),
    "curve4": RegistryEntry(
        ("a", "b", "c", "d"),
        ("a*d - b*c", "b^3 - a^2*c", "c^3 - b*d^2", "a*c^2 - b^2*d"),
        2,
        "a; d",
    ),
}


def registry() -> dict[str, RegistryEntry]:
    """The curated example rings by name, with declared dimension and default sop."""
    return dict(_registry)


def registry_ring(name: str, char: int) -> RingPresentation:
    try:
        entry = _registry[name]
    except KeyError:
        known = ", ".join(sorted(_registry))
        raise InputError(
            f"Unknown example ring @{name}; choose one of {known}."
        ) from None
    poly_ring = PolynomialRing(entry.variables, PrimeField(char))
    relations = tuple(poly_ring.parse(text) for text in entry.relations)
    return RingPresentation(poly_ring, relations, entry.dim, name=f"@{name}")


def default_sop(presentation: RingPresentation) -> str | None:
    """The pinned sop of a registry ring, ``None`` for rings read from files."""
    name = presentation.name or ""
    if name.startswith("@") and name[1:] in _registry:
        return _registry[name[1:]].sop
    return None


def _fail(path: Path, number: int, message: str):
    raise InputError(f"{path}:{number}: {message}")


def parse_ring(text: str, path: Path | str = "<ring>") -> RingPresentation:
    char, dim = None, None
    variables: list[tuple[str, int]] = []
    relations: list[tuple[int, str]] = []

    for number, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword not in keywords:
            _fail(path, number, f"unknown keyword {keyword!r}")
        if not rest:
            _fail(path, number, f"{keyword} needs an argument")

        if keyword == "char":
            if char is not None:
                _fail(path, number, "char given twice")
            if not rest.isdigit():
                _fail(path, number, f"char {rest!r} is not a natural number")
            char = int(rest)
        elif keyword == "var":
            fields = rest.split()
            if len(fields) != 2 or not fields[1].isdigit():
                _fail(path, number, "expected 'var <name> <weight>'")
            variables.append((fields[0], int(fields[1])))
        elif keyword == "rel":
            relations.append((number, rest))
        else:
            if dim is not None:
                _fail(path, number, "dim given twice")
            if not rest.isdigit():
                _fail(path, number, f"dim {rest!r} is not a natural number")
            dim = int(rest)

    if char is None:
        raise InputError(f"{path}: missing 'char <prime>' line.")
    if not variables:
        raise InputError(f"{path}: no variables declared.")

    names, weights = zip(*variables)
    poly_ring = PolynomialRing(names, PrimeField(char), weights)
    parsed = []
    for number, rel in relations:
        f = poly_ring.parse(rel)
        if f.is_zero:
            continue
        try:
            f.require_homogeneous("relation")
        except InputError as e:
            _fail(path, number, str(e))
        parsed.append(f)
    return RingPresentation(poly_ring, tuple(parsed), dim, name=Path(path).name)


def load_ring(path: Path | str) -> RingPresentation:
    """Read and validate a ring file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read ring file {path}: {e.strerror}.") from e
    return parse_ring(text, path)


def coerce_ring(source: RingSource, char: int | None = None) -> RingPresentation:
    """
    Accept a presentation, a ring file path or ``@name`` of an example ring, which
    takes its characteristic from ``char``.
    """
    if isinstance(source, RingPresentation):
        return source
    if isinstance(source, str) and source.startswith("@"):
        if char is None:
            raise InputError(f"Example ring {source} needs a characteristic (--char).")
        return registry_ring(source[1:], char)
    return load_ring(source)
