"""
Exact linear algebra over prime fields.

Matrices are plain numpy ``int64`` arrays of canonical residues ``0..p-1``; the
heavy lifting (row reduction, left null spaces) is delegated to ``galois``.
Every function here is pure and every returned array is read-only.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from functools import cached_property

import galois
import numpy as np

from tclab.errors import InputError

if sys.version_info >= (3, 10):
    from typing import TypeAlias

    # Dense row-major matrix of residues, dtype int64.
    MatrixGFp: TypeAlias = np.ndarray
else:
    MatrixGFp = np.ndarray

MAX_PRIME = 2**31


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=np.int64)
    array.flags.writeable = False
    return array


class PrimeField:
    """The field F_p for a machine-word prime p."""

    def __init__(self, p: int):
        if not isinstance(p, (int, np.integer)) or isinstance(p, bool):
            raise InputError(f"Characteristic must be an integer, got {p!r}.")
        p = int(p)
        if not 2 <= p < MAX_PRIME or not galois.is_prime(p):
            raise InputError(f"Characteristic {p} is not a prime below 2^31.")
        self.p = p

    @cached_property
    def gf(self) -> type[galois.FieldArray]:
        return galois.GF(self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def reduce(self, value: int) -> int:
        return int(value) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}.")
        return pow(int(a), -1, self.p)

    def matrix(self, rows, cols: int | None = None) -> MatrixGFp:
        """Coerce nested rows to a canonical residue matrix."""
        array = np.asarray(rows, dtype=np.int64)
        if array.size == 0:
            if cols is None:
                cols = array.shape[1] if array.ndim == 2 else 0
            return _frozen(np.zeros((0, cols), dtype=np.int64))
        if array.ndim == 1:
            array = array.reshape(1, -1)
        return _frozen(np.mod(array, self.p).astype(np.int64))

    def to_gf(self, matrix: MatrixGFp) -> galois.FieldArray:
        return self.gf(np.asarray(matrix, dtype=np.int64))

    def from_gf(self, array: galois.FieldArray) -> MatrixGFp:
        return _frozen(np.asarray(array.view(np.ndarray), dtype=np.int64))


def _pivots(matrix: np.ndarray) -> tuple[int, ...]:
    return tuple(int(np.flatnonzero(row)[0]) for row in matrix)


def rref(
    field: PrimeField, matrix: MatrixGFp
) -> tuple[MatrixGFp, int, tuple[int, ...]]:
    """
    Reduced row-echelon form of ``matrix`` over ``field``.

    Returns the nonzero rows of the RREF, the rank and the pivot columns. The RREF
    of a matrix is unique, so the result does not depend on elimination order.
    """
    matrix = np.asarray(matrix, dtype=np.int64)
    if matrix.ndim != 2:
        raise InputError("rref expects a two-dimensional matrix.")
    rows, cols = matrix.shape
    if rows == 0 or cols == 0 or not matrix.any():
        return _frozen(np.zeros((0, cols), dtype=np.int64)), 0, ()

    reduced = field.from_gf(field.to_gf(matrix).row_reduce())
    reduced = reduced[reduced.any(axis=1)]
    return _frozen(reduced), reduced.shape[0], _pivots(reduced)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^ambient_dim held as an RREF basis with its pivots."""

    field: PrimeField
    ambient_dim: int
    basis: MatrixGFp
    pivots: tuple[int, ...]

    @classmethod
    def zero(cls, field: PrimeField, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, _frozen(np.zeros((0, ambient_dim))), ())

    @classmethod
    def full(cls, field: PrimeField, ambient_dim: int) -> Subspace:
        return cls(
            field,
            ambient_dim,
            _frozen(np.eye(ambient_dim, dtype=np.int64)),
            tuple(range(ambient_dim)),
        )

    @classmethod
    def spanned_by(
        cls, field: PrimeField, ambient_dim: int, rows: MatrixGFp
    ) -> Subspace:
        if ambient_dim == 0:
            return cls.zero(field, 0)
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, ambient_dim)
        basis, _, pivots = rref(field, rows)
        return cls(field, ambient_dim, basis, pivots)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, self.basis.tobytes()))

    def _check_vector(self, vector) -> np.ndarray:
        vector = np.mod(np.asarray(vector, dtype=np.int64), self.field.p)
        if vector.shape != (self.ambient_dim,):
            raise InputError(
                f"Vector of length {vector.shape[-1] if vector.ndim else 0} does not "
                f"live in an ambient space of dimension {self.ambient_dim}."
            )
        return vector

    def _check_compatible(self, other: Subspace):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise InputError(
                f"Subspaces of F_{self.field.p}^{self.ambient_dim} and "
                f"F_{other.field.p}^{other.ambient_dim} cannot be combined."
            )

    def reduce(self, vector) -> MatrixGFp:
        """Residue of ``vector`` after clearing every pivot column."""
        vector = self._check_vector(vector)
        if not self.dim:
            return _frozen(vector)
        gf = self.field.gf
        coefficients = gf(vector[list(self.pivots)])
        residue = gf(vector) - coefficients @ gf(self.basis)
        return self.field.from_gf(residue)

    def contains(self, vector) -> bool:
        return not self.reduce(vector).any()

    def contains_subspace(self, other: Subspace) -> bool:
        self._check_compatible(other)
        return all(self.contains(row) for row in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def __add__(self, other: Subspace) -> Subspace:
        self._check_compatible(other)
        if not other.dim:
            return self
        if not self.dim:
            return other
        return Subspace.spanned_by(
            self.field, self.ambient_dim, np.vstack([self.basis, other.basis])
        )

    def __and__(self, other: Subspace) -> Subspace:
        self._check_compatible(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.field, self.ambient_dim)
        coefficients = preimage(self.field, self.basis, other)
        if not coefficients.dim:
            return Subspace.zero(self.field, self.ambient_dim)
        gf = self.field.gf
        rows = self.field.from_gf(gf(coefficients.basis) @ gf(self.basis))
        return Subspace.spanned_by(self.field, self.ambient_dim, rows)

    def complement(self, sub: Subspace) -> MatrixGFp:
        """
        Rows of this basis whose classes form a basis of ``self / (self ∩ sub)``.

        Rows are taken greedily in basis order, so the result is deterministic and
        prefers the leading (graded-lex largest) pivots.
        """
        self._check_compatible(sub)
        chosen: list[np.ndarray] = []
        span = sub
        for row in self.basis:
            if span.contains(row):
                continue
            chosen.append(row)
            span = span + Subspace.spanned_by(self.field, self.ambient_dim, row)
        if not chosen:
            return _frozen(np.zeros((0, self.ambient_dim)))
        return _frozen(np.vstack(chosen))


def membership(vector, subspace: Subspace) -> bool:
    return subspace.contains(vector)


def subspace_ops(a: Subspace, b: Subspace, kind: str) -> Subspace:
    if kind == "sum":
        return a + b
    if kind == "intersection":
        return a & b
    raise InputError(f"Unknown subspace operation {kind!r}.")


def image(field: PrimeField, rows: MatrixGFp, ambient_dim: int) -> Subspace:
    return Subspace.spanned_by(field, ambient_dim, rows)


def preimage(field: PrimeField, rows: MatrixGFp, target: Subspace) -> Subspace:
    """
    The subspace ``{λ : λ·rows ∈ target}`` of F_p^k, k = number of rows.

    One left null space of ``rows`` stacked over ``target.basis`` answers it: a
    vector ``(λ, μ)`` with ``λ·rows + μ·basis = 0`` puts ``λ·rows`` in target.
    """
    rows = np.asarray(rows, dtype=np.int64)
    k = rows.shape[0]
    if rows.ndim != 2 or rows.shape[1] != target.ambient_dim:
        raise InputError(
            f"Rows of width {rows.shape[-1]} do not map into dimension "
            f"{target.ambient_dim}."
        )
    if k == 0:
        return Subspace.zero(field, 0)
    if target.ambient_dim == 0 or not rows.any():
        return Subspace.full(field, k)

    stacked = np.vstack([rows, target.basis]) if target.dim else rows
    kernel = field.to_gf(np.ascontiguousarray(stacked.T)).null_space()
    if kernel.shape[0] == 0:
        return Subspace.zero(field, k)
    return Subspace.spanned_by(field, k, field.from_gf(kernel)[:, :k])


def kernel(field: PrimeField, rows: MatrixGFp, ambient_dim: int) -> Subspace:
    """Left kernel ``{λ : λ·rows = 0}``."""
    return preimage(field, rows, Subspace.zero(field, ambient_dim))


def rank(field: PrimeField, matrix: MatrixGFp) -> int:
    return rref(field, matrix)[1]
