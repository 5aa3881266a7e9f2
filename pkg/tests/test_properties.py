from itertools import combinations

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tclab.gfp import PrimeField, Subspace, rref
from tclab.polynomials import Polynomial, PolynomialRing, frobenius_pow

field = PrimeField(5)
xyz = PolynomialRing(("x", "y", "z"), field)

monomials = st.tuples(*[st.integers(0, 3)] * 3)
terms = st.dictionaries(monomials, st.integers(0, 6), max_size=6)
polynomials = terms.map(lambda t: Polynomial(xyz, t))
rows = st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), max_size=5)


def minor_rank(matrix: list[list[int]], p: int) -> int:
    """The size of the largest minor that is nonzero mod p."""
    m = sympy.Matrix(matrix)
    for r in range(min(m.shape), 0, -1):
        for i in combinations(range(m.rows), r):
            for j in combinations(range(m.cols), r):
                if m.extract(list(i), list(j)).det() % p:
                    return r
    return 0


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@settings(max_examples=1000, deadline=None)
@given(terms)
def test_printed_polynomials_parse_back(p, t):
    ring = PolynomialRing(("x", "y", "z"), PrimeField(p))
    f = Polynomial(ring, t)
    assert ring.parse(str(f)) == f


@settings(max_examples=50)
@given(polynomials, polynomials)
def test_frobenius_is_additive(f, g):
    assert frobenius_pow(f + g, 1) == frobenius_pow(f, 1) + frobenius_pow(g, 1)


@given(rows)
def test_rref_is_idempotent(matrix):
    basis, rank, pivots = rref(field, np.array(matrix, dtype=np.int64).reshape(-1, 4))
    again, rank_again, pivots_again = rref(field, basis.reshape(-1, 4))
    assert rank == rank_again
    assert pivots == pivots_again
    assert again.tolist() == basis.tolist()


@given(rows, rows)
def test_dimension_formula(a, b):
    first = Subspace.spanned_by(field, 4, a)
    second = Subspace.spanned_by(field, 4, b)
    assert (first + second).dim + (first & second).dim == first.dim + second.dim


@given(rows, st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_subspaces_are_closed_under_combinations(matrix, scalars):
    span = Subspace.spanned_by(field, 4, matrix)
    combination = np.zeros(4, dtype=np.int64)
    for row, scalar in zip(matrix, scalars):
        combination += scalar * np.array(row, dtype=np.int64)
    assert span.contains(combination % 5)


@settings(max_examples=50)
@given(rows)
def test_rank_matches_the_largest_nonzero_minor(matrix):
    _, rank, _ = rref(field, np.array(matrix, dtype=np.int64).reshape(-1, 4))
    assert rank == minor_rank(matrix, 5)
