"""
Reduced Gröbner bases of the relation ideal, used only to pick normal monomials
and to compute normal forms.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import sympy as sp

from tclab.polynomials import Monomial, Polynomial, PolynomialRing, term_order_key


class Reducer(NamedTuple):
    """A basis element ``lead - Σ c·t``, read as the rewrite ``lead → Σ c·t``."""

    lead: Monomial
    tail: tuple[tuple[Monomial, int], ...]


def to_sympy(f: Polynomial, symbols: Sequence[sp.Symbol]) -> sp.Expr:
    return sp.Add(
        *(
            c * sp.Mul(*(s**e for s, e in zip(symbols, m) if e))
            for m, c in f.items()
        )
    )


def groebner_reducers(
    relations: Sequence[Polynomial], ring: PolynomialRing
) -> list[Reducer]:
    """
    Reducers of the reduced graded-lex Gröbner basis of ``relations`` over F_p.

    The leading monomials are exactly the monomials that are not normal, so the
    normal monomials of every degree follow from them.
    """
    relations = [f for f in relations if not f.is_zero]
    if not relations:
        return []

    p = ring.p
    symbols = [sp.Symbol(name) for name in ring.names]
    basis = sp.groebner(
        [to_sympy(f, symbols) for f in relations],
        *symbols,
        order="grlex",
        modulus=p,
    )

    reducers = []
    for g in basis.polys:
        terms = {tuple(m): int(c) % p for m, c in g.as_dict().items() if int(c) % p}
        lead = min(terms, key=term_order_key)
        scale = pow(terms.pop(lead), -1, p)
        tail = tuple(
            sorted(
                ((m, (-c * scale) % p) for m, c in terms.items()),
                key=lambda term: term_order_key(term[0]),
            )
        )
        reducers.append(Reducer(lead, tail))

    reducers.sort(key=lambda r: term_order_key(r.lead))
    return reducers
