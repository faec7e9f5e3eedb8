"""Exact scalars, monomial orders and sparse multivariate polynomials."""

from .fields import GF, QQ, Field, PrimeField, RationalField, field_from_name
from .orders import GREVLEX, LEX, MonomialOrder, monomial_compare, parse_order
from .parsing import parse_polynomial
from .polynomial import PolyRing, Polynomial


def ring_create(names, field=QQ, order="grevlex", weights=None) -> PolyRing:
    """Build a polynomial ring; ``field`` may be a Field or a descriptor string."""
    if isinstance(field, str):
        field = field_from_name(field)
    if isinstance(order, str):
        order = parse_order(order)
    return PolyRing(names, field, order, weights)


__all__ = [
    "GF",
    "GREVLEX",
    "LEX",
    "QQ",
    "Field",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "RationalField",
    "field_from_name",
    "monomial_compare",
    "parse_order",
    "parse_polynomial",
    "ring_create",
]
