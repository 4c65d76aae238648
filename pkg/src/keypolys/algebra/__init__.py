"""Exact arithmetic in the coefficient tower and polynomial expansions."""

from .expansion import (
    Expansion,
    chain_expansion,
    euclid_div,
    phi_expansion,
    reconstruct,
)
from .fields import PrimeField, RationalField, is_prime
from .parse import format_element, parse
from .poly import Poly, PolyRing, divmod_monic, poly_gcd
from .ratfunc import FractionField, RatFunc
from .tower import Tower

__all__ = [
    "Expansion",
    "FractionField",
    "Poly",
    "PolyRing",
    "PrimeField",
    "RatFunc",
    "RationalField",
    "Tower",
    "chain_expansion",
    "divmod_monic",
    "euclid_div",
    "format_element",
    "is_prime",
    "parse",
    "phi_expansion",
    "poly_gcd",
    "reconstruct",
]
