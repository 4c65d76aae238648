"""Seeded random elements of the tower, for property checks."""

from __future__ import annotations

import random

from .algebra.poly import Poly, PolyRing
from .algebra.ratfunc import FractionField


def rng_for(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_element(field, rng: random.Random, degree: int = 2, terms: int = 2, nonzero: bool = False):
    """Random element of a ground field or rational function field.

    Rational functions are a sparse polynomial over a power of the variable,
    with an occasional linear factor in the denominator.
    """
    while True:
        if isinstance(field, FractionField):
            num = random_poly(field.polys, rng, degree, terms, lambda: random_element(field.base, rng, 1, 1))
            if not num:
                a = field.zero
            else:
                den = field.polys.one
                if rng.random() < 0.15:
                    den = field.polys.gen() + field.polys.const(random_element(field.base, rng, 0, 1, True))
                a = field.make(num, den, -rng.randint(0, degree))
        else:
            a = field.random_element(rng)
        if not nonzero or not field.iszero(a):
            return a


def random_poly(ring: PolyRing, rng: random.Random, degree: int, terms: int = 3, coeff=None, monic: bool = False) -> Poly:
    """Sparse polynomial of degree at most ``degree`` with up to ``terms`` terms."""
    if coeff is None:
        coeff = lambda: random_element(ring.base, rng)  # noqa: E731
    exps = rng.sample(range(degree + 1), min(terms, degree + 1))
    out = ring.from_terms((e, coeff()) for e in exps)
    if monic:
        out = out - ring.monomial(out.coeff(degree), degree) + ring.monomial(ring.base.one, degree)
    return out


def random_nonzero_poly(ring: PolyRing, rng: random.Random, degree: int, terms: int = 3, coeff=None) -> Poly:
    while True:
        f = random_poly(ring, rng, degree, terms, coeff)
        if f:
            return f
