"""Hypothesis strategies for tower elements and polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from keypolys.algebra.tower import Tower
from keypolys.values import INF

Q_TOWER = Tower.rational(("y",), "x")
F3_TOWER = Tower.prime(3, ("z", "y"), "x")
F5_TOWER = Tower.prime(5, ("z", "y"), "x")

small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ext_values = st.one_of(small_fracs, st.just(INF))


def _poly_from_terms(ring, coeff_strategy, max_deg, max_terms):
    return st.dictionaries(
        st.integers(0, max_deg), coeff_strategy, max_size=max_terms
    ).map(lambda d: ring.from_terms(d.items()))


def ground(field):
    if field.characteristic:
        return st.integers(0, field.characteristic - 1)
    return st.fractions(min_value=-6, max_value=6, max_denominator=4)


def ratfuncs(field, max_deg=3, max_terms=3, with_den=True):
    """Elements t^s * num / den of a fraction field over a ground field."""
    polys = field.polys
    base = field.base
    coeff = ground(base) if base.level == 0 else ratfuncs(base, 2, 2, False)
    num = _poly_from_terms(polys, coeff, max_deg, max_terms)
    shift = st.integers(-3, 3)
    den = st.just(polys.one)
    if with_den:
        # occasionally a linear factor t + c
        linear = st.integers(1, 4).map(lambda c: polys.gen() + polys.const(base.from_int(c)))
        den = st.one_of(den, linear)
    return st.builds(lambda n, d, s: field.make(n, d, s), num, den, shift)


def outer_polys(tower, max_deg=4, max_terms=3):
    return _poly_from_terms(tower.outer, ratfuncs(tower.top, 3, 2), max_deg, max_terms)


def inner_polys(field, max_deg=5, max_terms=3):
    """Polynomials in the top variable over the field below it."""
    base = field.base
    coeff = ground(base) if base.level == 0 else ratfuncs(base, 2, 2, False)
    return _poly_from_terms(field.polys, coeff, max_deg, max_terms)


def nonzero(strategy):
    return strategy.filter(lambda f: bool(f))


def as_frac(v):
    return v if v is INF else Fraction(v)
