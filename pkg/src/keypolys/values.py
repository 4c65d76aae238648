"""Exact values in the rank-one value group Q, extended by a top element.

Finite values are plain :class:`fractions.Fraction` instances; the value of
zero is the singleton :data:`INF`.  Because ``Fraction`` defers to the
reflected operator for unknown types, ``min``, ``+`` and comparisons between
fractions and ``INF`` behave as expected without any wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Union


class _Infinity:
    """The absorbing top element of Q u {inf}."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("keypolys.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other == 0:
            raise ArithmeticError("0 * INF is undefined")
        if other < 0:
            raise ArithmeticError("negative multiple of INF")
        return self

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError("-INF is not a value")

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INF - INF is undefined")
        return self

    def __rsub__(self, other):
        raise ArithmeticError("cannot subtract INF")


INF = _Infinity()

ExtValue = Union[Fraction, _Infinity]


def is_finite(v) -> bool:
    return v is not INF


def as_value(v) -> ExtValue:
    """Coerce ints, fractions, strings ("3/2", "inf") to an ExtValue."""
    if v is INF:
        return v
    if isinstance(v, str):
        return parse_value(v)
    if isinstance(v, float):
        raise TypeError("floats are not exact values")
    return Fraction(v)


def parse_value(text: str) -> ExtValue:
    s = text.strip()
    if s.lower() in ("inf", "infinity", "+inf"):
        return INF
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational value: {text!r}") from exc


def format_value(v) -> str:
    """``num/den`` with the denominator omitted when it is 1; ``inf`` for INF."""
    if v is INF:
        return "inf"
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class RationalSubgroup:
    """The cyclic subgroup ``generator * Z`` of Q.

    Every finitely generated subgroup of Q is cyclic, so one nonnegative
    generator describes it; ``generator == 0`` is the trivial group.
    """

    generator: Fraction = Fraction(0)

    def __post_init__(self):
        g = Fraction(self.generator)
        object.__setattr__(self, "generator", abs(g))

    def __contains__(self, value) -> bool:
        if value is INF:
            return False
        value = Fraction(value)
        if self.generator == 0:
            return value == 0
        return (value / self.generator).denominator == 1

    def __str__(self):
        return f"({format_value(self.generator)})Z"


def subgroup_from_generators(gens: Iterable) -> RationalSubgroup:
    """Subgroup of Q generated by ``gens``.

    The generator is ``gcd(numerators) / lcd`` once every element is written
    over the least common denominator.
    """
    gens = list(gens)
    if any(g is INF for g in gens):
        raise ValueError("INF is not a group element")
    fracs = [Fraction(g) for g in gens if g != 0]
    if not fracs:
        return RationalSubgroup(Fraction(0))
    den = reduce(lcm, (g.denominator for g in fracs), 1)
    num = reduce(gcd, (abs(g.numerator) * (den // g.denominator) for g in fracs), 0)
    return RationalSubgroup(Fraction(num, den))


def divisible_in(sub: RationalSubgroup, value, m: int) -> bool:
    """True iff ``value / m`` lies in ``sub``."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return Fraction(value) / m in sub
