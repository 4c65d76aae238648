"""The coefficient tower k -> k(t1) -> k(t1)(t2) and the outer ring over it."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainMismatch
from .fields import PrimeField, RationalField
from .poly import Poly, PolyRing
from .ratfunc import FractionField, RatFunc


class Tower:
    """Ground field plus successive rational function fields.

    ``Tower(PrimeField(3), ["z", "y"], outer="x")`` gives the levels
    F_3 (0), F_3(z) (1), F_3(z)(y) (2) and the outer ring F_3(z)(y)[x] (3).
    """

    def __init__(self, ground, names, outer: str | None = None):
        names = list(names)
        if len(set(names) | ({outer} if outer else set())) != len(names) + (1 if outer else 0):
            raise ValueError("tower variable names must be distinct")
        self.ground = ground
        self.names = names
        self.fields = [ground]
        for name in names:
            self.fields.append(FractionField(self.fields[-1], name))
        self.top = self.fields[-1]
        self.outer_var = outer
        self.outer = PolyRing(self.top, outer) if outer else None

    @classmethod
    def prime(cls, p: int, names=("z", "y"), outer="x"):
        return cls(PrimeField(p), names, outer)

    @classmethod
    def rational(cls, names=("y",), outer="x"):
        return cls(RationalField(), names, outer)

    def __repr__(self):
        return f"Tower({self.ground!r}, {self.names!r}, outer={self.outer_var!r})"

    @property
    def depth(self) -> int:
        return len(self.names)

    @property
    def characteristic(self) -> int:
        return self.ground.characteristic

    def field(self, name: str) -> FractionField:
        return self.fields[self.names.index(name) + 1]

    def poly_ring(self, name: str) -> PolyRing:
        """The polynomial ring ``F[name]`` whose fractions form the level ``name``."""
        if name == self.outer_var:
            return self.outer
        return self.field(name).polys

    def gen(self, name: str):
        """The variable ``name`` as an element of its own level."""
        if name == self.outer_var:
            return self.outer.gen()
        return self.field(name).gen()

    def level_of(self, a) -> int:
        if isinstance(a, (int, Fraction)):
            return 0
        if isinstance(a, RatFunc):
            return a.field.level
        if isinstance(a, Poly):
            if self.outer is not None and a.ring == self.outer:
                return self.depth + 1
            raise DomainMismatch(f"polynomial in {a.ring.var} is not a tower element")
        raise DomainMismatch(f"not a tower element: {a!r}")

    def lift(self, a, level: int):
        """Embed ``a`` into tower level ``level`` (>= its own level)."""
        cur = self.level_of(a)
        if cur > level:
            raise DomainMismatch(f"cannot lower an element from level {cur} to {level}")
        if cur == 0:
            a = self.ground.from_int(a)
        while cur < level:
            if cur == self.depth:
                a = self.outer.const(a)
            else:
                a = self.fields[cur + 1].from_base(a)
            cur += 1
        return a

    def poly(self, text: str):
        """Parse ``text`` into the outer ring (or the top field if there is none)."""
        from .parse import parse

        return parse(text, self)
