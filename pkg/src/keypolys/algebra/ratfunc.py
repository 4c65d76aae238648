"""Rational functions ``Frac(F[t])`` over a coefficient field F.

An element is stored as ``t**shift * num / den`` where neither ``num`` nor
``den`` is divisible by ``t`` and ``den`` is monic.  Pure powers of ``t``,
the only denominators that occur in the limit tower, therefore cost nothing
to keep normalized.  Other denominators are cancelled by a gcd eagerly on
the first tower level and lazily above it (see :meth:`RatFunc.reduced`);
equality is decided by cross-multiplication either way.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainMismatch
from .poly import Poly, PolyRing, exact_div, poly_gcd


class FractionField:
    """Field of fractions of ``PolyRing(base, var)``."""

    is_field = True

    def __init__(self, base, var: str, eager_gcd: bool | None = None):
        if not base.is_field:
            raise DomainMismatch("rational functions need a coefficient field")
        self.polys = PolyRing(base, var)
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.level = base.level + 1
        self.eager_gcd = (base.level == 0) if eager_gcd is None else eager_gcd
        one = self.polys.one
        self.zero = RatFunc(self, self.polys.zero, one, 0)
        self.one = RatFunc(self, one, one, 0)

    def __repr__(self):
        return f"FractionField({self.base!r}, {self.var!r})"

    def __eq__(self, other):
        return isinstance(other, FractionField) and other.polys == self.polys

    def __hash__(self):
        return hash(("Frac", self.polys))

    # constructors -----------------------------------------------------------------
    def gen(self) -> "RatFunc":
        return RatFunc(self, self.polys.one, self.polys.one, 1)

    def from_poly(self, f: Poly) -> "RatFunc":
        if f.ring != self.polys:
            raise DomainMismatch(f"{f.ring} is not {self.polys}")
        return self.make(f, self.polys.one)

    def from_base(self, c) -> "RatFunc":
        return self.from_poly(self.polys.const(c))

    def from_int(self, n) -> "RatFunc":
        return self.from_base(self.base.from_int(n))

    def __call__(self, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            if x.field != self:
                raise DomainMismatch(f"{x.field} is not {self}")
            return x
        if isinstance(x, Poly):
            return self.from_poly(x)
        if isinstance(x, (int, Fraction)):
            return self.from_int(x)
        return self.from_base(x)

    def make(self, num: Poly, den: Poly, shift: int = 0, reduce: bool | None = None) -> "RatFunc":
        """Normalize ``t**shift * num / den``."""
        if not den:
            raise ZeroDivisionError("zero denominator")
        polys = self.polys
        if not num:
            return self.zero
        lo = num.low_degree()
        if lo:
            num = num.shift(-lo)
            shift += lo
        lo = den.low_degree()
        if lo:
            den = den.shift(-lo)
            shift -= lo
        lc = den.leading_coefficient()
        if not self.base.isone(lc):
            inv = self.base.inv(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        if den.degree() == 0:
            den = polys.one
        elif self.eager_gcd if reduce is None else reduce:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = exact_div(num, g)
                den = exact_div(den, g)
        return RatFunc(self, num, den, shift)

    # ring protocol ---------------------------------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def pow(self, a, n):
        return a ** n

    def iszero(self, a):
        return not a.num._t

    def isone(self, a):
        return a.shift == 0 and a.num.is_one() and a.den.is_one()

    def eq(self, a, b):
        return a == b

    def frobenius(self, a):
        return a.frobenius()

    def is_constant(self, a):
        return a.is_constant()

    def fmt(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        return a.den.is_one() and self.polys.is_negative(a.num)

    def is_compound(self, a) -> bool:
        if not a.den.is_one() or a.shift < 0:
            return True
        return len(a.num) > 1 or (len(a.num) == 1 and a.shift == 0 and self.polys.is_compound(a.num))


class RatFunc:
    """Element of a :class:`FractionField`; immutable."""

    __slots__ = ("field", "num", "den", "shift")

    def __init__(self, field: FractionField, num: Poly, den: Poly, shift: int):
        self.field = field
        self.num = num
        self.den = den
        self.shift = shift

    # inspection ---------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num._t

    def __bool__(self):
        return bool(self.num._t)

    def is_constant(self) -> bool:
        """True when the element lies in the coefficient field."""
        return self.shift == 0 and self.num.degree() <= 0 and self.den.degree() == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_coeff()

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0 and self.shift >= 0

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num.shift(self.shift)

    def numerator(self) -> Poly:
        """Numerator with any positive power of ``t`` folded in."""
        return self.num.shift(self.shift) if self.shift > 0 else self.num

    def denominator(self) -> Poly:
        return self.den.shift(-self.shift) if self.shift < 0 else self.den

    def reduced(self) -> "RatFunc":
        return self.field.make(self.num, self.den, self.shift, reduce=True)

    # arithmetic -----------------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field and other.field != self.field:
                raise DomainMismatch(f"cannot combine {self.field} with {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        if isinstance(other, Poly) and other.ring == self.field.polys:
            return self.field.from_poly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num._t:
            return self
        if not self.num._t:
            return other
        a, b = (self, other) if self.shift <= other.shift else (other, self)
        k = b.shift - a.shift
        if a.den.is_one() and b.den.is_one():
            num = a.num + b.num.shift(k)
            if k:
                # the constant term of a.num survives, so num stays t-free
                return RatFunc(self.field, num, a.den, a.shift)
            den = a.den
        elif a.den == b.den:
            num = a.num + b.num.shift(k)
            den = a.den
        else:
            num = a.num * b.den + (b.num * a.den).shift(k)
            den = a.den * b.den
        return self.field.make(num, den, a.shift)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den, self.shift)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num._t or not other.num._t:
            return self.field.zero
        shift = self.shift + other.shift
        if self.den.is_one() and other.den.is_one():
            # product of t-free polys is t-free; den stays 1
            num = self.num * other.num
            return RatFunc(self.field, num, self.den, shift)
        return self.field.make(self.num * other.num, self.den * other.den, shift)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num._t:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.field.make(self.den, self.num, -self.shift)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer exponent required")
        if n < 0:
            return self.inverse() ** (-n)
        p = self.field.characteristic
        if p and n and n % p == 0:
            return (self ** (n // p)).frobenius()
        if self.den.is_one():
            return RatFunc(self.field, self.num ** n, self.den, self.shift * n)
        return self.field.make(self.num ** n, self.den ** n, self.shift * n)

    def frobenius(self) -> "RatFunc":
        p = self.field.characteristic
        if not p:
            raise ArithmeticError("Frobenius needs positive characteristic")
        return RatFunc(self.field, self.num.frobenius(), self.den.frobenius(), self.shift * p)

    # comparison ----------------------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RatFunc) else other
        if other is NotImplemented or not isinstance(other, RatFunc):
            return NotImplemented
        if other.field != self.field:
            return False
        if self.shift != other.shift:
            return not self.num._t and not other.num._t
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        r = self.reduced()
        return hash((r.shift, r.num, r.den))

    # display -------------------------------------------------------------------------
    def __str__(self):
        if not self.num._t:
            return "0"
        if not self.den.is_one() and not self.field.eager_gcd:
            self = self.reduced()
        num = self.num.shift(self.shift) if self.shift > 0 else self.num
        den = self.den.shift(-self.shift) if self.shift < 0 else self.den
        ns = str(num)
        if den.is_one():
            return ns
        ds = str(den)
        if len(num) > 1 or self.field.polys.is_compound(num):
            ns = f"({ns})"
        if len(den) > 1 or (len(den) == 1 and not den.is_monic()):
            ds = f"({ds})"
        elif len(den) == 1 and den.degree() > 0 and not self.field.base.isone(den.leading_coefficient()):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"
