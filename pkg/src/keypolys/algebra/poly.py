"""Sparse univariate polynomials over an arbitrary coefficient ring.

A :class:`Poly` stores ``{exponent: coefficient}`` with no zero entries;
exponents are Python ints, so they never overflow.  Coefficient arithmetic
is delegated to the coefficient ring object, which may itself be a
:class:`PolyRing` or a fraction field; that is how the tower
k -> k(z) -> k(z)(y) -> K[x] is assembled.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from ..errors import ConstantPivot, DomainMismatch, NotMonic


class PolyRing:
    """The ring ``base[var]``."""

    is_field = False

    def __init__(self, base, var: str):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.level = base.level + 1
        self.zero = Poly(self, {})
        self.one = Poly(self, {0: base.one})

    def __repr__(self):
        return f"PolyRing({self.base!r}, {self.var!r})"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.var == self.var
            and other.base == self.base
        )

    def __hash__(self):
        return hash((self.var, self.base))

    # constructors ---------------------------------------------------------
    def gen(self) -> "Poly":
        return Poly(self, {1: self.base.one})

    def const(self, c) -> "Poly":
        if self.base.iszero(c):
            return self.zero
        return Poly(self, {0: c})

    def monomial(self, c, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent in a polynomial")
        if self.base.iszero(c):
            return self.zero
        return Poly(self, {e: c})

    def from_terms(self, terms) -> "Poly":
        """Build from ``(exponent, coefficient)`` pairs, summing repeats."""
        base = self.base
        t = {}
        for e, c in terms:
            if e < 0:
                raise ValueError("negative exponent in a polynomial")
            if e in t:
                c = base.add(t[e], c)
            if base.iszero(c):
                t.pop(e, None)
            else:
                t[e] = c
        return Poly(self, t)

    def from_int(self, n) -> "Poly":
        return self.const(self.base.from_int(n))

    def __call__(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise DomainMismatch(f"{x.ring} is not {self}")
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_int(x)
        return self.const(x)

    # ring protocol used by an enclosing PolyRing / FractionField -----------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a ** n

    def iszero(self, a):
        return not a._t

    def isone(self, a):
        return a.is_one()

    def eq(self, a, b):
        return a == b

    def frobenius(self, a):
        return a.frobenius()

    def is_constant(self, a):
        return a.degree() <= 0 and all(self.base.is_constant(c) for c in a._t.values())

    def fmt(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        if len(a._t) != 1:
            return False
        (c,) = a._t.values()
        return self.base.is_negative(c)

    def is_compound(self, a) -> bool:
        if len(a._t) > 1:
            return True
        if len(a._t) == 1:
            (e, c), = a._t.items()
            return _is_compound(self.base, c) and e == 0
        return False


def _modulus(base) -> int:
    """p when the coefficients are bare F_p residues, else 0."""
    return getattr(base, "p", 0) if base.level == 0 else 0


def _is_compound(ring, c) -> bool:
    f = getattr(ring, "is_compound", None)
    if f is not None:
        return f(c)
    s = ring.fmt(c)
    return "/" in s


class Poly:
    """Immutable sparse polynomial; build through :class:`PolyRing`."""

    __slots__ = ("ring", "_t", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._t = terms
        self._hash = None

    # inspection -------------------------------------------------------------
    @property
    def var(self):
        return self.ring.var

    @property
    def terms(self):
        """Sorted ``[(exponent, coefficient), ...]`` with exponents increasing."""
        return sorted(self._t.items())

    def items(self):
        return self._t.items()

    def exponents(self):
        return self._t.keys()

    def coeff(self, e: int):
        return self._t.get(e, self.ring.base.zero)

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return max(self._t) if self._t else -1

    def low_degree(self) -> int:
        """Smallest exponent present; -1 for zero."""
        return min(self._t) if self._t else -1

    def leading_coefficient(self):
        if not self._t:
            return self.ring.base.zero
        return self._t[max(self._t)]

    lc = leading_coefficient

    def is_monic(self) -> bool:
        return bool(self._t) and self.ring.base.isone(self.leading_coefficient())

    def is_one(self) -> bool:
        return len(self._t) == 1 and 0 in self._t and self.ring.base.isone(self._t[0])

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant_coeff(self):
        return self._t.get(0, self.ring.base.zero)

    # arithmetic ---------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise DomainMismatch(f"cannot combine {self.ring} with {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        add = self.ring.base.add
        iszero = self.ring.base.iszero
        t = dict(big)
        for e, c in small.items():
            if e in t:
                s = add(t[e], c)
                if iszero(s):
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.base.neg
        return Poly(self.ring, {e: neg(c) for e, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        base = self.ring.base
        sub, neg, iszero = base.sub, base.neg, base.iszero
        t = dict(self._t)
        for e, c in other._t.items():
            if e in t:
                s = sub(t[e], c)
                if iszero(s):
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = neg(c)
        return Poly(self.ring, t)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        base = self.ring.base
        t = {}
        get = t.get
        m = _modulus(base)
        if m:
            # F_p coefficients: accumulate plain ints, reduce once
            for eb, cb in b.items():
                for ea, ca in a.items():
                    e = ea + eb
                    t[e] = get(e, 0) + ca * cb
            return Poly(self.ring, {e: c % m for e, c in t.items() if c % m})
        add, mul, iszero = base.add, base.mul, base.iszero
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = ea + eb
                prod = mul(ca, cb)
                old = get(e)
                t[e] = prod if old is None else add(old, prod)
        return Poly(self.ring, {e: c for e, c in t.items() if not iszero(c)})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        p = self.ring.characteristic
        if p and n and n % p == 0:
            return (self ** (n // p)).frobenius()
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        """Multiply every coefficient by the coefficient-ring element ``c``."""
        base = self.ring.base
        if base.iszero(c):
            return self.ring.zero
        mul, iszero = base.mul, base.iszero
        t = {}
        for e, a in self._t.items():
            v = mul(a, c)
            if not iszero(v):
                t[e] = v
        return Poly(self.ring, t)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``var**k`` (``k`` may be negative if no term drops below 0)."""
        if k == 0:
            return self
        t = {e + k: c for e, c in self._t.items()}
        if t and min(t) < 0:
            raise ValueError("shift would create a negative exponent")
        return Poly(self.ring, t)

    def frobenius(self) -> "Poly":
        """Coefficientwise p-th power with exponents scaled by p; equals ``self**p``."""
        p = self.ring.characteristic
        if not p:
            raise ArithmeticError("Frobenius needs positive characteristic")
        frob = self.ring.base.frobenius
        return Poly(self.ring, {e * p: frob(c) for e, c in self._t.items()})

    def map_coeffs(self, fn, ring=None) -> "Poly":
        ring = ring or self.ring
        iszero = ring.base.iszero
        t = {}
        for e, c in self._t.items():
            v = fn(c)
            if not iszero(v):
                t[e] = v
        return Poly(ring, t)

    def monic(self) -> "Poly":
        if not self._t:
            return self
        return self.scale(self.ring.base.inv(self.leading_coefficient()))

    # comparison ------------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.from_int(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring or self._t.keys() != other._t.keys():
            return False
        eq = self.ring.base.eq
        return all(eq(c, other._t[e]) for e, c in self._t.items())

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.var, frozenset(self._t.items())))
        return self._hash

    # display ---------------------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r} in {self.ring.var})"


def format_poly(f: Poly) -> str:
    if not f._t:
        return "0"
    base = f.ring.base
    var = f.ring.var
    out = []
    for e in sorted(f._t, reverse=True):
        c = f._t[e]
        negative = base.is_negative(c)
        if negative:
            c = base.neg(c)
        cs = base.fmt(c)
        if _is_compound(base, c) and e > 0:
            cs = f"({cs})"
        elif _is_compound(base, c) and len(f._t) > 1:
            cs = f"({cs})"
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if not mono:
            term = cs
        elif base.isone(c):
            term = mono
        else:
            term = f"{cs}*{mono}"
        if not out:
            out.append(f"-{term}" if negative else term)
        else:
            out.append(f"- {term}" if negative else f"+ {term}")
    return " ".join(out)


def power_by_squaring(a, n: int):
    """``a**n`` by repeated multiplication only (no Frobenius shortcut)."""
    if n < 1:
        raise ValueError("exponent must be positive")
    result = None
    while n:
        if n & 1:
            result = a if result is None else result * a
        n >>= 1
        if n:
            a = a * a
    return result


def divmod_monic(f: Poly, phi: Poly):
    """Euclidean division by a monic ``phi``: ``f == q*phi + r``, ``deg r < deg phi``."""
    if f.ring != phi.ring:
        raise DomainMismatch("dividend and divisor in different rings")
    d = phi.degree()
    if d < 1:
        raise ConstantPivot("divisor must have degree >= 1")
    if not phi.is_monic():
        raise NotMonic("divisor must be monic")
    ring = f.ring
    if f.degree() < d:
        return ring.zero, f
    base = ring.base
    sub, mul, iszero = base.sub, base.mul, base.iszero
    tail = [(e - d, c) for e, c in phi._t.items() if e != d]
    rem = dict(f._t)
    q = {}
    heap = [-e for e in rem if e >= d]
    heapq.heapify(heap)
    queued = set(-e for e in heap)
    while heap:
        e = -heapq.heappop(heap)
        queued.discard(e)
        c = rem.pop(e, None)
        if c is None:
            continue
        shift = e - d
        q[shift] = c
        for k, a in tail:
            ee = shift + d + k
            old = rem.get(ee)
            prod = mul(c, a)
            new = base.neg(prod) if old is None else sub(old, prod)
            if iszero(new):
                rem.pop(ee, None)
            else:
                rem[ee] = new
                if ee >= d and ee not in queued:
                    queued.add(ee)
                    heapq.heappush(heap, -ee)
    return Poly(ring, q), Poly(ring, rem)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over a coefficient field (the zero gcd is 0)."""
    base = f.ring.base
    if not base.is_field:
        raise DomainMismatch("gcd needs a coefficient field")
    a, b = f, g
    while b:
        b_m = b.monic()
        _, r = divmod_monic(a, b_m) if b_m.degree() > 0 else (None, f.ring.zero)
        a, b = b_m, r
    return a.monic() if a else a


def exact_div(f: Poly, g: Poly) -> Poly:
    """``f / g`` when ``g`` divides ``f`` exactly (``g`` over a field)."""
    lc = g.leading_coefficient()
    inv = g.ring.base.inv(lc)
    gm = g.scale(inv)
    if gm.degree() == 0:
        return f.scale(inv)
    q, r = divmod_monic(f, gm)
    if r:
        raise ArithmeticError("division is not exact")
    return q.scale(inv)
