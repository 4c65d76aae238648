"""Ground fields.

Ring objects carry the arithmetic; elements stay as bare Python values
(``int`` residues for F_p, ``Fraction`` for Q) so inner loops do not pay for
wrapper objects.
"""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """F_p with p an odd prime; elements are ints in ``range(p)``."""

    is_field = True
    level = 0

    def __init__(self, p: int):
        if not is_prime(p) or p == 2:
            raise ValueError(f"need an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def from_int(self, n):
        if isinstance(n, Fraction):
            return self.div(n.numerator % self.p, n.denominator % self.p)
        return n % self.p

    __call__ = from_int

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def iszero(self, a):
        return a == 0

    def isone(self, a):
        return a == 1

    def eq(self, a, b):
        return a == b

    def frobenius(self, a):
        return a

    def is_constant(self, a):
        return True

    def fmt(self, a) -> str:
        return str(a)

    def is_negative(self, a) -> bool:
        # print p-1 as "-1" etc. when that is shorter
        return a > self.p // 2

    def random_element(self, rng):
        return rng.randrange(self.p)


class RationalField:
    """Q with Fraction elements."""

    is_field = True
    level = 0
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def from_int(self, n):
        return Fraction(n)

    __call__ = from_int

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, n):
        return Fraction(a) ** n

    def iszero(self, a):
        return a == 0

    def isone(self, a):
        return a == 1

    def eq(self, a, b):
        return a == b

    def frobenius(self, a):
        raise ArithmeticError("Frobenius needs positive characteristic")

    def is_constant(self, a):
        return True

    def fmt(self, a) -> str:
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def is_negative(self, a) -> bool:
        return a < 0

    def random_element(self, rng):
        return Fraction(rng.randint(-5, 5), rng.randint(1, 3))
