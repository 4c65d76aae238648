"""A continued family with a limit key polynomial in characteristic p > 2.

On ``k(z)[y]`` the valuation ``nu`` is the limit of the key polynomials
``Q_{y,j}`` below, starting from the z-adic valuation of ``k(z)``.  On
``K[x]``, ``K = k(z)(y)``, the pivots ``x - h_1 - ... - h_i`` form a family of
constant degree 1 whose values tend to 1, and ``f = x^p - y^2 - z`` has
values ``p - 1/2^(2i+2)`` along it without ever stabilizing.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List

from .algebra.fields import is_prime
from .algebra.poly import Poly, power_by_squaring
from .algebra.ratfunc import RatFunc
from .algebra.tower import Tower
from .errors import ConfigError
from .valuations import (
    KeyChain,
    LimitAugmentedValuation,
    LimitValuation,
    TAdicValuation,
)
from .values import divisible_in, subgroup_from_generators

FROBENIUS_CHECK_UP_TO = 5


@dataclass(frozen=True)
class TowerParams:
    p: int
    depth: int = 2

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ConfigError(f"p must be an odd prime, got {self.p}")
        if self.depth < 1:
            raise ConfigError("depth must be at least 1")


def _check_p(p):
    TowerParams(p, 1)


@lru_cache(maxsize=None)
def tower(p: int) -> Tower:
    """``F_p -> F_p(z) -> F_p(z)(y)`` with outer variable ``x``."""
    _check_p(p)
    return Tower.prime(p, names=("z", "y"), outer="x")


def _z(p: int, e: int):
    """``z^e`` in ``F_p(z)``, any integer ``e``."""
    return RatFunc(tower(p).field("z"), tower(p).field("z").polys.one, tower(p).field("z").polys.one, e)


# ----------------------------------------------------------------------------
# the y-side key polynomials


def gamma_y(p: int, j: int) -> Fraction:
    """Value of ``Q_{y,j}``."""
    if j < 1:
        raise ValueError("index starts at 1")
    F = Fraction
    if j == 1:
        return F(1, 2)
    if j == 2:
        return p - F(1, 4)
    if j == 3:
        return 2 * p - F(1, 8 * p)
    k, odd = divmod(j, 2)
    if not odd:
        return 2 ** (2 * k - 2) * p ** k - F(1, 2 ** (2 * k))
    return 2 ** (2 * k - 1) * p ** k - F(1, 2 ** (2 * k + 1) * p)


def degree_y(p: int, j: int) -> int:
    """``deg_y Q_{y,j}`` without building the polynomial."""
    if j < 1:
        raise ValueError("index starts at 1")
    if j == 1:
        return 1
    k, odd = divmod(j, 2)
    if odd:
        return 2 ** (2 * k) * p ** (k - 1)
    return 2 ** (2 * k - 1) * p ** (k - 1)


def z_exponent_y(p: int, j: int) -> int:
    """Exponent of ``z`` in the lower-order term of ``Q_{y,j}`` (``j >= 3``)."""
    if j == 3:
        return 2 * p - 1
    k, odd = divmod(j, 2)
    if not odd:
        return 2 ** (2 * k - 2) * p ** k - 2 ** (2 * k - 4) * p ** (k - 1)
    return 3 * 2 ** (2 * k - 3) * p ** k


class _YGenerator:
    """Memoized producer of ``Q_{y,j}`` and their lower-order terms."""

    def __init__(self, p: int):
        self.p = p
        self.T = tower(p)
        self.ring = self.T.poly_ring("y")
        self._q = {}
        self._lower = {}
        self._lock = threading.RLock()

    def _power(self, q: Poly, n: int, j: int) -> Poly:
        # q^(2p) and q^p through Frobenius; the plain power is the reference
        p = self.p
        if n == 2 * p:
            out = (q * q).frobenius()
        elif n == p:
            out = q.frobenius()
        else:
            return q ** n
        if j <= FROBENIUS_CHECK_UP_TO and out != power_by_squaring(q, n):
            raise ArithmeticError(f"Frobenius power disagrees with multiplication at index {j}")
        return out

    def lower(self, j: int) -> Poly:
        """``Q_{y,j} - Q_{y,j-1}^alpha`` (``j >= 2``)."""
        with self._lock:
            if j not in self._lower:
                self._build(j)
            return self._lower[j]

    def leading(self, j: int) -> Poly:
        """``Q_{y,j-1}^alpha``."""
        return self(j) - self.lower(j)

    def _build(self, j: int):
        p, R = self.p, self.ring
        y = R.gen()
        if j == 1:
            self._q[1] = y
            return
        if j == 2:
            low = R.const(self.T.gen("z"))
            lead = y * y
        else:
            k, odd = divmod(j, 2)
            z = R.const(_z(p, z_exponent_y(p, j)))
            if j == 3:
                low = z * y
                lead = self(2) ** 2
            elif not odd:
                low = z * self(j - 2)
                if j == 4:
                    low = -low
                lead = self._power(self(j - 1), 2 * p, j)
            else:
                low = z * self._power(self(j - 2), p, j)
                lead = self(j - 1) ** 2
        self._lower[j] = low
        self._q[j] = lead + low

    def __call__(self, j: int) -> Poly:
        if j < 1:
            raise ValueError("index starts at 1")
        with self._lock:
            if j not in self._q:
                for i in range(1, j + 1):
                    if i not in self._q:
                        self._build(i)
            return self._q[j]


@lru_cache(maxsize=None)
def _ygen(p: int) -> _YGenerator:
    return _YGenerator(p)


def gen_Qy(p: int, j: int):
    """``(Q_{y,j}, gamma_{y,j})``."""
    _check_p(p)
    return _ygen(p)(j), gamma_y(p, j)


def _y_step(p: int, j: int):
    """``gen_Qy`` plus the expansion of ``Q_{y,j}`` in ``Q_{y,j-1}``."""
    q, g = gen_Qy(p, j)
    if j == 1:
        return q, g
    alpha = degree_y(p, j) // degree_y(p, j - 1)
    zero = q.ring.zero
    return q, g, [_ygen(p).lower(j)] + [zero] * (alpha - 1) + [q.ring.one]


@lru_cache(maxsize=None)
def nu_y(p: int) -> LimitValuation:
    """The limit valuation on ``F_p(z)[y]`` (and, by fractions, on ``F_p(z)(y)``)."""
    T = tower(p)
    return LimitValuation(
        TAdicValuation(T.field("z")),
        T.poly_ring("y"),
        lambda j: _y_step(p, j),
        start=1,
        degree=lambda j: degree_y(p, j),
        max_index=40,
    )


# ----------------------------------------------------------------------------
# the x-side family


def h_exponent(p: int, i: int) -> int:
    return 2 ** (2 * i) * p ** i - 1


@lru_cache(maxsize=None)
def gen_h(p: int, i: int) -> RatFunc:
    """``h_i = Q_{y,2i+1}^2 / z^(2^(2i) p^i - 1)`` as an element of ``k(z)(y)``."""
    if i < 1:
        raise ValueError("h_i is defined for i >= 1")
    T = tower(p)
    q = gen_Qy(p, 2 * i + 1)[0]
    num = (q * q).scale(_z(p, -h_exponent(p, i)))
    return T.field("y").from_poly(num)


def h_value(p: int, i: int) -> Fraction:
    return 1 - Fraction(1, 2 ** (2 * i) * p)


def beta_x(p: int, i: int) -> Fraction:
    """Value of the i-th x-pivot; ``i = 0`` is the value of ``x`` itself."""
    return 1 - Fraction(1, 2 ** (2 * i + 2) * p)


def Qx(p: int, i: int) -> Poly:
    """``x - h_1 - ... - h_i``."""
    T = tower(p)
    x = T.outer.gen()
    s = T.field("y").zero
    for k in range(1, i + 1):
        s = s + gen_h(p, k)
    return x - T.outer.const(s)


@lru_cache(maxsize=None)
def gen_Qx_chain(p: int, depth: int) -> KeyChain:
    """Gauss step ``x -> 1 - 1/(4p)`` followed by ``Q_{x,1..depth}``."""
    TowerParams(p, depth)
    T = tower(p)
    steps = [_x_step(p, i) for i in range(depth + 1)]
    return KeyChain(nu_y(p), T.outer, steps, start=0)


def _x_step(p: int, i: int):
    """``(Q_{x,i}, beta_i)`` plus the expansion ``Q_{x,i} = Q_{x,i-1} - h_i``."""
    if i == 0:
        return Qx(p, 0), beta_x(p, 0)
    R = tower(p).outer
    return Qx(p, i), beta_x(p, i), [R.const(-gen_h(p, i)), R.one]


@lru_cache(maxsize=None)
def mu_family(p: int, max_index: int = 6) -> LimitValuation:
    """The x-family as a continued limit with values bounded by 1."""
    T = tower(p)
    return LimitValuation(
        nu_y(p),
        T.outer,
        lambda i: _x_step(p, i),
        start=0,
        continued=True,
        bound=1,
        max_index=max_index,
    )


def f_poly(p: int) -> Poly:
    """``x^p - y^2 - z``."""
    return tower(p).poly("x^%d - y^2 - z" % p)


def f_value(p: int, i: int) -> Fraction:
    return p - Fraction(1, 2 ** (2 * i + 2))


def mu_i_of_f(p: int, i: int) -> Fraction:
    """Value of ``x^p - y^2 - z`` under the i-th truncation of the x-chain."""
    return gen_Qx_chain(p, max(i, 1)).valuation(i)(f_poly(p))


def mu_limit(p: int, max_index: int = 6) -> LimitAugmentedValuation:
    """The family augmented at ``f`` with value ``p``."""
    return LimitAugmentedValuation(mu_family(p, max_index), f_poly(p), p, phi_bound=p)


# ----------------------------------------------------------------------------
# identities and certificates


def identity_sides(p: int, i: int):
    """``(-y^2 - z + h_1^p + ... + h_{i-1}^p, Q_{y,2i} / z^(2^(2i-2) p^i - p))``."""
    if i < 1:
        raise ValueError("i >= 1")
    T = tower(p)
    K = T.field("y")
    lhs = -T.poly("y^2 + z").constant_coeff()
    for k in range(1, i):
        h = gen_h(p, k)
        hp = h.frobenius()
        if k <= 2 and hp != power_by_squaring(h, p):
            raise ArithmeticError("Frobenius power of h disagrees with multiplication")
        lhs = lhs + hp
    q = gen_Qy(p, 2 * i)[0]
    e = 2 ** (2 * i - 2) * p ** i - p
    rhs = K.from_poly(q.scale(_z(p, -e)))
    return lhs, rhs


def check_identity(p: int, i: int) -> bool:
    """Exact check of the telescoping identity; at ``i = 1`` the sides differ by a sign."""
    lhs, rhs = identity_sides(p, i)
    if i == 1:
        return lhs == -rhs
    return lhs == rhs


@dataclass
class IrreducibilityRow:
    index: int  # y-index of the key polynomial whose lower term is checked
    alpha: int
    value: Fraction
    expected: Fraction
    generator: Fraction
    m: int
    divisible: bool

    @property
    def ok(self) -> bool:
        return not self.divisible and self.value == self.expected


@dataclass
class IrreducibilityReport:
    p: int
    jmax: int
    rows: List[IrreducibilityRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self):
        return [r for r in self.rows if not r.ok]


def _lower_value(p: int, k: int) -> Fraction:
    """Value of the lower-order term of ``Q_{y,k}``, computed by evaluation."""
    return nu_y(p).value(_ygen(p).lower(k))


def irreducibility_rows(p: int, k: int) -> List[IrreducibilityRow]:
    """Value-group checks for the step producing ``Q_{y,k}``.

    The lower-order term must tie with ``Q_{y,k-1}^alpha``; its value divided
    by each prime factor of ``alpha`` must fall outside the group generated
    by 1 and the values before ``gamma_{y,k-1}``.
    """
    if k < 2:
        raise ValueError("k >= 2")
    alpha = degree_y(p, k) // degree_y(p, k - 1)
    v = _lower_value(p, k)
    expected = alpha * gamma_y(p, k - 1)
    sub = subgroup_from_generators([1] + [gamma_y(p, t) for t in range(1, k - 1)])
    ms = [m for m in (2, p) if alpha % m == 0]
    return [
        IrreducibilityRow(k, alpha, v, expected, sub.generator, m, divisible_in(sub, v, m))
        for m in ms
    ]


def check_irreducibility_values(p: int, jmax: int) -> IrreducibilityReport:
    """Rows for ``Q_{y,2j}`` and ``Q_{y,2j+1}``, ``1 <= j <= jmax``."""
    _check_p(p)
    rep = IrreducibilityReport(p, jmax)
    for j in range(1, jmax + 1):
        for k in (2 * j, 2 * j + 1):
            rep.rows.extend(irreducibility_rows(p, k))
    return rep
