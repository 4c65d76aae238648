"""phi-adic and chain standard expansions."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Union

from ..errors import ConstantPivot, NotMonic
from .poly import Poly, divmod_monic


def euclid_div(f: Poly, phi: Poly):
    """Return ``(q, r)`` with ``f == q*phi + r`` and ``deg r < deg phi``."""
    return divmod_monic(f, phi)


def _check_pivot(phi: Poly):
    if phi.degree() < 1:
        raise ConstantPivot("pivot must have degree >= 1")
    if not phi.is_monic():
        raise NotMonic(f"pivot {phi} is not monic")


@dataclass(frozen=True)
class Expansion:
    """``f = sum(coefficients[j] * pivot**j)``.

    Coefficients are polynomials of degree below ``deg pivot``; in a chain
    expansion they are themselves :class:`Expansion` objects in the previous
    pivot.  The zero polynomial has no coefficients.
    """

    pivot: Poly
    coefficients: tuple

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, j):
        return self.coefficients[j]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def support(self) -> List[int]:
        """Indices with a nonzero coefficient."""
        return [j for j, c in enumerate(self.coefficients) if not _is_zero(c)]

    def polys(self) -> List[Poly]:
        """Coefficients as polynomials, collapsing nested expansions."""
        return [reconstruct(c) if isinstance(c, Expansion) else c for c in self.coefficients]


def _is_zero(c) -> bool:
    if isinstance(c, Expansion):
        return all(_is_zero(d) for d in c.coefficients)
    return not c


def taylor_coefficients(f: Poly, phi: Poly) -> List[Poly]:
    """Expansion in a monic linear ``phi = x - a`` from ``f(x) = sum f_n (phi + a)^n``.

    Binomials that vanish in the coefficient ring are skipped and powers of
    ``a`` whose exponent is a multiple of the characteristic come from the
    Frobenius map, which keeps huge ``a`` affordable in characteristic p.
    """
    ring = f.ring
    base = ring.base
    a = base.neg(phi.constant_coeff())
    p = ring.characteristic
    powers = {0: base.one, 1: a}

    def power(m):
        if m not in powers:
            if p and m % p == 0:
                powers[m] = base.frobenius(power(m // p))
            else:
                powers[m] = base.mul(power(m - 1), a)
        return powers[m]

    items = sorted(f.items())
    n_max = items[-1][0] if items else -1
    out = []
    for k in range(n_max + 1):
        acc = base.zero
        for n, fn in items:
            if n < k:
                continue
            c = comb(n, k)
            if p:
                c %= p
            if not c:
                continue
            term = base.mul(fn, power(n - k)) if n > k else fn
            if c != 1:
                term = base.mul(base.from_int(c), term)
            acc = base.add(acc, term)
        out.append(ring.const(acc))
    while out and not out[-1]:
        out.pop()
    return out


def phi_expansion(f: Poly, phi: Poly) -> Expansion:
    _check_pivot(phi)
    if phi.degree() == 1:
        return Expansion(phi, tuple(taylor_coefficients(f, phi)))
    coeffs = []
    q = f
    while q:
        q, r = divmod_monic(q, phi)
        coeffs.append(r)
    return Expansion(phi, tuple(coeffs))


def chain_expansion(f: Poly, chain: Sequence[Poly]) -> Union[Expansion, Poly]:
    """Nested expansion of ``f`` in ``chain[-1]``, then ``chain[-2]``, ... ``chain[0]``."""
    if not chain:
        return f
    prev = None
    for q in chain:
        _check_pivot(q)
        if prev is not None and q.degree() < prev.degree():
            raise ValueError("chain degrees must be nondecreasing")
        prev = q
    outer = phi_expansion(f, chain[-1])
    rest = chain[:-1]
    if not rest:
        return outer
    return Expansion(
        outer.pivot, tuple(chain_expansion(c, rest) for c in outer.coefficients)
    )


def reconstruct(e: Union[Expansion, Poly]) -> Poly:
    """Sum an (optionally nested) expansion back into a polynomial, Horner style."""
    if isinstance(e, Poly):
        return e
    phi = e.pivot
    acc = phi.ring.zero
    for c in reversed(e.coefficients):
        acc = acc * phi + reconstruct(c)
    return acc
