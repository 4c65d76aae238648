"""Independent reference computations built on sympy and brute force."""

from fractions import Fraction

import sympy as sp

from keypolys.algebra.poly import Poly
from keypolys.algebra.ratfunc import RatFunc


def to_sympy(a):
    """Any tower element or outer polynomial as a sympy expression."""
    if isinstance(a, Poly):
        v = sp.Symbol(a.ring.var)
        return sp.Add(*[to_sympy(c) * v**e for e, c in a.items()])
    if isinstance(a, RatFunc):
        t = sp.Symbol(a.field.var)
        return to_sympy(a.num) * t**a.shift / to_sympy(a.den)
    if isinstance(a, Fraction):
        return sp.Rational(a.numerator, a.denominator)
    return sp.Integer(a)


def order_in(expr, var):
    """Order of vanishing of a rational expression at ``var = 0``; None for 0."""
    expr = sp.together(sp.expand(expr))
    if expr == 0:
        return None
    num, den = sp.fraction(expr)
    v = sp.Symbol(var) if isinstance(var, str) else var

    def low(e):
        return min(m[0] for m in sp.Poly(sp.expand(e), v).monoms())

    return low(num) - low(den)


def gauss_value(expr, x, y, beta):
    """min over x-monomials of ord_y(coefficient) + i*beta for an expression in Q(y)[x]."""
    expr = sp.together(sp.expand(expr))
    if expr == 0:
        return None
    num, den = sp.fraction(expr)
    pn = sp.Poly(sp.expand(num), x)
    dv = order_in(den, y)
    best = None
    for (i,), c in zip(pn.monoms(), pn.coeffs()):
        v = Fraction(order_in(c, y) - dv) + i * Fraction(beta)
        best = v if best is None else min(best, v)
    return best


def augmented_value(expr, phi, gamma, x, y, beta):
    """Value of ``expr`` under [Gauss(y-adic, beta); phi -> gamma], expansion via sympy.div."""
    expr = sp.expand(expr)
    if expr == 0:
        return None
    best = None
    j = 0
    q = expr
    dom = sp.QQ.frac_field(y)
    while q != 0:
        q, r = sp.div(sp.Poly(q, x, domain=dom), sp.Poly(phi, x, domain=dom))
        r = r.as_expr()
        q = q.as_expr()
        if r != 0:
            v = gauss_value(r, x, y, beta) + j * Fraction(gamma)
            best = v if best is None else min(best, v)
        j += 1
    return best


def lower_hull_brute(points):
    """Lower hull vertices by checking each point against every pair (quadratic, no sorting tricks)."""
    pts = sorted(set(points))
    verts = []
    for k, (xk, yk) in enumerate(pts):
        if any(x == xk and y < yk for x, y in pts):
            continue
        below = False
        for a in pts:
            for b in pts:
                if a[0] < xk < b[0]:
                    # height of segment a-b at xk
                    h = a[1] + (b[1] - a[1]) * Fraction(xk - a[0], b[0] - a[0])
                    if h <= yk:
                        below = True
        if not below:
            verts.append((xk, yk))
    return verts


def monomial_min(coeff_val, h, beta):
    """Brute-force Gauss value: min over monomials, no shared helpers."""
    best = None
    for i, c in h.items():
        v = coeff_val(c) + i * beta
        best = v if best is None or v < best else best
    return best
