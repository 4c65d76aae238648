"""Supports of initial forms and Newton polygons."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .algebra.expansion import phi_expansion
from .algebra.poly import Poly
from .values import INF, as_value, format_value


@dataclass(frozen=True)
class SupportSet:
    """Indices ``j`` whose term ``v(d_j) + j*v(phi)`` attains the minimum ``value``."""

    pivot: Poly
    value: Fraction
    indices: Tuple[int, ...]

    @property
    def delta(self) -> int:
        return max(self.indices)

    def __len__(self):
        return len(self.indices)


def expansion_values(spec, phi: Poly, h: Poly):
    """``[(j, v(d_j) + j*v(phi))]`` over the nonzero coefficients of the phi-expansion."""
    g = spec(phi)
    coeffs = phi_expansion(h, phi).coefficients
    return [(j, spec(c) + j * g) for j, c in enumerate(coeffs) if c]


def support(spec, phi: Poly, h: Poly) -> SupportSet:
    if not h:
        raise ValueError("the zero polynomial has no initial form")
    terms = expansion_values(spec, phi, h)
    best = min(v for _, v in terms)
    return SupportSet(phi, best, tuple(j for j, v in terms if v == best))


def delta(spec, phi: Poly, h: Poly) -> int:
    """Degree of the initial form of ``h`` in the image of ``phi``."""
    return support(spec, phi, h).delta


# ----------------------------------------------------------------------------
# Newton polygons


@dataclass(frozen=True)
class Side:
    slope: Fraction
    start: int  # index of the left endpoint
    end: int

    @property
    def beta(self) -> Fraction:
        """Value of the variable that makes both endpoints tie."""
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Tuple[Fraction, int], ...]  # (value, index)
    vertices: Tuple[Tuple[Fraction, int], ...]
    sides: Tuple[Side, ...] = field(default=())

    def betas(self) -> List[Fraction]:
        return [s.beta for s in self.sides]

    def csv_lines(self) -> List[str]:
        out = [f"vertex,{format_value(v)},{i}" for v, i in self.vertices]
        out += [f"side,{format_value(s.slope)},{s.start},{s.end}" for s in self.sides]
        return out


def _cross(o, a, b):
    # points are (index, value); > 0 for a counter-clockwise turn
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points):
    """Lower convex hull of ``(x, y)`` points, left to right, collinear points dropped."""
    pts = sorted(set(points))
    hull = []
    for pt in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        if hull and hull[-1][0] == pt[0]:
            continue  # same abscissa, larger ordinate
        hull.append(pt)
    return hull


def newton_polygon(coeff_val, h: Poly) -> NewtonPolygon:
    """Lower hull of the points ``(v(d_i), i)`` of ``h = sum d_i x^i``."""
    if not h:
        raise ValueError("the zero polynomial has no Newton polygon")
    pts = []
    for i, c in sorted(h.items()):
        v = coeff_val(c)
        if v is not INF:
            pts.append((i, Fraction(v)))
    hull = lower_hull(pts)
    sides = tuple(
        Side((b[1] - a[1]) / (b[0] - a[0]), a[0], b[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(
        tuple((v, i) for i, v in pts),
        tuple((v, i) for i, v in hull),
        sides,
    )


def monomial_support(coeff_val, h: Poly, beta) -> Tuple[Fraction, Tuple[int, ...]]:
    """Minimum of ``v(d_i) + i*beta`` and the indices attaining it."""
    beta = as_value(beta)
    terms = [(i, coeff_val(c) + i * beta) for i, c in h.items()]
    best = min(v for _, v in terms)
    return best, tuple(sorted(i for i, v in terms if v == best))


def determines_side(coeff_val, h: Poly, beta) -> bool:
    """At least two monomials tie for the Gauss minimum at ``beta``."""
    if not h:
        raise ValueError("the zero polynomial has no Newton polygon")
    return len(monomial_support(coeff_val, h, beta)[1]) >= 2
