"""Gauss, augmented, truncated and limit valuations on a polynomial ring.

Every valuation here is a callable on one :class:`PolyRing` ``R = F[x]``.  It
also accepts constants of ``F`` and elements of ``Frac(R)`` (value of the
numerator minus value of the denominator), which is what lets a valuation on
``k(z)[y]`` serve as the coefficient valuation of ``k(z)(y)[x]``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .algebra.expansion import phi_expansion
from .algebra.poly import Poly, PolyRing, divmod_monic
from .algebra.ratfunc import FractionField, RatFunc
from .errors import (
    DomainMismatch,
    GammaNotGreater,
    GeneratorExhausted,
    InvalidChain,
    LambdaNotAboveFamily,
    NotMonic,
)
from .values import INF, as_value, is_finite

# ----------------------------------------------------------------------------
# coefficient valuations


class TrivialValuation:
    """0 on every nonzero element of a field."""

    def __init__(self, field):
        self.field = field

    def __repr__(self):
        return f"TrivialValuation({self.field!r})"

    def __call__(self, a):
        if isinstance(a, (RatFunc, Poly)):
            return Fraction(0) if a else INF
        return INF if a == 0 else Fraction(0)


class TAdicValuation:
    """The t-adic valuation of ``k(t)``, trivial on ``k``; ``v(t) = 1``."""

    def __init__(self, field: FractionField):
        if not isinstance(field, FractionField):
            raise DomainMismatch("t-adic valuation needs a rational function field")
        self.field = field

    def __repr__(self):
        return f"TAdicValuation({self.field.var})"

    def __call__(self, a):
        if isinstance(a, RatFunc):
            if a.field != self.field:
                raise DomainMismatch(f"{a} is not in {self.field}")
            return Fraction(a.shift) if a else INF
        if isinstance(a, Poly):
            if a.ring != self.field.polys:
                raise DomainMismatch(f"{a} is not in {self.field.polys}")
            return Fraction(a.low_degree()) if a else INF
        return INF if a == 0 else Fraction(0)


def z_adic(a):
    """Order of ``a`` at ``t = 0`` for an element of a rational function field."""
    if not isinstance(a, RatFunc):
        raise DomainMismatch("z_adic expects an element of k(z)")
    if a.field.level != 1:
        raise DomainMismatch("z_adic expects an element of the first tower level")
    return TAdicValuation(a.field)(a)


# ----------------------------------------------------------------------------
# valuations on F[x]


class PolyValuation:
    """Shared plumbing: coercion of constants and fractions."""

    ring: PolyRing

    def __call__(self, f):
        if isinstance(f, Poly):
            if f.ring != self.ring:
                raise DomainMismatch(f"{f} is not in {self.ring}")
            return self.value(f)
        if isinstance(f, RatFunc) and f.field.polys == self.ring:
            if not f:
                return INF
            v = self.value(f.num) - self.value(f.den)
            if f.shift:
                v += f.shift * self.value(self.ring.gen())
            return v
        return self.value(self.ring(f))

    def value(self, f: Poly):
        raise NotImplementedError

    def term_values(self, f: Poly):
        """``(j, coefficient, value)`` for the nonzero terms of the pivot expansion."""
        raise NotImplementedError


class GaussValuation(PolyValuation):
    """``min(v(d_i) + i*beta)`` over the monomials ``d_i x^i``."""

    def __init__(self, coeff_val: Callable, ring: PolyRing, beta):
        beta = as_value(beta)
        if not is_finite(beta):
            raise ValueError("Gauss value of the variable must be finite")
        self.coeff_val = coeff_val
        self.ring = ring
        self.beta = beta
        self.phi = ring.gen()
        self.inner = None

    @property
    def gamma(self):
        return self.beta

    def __repr__(self):
        return f"GaussValuation({self.ring.var}={self.beta})"

    def term_values(self, f: Poly):
        cv, b = self.coeff_val, self.beta
        return [(e, c, cv(c) + e * b) for e, c in f.items()]

    def value(self, f: Poly):
        if not f:
            return INF
        cv, b = self.coeff_val, self.beta
        return min(cv(c) + e * b for e, c in f.items())


class AugmentedValuation(PolyValuation):
    """``[inner; phi -> gamma]``: ``min(inner(f_j) + j*gamma)`` over the phi-expansion."""

    def __init__(self, inner: PolyValuation, phi: Poly, gamma, step=None, pivot_expansion=None):
        """``pivot_expansion``, when given, is the expansion of ``phi`` in the
        inner pivot; it is verified and then used to value ``phi`` without
        dividing (useful when ``phi`` is huge but sparse in the inner pivot).
        """
        gamma = as_value(gamma)
        if phi.ring != inner.ring:
            raise DomainMismatch("pivot is not in the valuation's ring")
        if not phi.is_monic() or phi.degree() < 1:
            raise NotMonic(f"pivot {phi} must be monic of positive degree")
        if not is_finite(gamma):
            raise ValueError("augmentation value must be finite")
        if pivot_expansion is not None:
            base = _value_from_expansion(inner, phi, pivot_expansion)
        else:
            base = inner(phi)
        if not gamma > base:
            where = f" at step {step}" if step is not None else ""
            raise GammaNotGreater(
                f"GammaNotGreater{where}: gamma {gamma} <= {base} = value of pivot", step=step
            )
        self.inner = inner
        self.ring = inner.ring
        self.phi = phi
        self.gamma = gamma
        self.inner_phi_value = base

    def __repr__(self):
        return f"AugmentedValuation(deg {self.phi.degree()}, gamma={self.gamma})"

    def term_values(self, f: Poly):
        inner, g = self.inner, self.gamma
        coeffs = phi_expansion(f, self.phi).coefficients
        return [(j, c, inner.value(c) + j * g) for j, c in enumerate(coeffs) if c]

    def value(self, f: Poly):
        if not f:
            return INF
        phi = self.phi
        if f.degree() < phi.degree():
            return self.inner.value(f)
        inner, g = self.inner, self.gamma
        if phi.degree() == 1:
            return min(
                (inner.value(c) + j * g for j, c in enumerate(phi_expansion(f, phi).coefficients) if c),
                default=INF,
            )
        best = INF
        j = 0
        q = f
        while q:
            q, r = divmod_monic(q, phi)
            if r:
                v = inner.value(r) + j * g
                if v < best:
                    best = v
            j += 1
        return best


def _value_from_expansion(inner: PolyValuation, phi: Poly, coeffs) -> object:
    """``inner(phi)`` from a claimed expansion of ``phi`` in ``inner.phi``."""
    psi = inner.phi
    d = psi.degree()
    total = phi.ring.zero
    for j, c in enumerate(coeffs):
        if c.degree() >= d:
            raise InvalidChain("expansion coefficient has too large a degree")
        if c:
            total = total + c * psi ** j
    if total != phi:
        raise InvalidChain("pivot expansion does not sum to the pivot")
    if inner.inner is None:
        coeff_val = inner.coeff_val
        terms = (coeff_val(c.constant_coeff()) + j * inner.gamma for j, c in enumerate(coeffs) if c)
    else:
        terms = (inner.inner.value(c) + j * inner.gamma for j, c in enumerate(coeffs) if c)
    return min(terms, default=INF)


def gauss_eval(coeff_val, beta, h: Poly):
    """Gauss value of ``h`` with the variable at ``beta``."""
    return GaussValuation(coeff_val, h.ring, beta)(h)


def augment(inner: PolyValuation, phi: Poly, gamma) -> AugmentedValuation:
    return AugmentedValuation(inner, phi, gamma)


def evaluate(spec, f):
    return spec(f)


def pivots(spec) -> List[PolyValuation]:
    """The steps of an iterated valuation, innermost (Gauss) first."""
    out = []
    while spec is not None:
        out.append(spec)
        spec = getattr(spec, "inner", None)
    return out[::-1]


# ----------------------------------------------------------------------------
# finite chains


class KeyChain:
    """A Gauss step followed by augmentations; ``valuation(i)`` is the i-th truncation.

    ``steps`` is a list of ``(phi, gamma)``; the first pivot must be the ring
    variable (it defines the Gauss valuation).  Indices start at ``start``.
    """

    def __init__(self, coeff_val, ring: PolyRing, steps: Sequence[Tuple[Poly, object]], start: int = 0):
        if not steps:
            raise InvalidChain("a chain needs at least the Gauss step")
        phi0, g0 = steps[0][0], steps[0][1]
        if phi0 != ring.gen():
            raise InvalidChain(f"the first pivot must be {ring.var}, got {phi0}")
        self.coeff_val = coeff_val
        self.ring = ring
        self.start = start
        vals = [GaussValuation(coeff_val, ring, g0)]
        for k, st in enumerate(steps[1:], start=start + 1):
            phi, g = st[0], st[1]
            hint = st[2] if len(st) > 2 else None
            vals.append(AugmentedValuation(vals[-1], phi, g, step=k, pivot_expansion=hint))
        self._vals = vals

    def __len__(self):
        return len(self._vals)

    @property
    def stop(self) -> int:
        """Index of the last step."""
        return self.start + len(self._vals) - 1

    def indices(self):
        return range(self.start, self.stop + 1)

    def valuation(self, i: int) -> PolyValuation:
        if not self.start <= i <= self.stop:
            raise InvalidChain(f"chain has no step {i}")
        return self._vals[i - self.start]

    def pivot(self, i: int) -> Poly:
        return self.valuation(i).phi

    def gamma(self, i: int):
        return self.valuation(i).gamma

    @property
    def full(self) -> PolyValuation:
        return self._vals[-1]

    def __call__(self, f):
        return self.full(f)


def truncation(chain: KeyChain, i: int, h):
    """Value of ``h`` under the i-th truncation of ``chain``."""
    return chain.valuation(i)(h)


# ----------------------------------------------------------------------------
# limits of infinite families


class LimitValuation(PolyValuation):
    """Limit of an infinite family of augmentations.

    ``produce(j)`` returns ``(phi_j, gamma_j)``, optionally followed by the
    expansion of ``phi_j`` in ``phi_{j-1}``, for ``j >= start``; the step at
    ``start`` must have ``phi`` equal to the variable (Gauss step).  Steps are
    built on demand and cached.

    With ``continued=False`` the pivot degrees strictly increase and a value
    is read off the truncation at the smallest ``j`` whose next pivot has
    larger degree than the argument; ``degree(j)``, if given, supplies
    ``deg phi_j`` without building the pivot.  With ``continued=True`` the
    degrees are constant and the value is read off once two consecutive
    truncations agree, which then persists for the rest of the family.
    """

    def __init__(
        self,
        coeff_val,
        ring: PolyRing,
        produce: Callable[[int], Tuple[Poly, object]],
        start: int = 0,
        continued: bool = False,
        bound=None,
        max_index: int = 64,
        degree: Optional[Callable[[int], int]] = None,
        debug: bool = False,
    ):
        self.coeff_val = coeff_val
        self.ring = ring
        self.produce = produce
        self.start = start
        self.continued = continued
        self.bound = None if bound is None else as_value(bound)
        self.max_index = max_index
        self._degree = degree
        self.debug = debug
        self._vals: List[PolyValuation] = []
        self._lock = threading.RLock()

    def __repr__(self):
        kind = "continued" if self.continued else "increasing"
        return f"LimitValuation({kind}, start={self.start}, built={len(self._vals)})"

    def _step(self, j: int):
        if j > self.max_index:
            raise GeneratorExhausted(f"family index {j} exceeds the maximum {self.max_index}")
        try:
            return self.produce(j)
        except (IndexError, KeyError, LookupError) as exc:
            raise GeneratorExhausted(f"generator cannot produce index {j}") from exc

    def valuation(self, j: int) -> PolyValuation:
        """The j-th truncation, built on first use."""
        if j < self.start:
            raise GeneratorExhausted(f"family starts at index {self.start}")
        with self._lock:
            while len(self._vals) <= j - self.start:
                k = self.start + len(self._vals)
                st = self._step(k)
                phi, g = st[0], st[1]
                hint = st[2] if len(st) > 2 else None
                if not self._vals:
                    if phi != self.ring.gen():
                        raise InvalidChain(f"the first pivot must be {self.ring.var}")
                    v = GaussValuation(self.coeff_val, self.ring, g)
                else:
                    prev = self._vals[-1]
                    if self.continued and phi.degree() != prev.phi.degree():
                        raise InvalidChain(f"continued family changes degree at index {k}")
                    if not self.continued and k > self.start + 1 and phi.degree() <= prev.phi.degree():
                        raise InvalidChain(f"pivot degrees must increase at index {k}")
                    v = AugmentedValuation(prev, phi, g, step=k, pivot_expansion=hint)
                if self.bound is not None and not v.gamma < self.bound:
                    raise InvalidChain(f"value at index {k} is not below the declared bound")
                self._vals.append(v)
            return self._vals[j - self.start]

    def built(self) -> int:
        """Number of steps constructed so far."""
        return len(self._vals)

    def pivot(self, j: int) -> Poly:
        return self.valuation(j).phi

    def gamma(self, j: int):
        return self.valuation(j).gamma

    def degree(self, j: int) -> int:
        if self._degree is not None:
            return self._degree(j)
        return self.pivot(j).degree()

    def index_for(self, f: Poly) -> int:
        """Truncation index used for ``f`` under the degree rule."""
        n = f.degree()
        j = self.start
        while self.degree(j + 1) <= n:
            j += 1
            if j >= self.max_index:
                raise GeneratorExhausted(f"no family index has degree above {n}")
        return j

    def value(self, f: Poly):
        if not f:
            return INF
        if self.continued:
            return self._stable_value(f)
        j = self.index_for(f)
        v = self.valuation(j).value(f)
        if self.debug:
            w = self.valuation(j + 1).value(f)
            if w != v:
                raise AssertionError(f"limit value not stable at index {j}: {v} != {w}")
        return v

    def _stable_value(self, f: Poly):
        j = self.start
        v = self.valuation(j).value(f)
        if f.degree() < self.degree(self.start + 1):
            return v
        while True:
            j += 1
            w = self.valuation(j).value(f)
            if w == v:
                return v
            v = w

    def truncations(self, f, upto: int):
        """``[nu_start(f), ..., nu_upto(f)]``."""
        return [self.valuation(j)(f) for j in range(self.start, upto + 1)]


def limit_eval(limit: LimitValuation, f):
    return limit(f)


class LimitAugmentedValuation(PolyValuation):
    """``min(limit(f_j) + j*lam)`` over the phi-expansion, ``limit`` a continued family."""

    def __init__(self, family: LimitValuation, phi: Poly, lam, phi_bound=None):
        lam = as_value(lam)
        if phi.ring != family.ring:
            raise DomainMismatch("pivot is not in the family's ring")
        if not phi.is_monic() or phi.degree() < 1:
            raise NotMonic(f"pivot {phi} must be monic of positive degree")
        if not is_finite(lam):
            raise ValueError("limit augmentation value must be finite")
        if phi_bound is not None and lam < as_value(phi_bound):
            raise LambdaNotAboveFamily(f"lambda {lam} is below the declared bound {phi_bound}")
        # the family values of phi are only known for the steps built so far
        for j in range(family.start, family.start + max(family.built(), 1)):
            v = family.valuation(j)(phi)
            if not lam > v:
                raise LambdaNotAboveFamily(f"lambda {lam} <= {v}, the value of the pivot at index {j}")
        self.family = family
        self.inner = None
        self.ring = family.ring
        self.phi = phi
        self.gamma = lam

    def __repr__(self):
        return f"LimitAugmentedValuation(deg {self.phi.degree()}, lambda={self.gamma})"

    def term_values(self, f: Poly):
        fam, g = self.family, self.gamma
        coeffs = phi_expansion(f, self.phi).coefficients
        return [(j, c, fam.value(c) + j * g) for j, c in enumerate(coeffs) if c]

    def value(self, f: Poly):
        if not f:
            return INF
        if f.degree() < self.phi.degree():
            return self.family.value(f)
        return min(v for _, _, v in self.term_values(f))


def limit_augment(family: LimitValuation, phi: Poly, lam, phi_bound=None) -> LimitAugmentedValuation:
    return LimitAugmentedValuation(family, phi, lam, phi_bound)


# ----------------------------------------------------------------------------
# predicates


def term_values(spec, f: Poly):
    """``(j, coefficient, value)`` for the nonzero terms of the pivot expansion."""
    return spec.term_values(f)


def mu_equivalent(spec, f, g) -> bool:
    """Equal initial forms: equal finite values and a difference of larger value."""
    vf = spec(f)
    if not is_finite(vf) or spec(g) != vf:
        return False
    return spec(f - g) > vf


def mu_divides_key(spec, f: Poly) -> bool:
    """Whether the initial form of the pivot divides that of ``f``.

    For an augmented valuation this holds exactly when the constant term of
    the pivot expansion does not attain the minimum.
    """
    if not isinstance(spec, (AugmentedValuation, LimitAugmentedValuation)):
        raise TypeError("mu_divides_key needs an augmented valuation")
    if not f:
        return True
    terms = spec.term_values(f)
    best = min(v for _, _, v in terms)
    return not any(j == 0 and v == best for j, _, v in terms)
