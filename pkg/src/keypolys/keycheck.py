"""Executable checks of the key-polynomial axioms and inequalities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra.expansion import Expansion, phi_expansion
from .algebra.poly import Poly
from .errors import GammaNotGreater, KeyPolyError
from .initial_forms import delta, support
from .sampling import random_nonzero_poly, rng_for
from .valuations import AugmentedValuation, GaussValuation, KeyChain, mu_equivalent
from .values import format_value

DEFAULT_SAMPLES = 200


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class StepRecord:
    index: int
    degree: int
    alpha: Optional[int]
    beta: Fraction
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))


@dataclass
class ChainReport:
    steps: List[StepRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def lines(self) -> List[str]:
        out = []
        for s in self.steps:
            for c in s.checks:
                tail = f" {c.detail}" if c.detail else ""
                out.append(f"STEP {s.index}: CHECK {c.name}: {'PASS' if c.ok else 'FAIL'}{tail}")
        return out

    def failures(self) -> List[str]:
        return [line for line in self.lines() if ": FAIL" in line]


@dataclass
class SampleReport:
    """Outcome of a sampled check; ``violations`` holds human-readable counterexamples."""

    name: str
    samples: int = 0
    violations: List[str] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        head = f"CHECK {self.name}: {'PASS' if self.ok else 'FAIL'} samples={self.samples}"
        if self.note:
            head += f" {self.note}"
        return [head] + [f"  {v}" for v in self.violations]


# ----------------------------------------------------------------------------
# single-polynomial predicates


def check_minimal_sufficient(spec, phi: Poly, f: Poly) -> bool:
    """Sufficient test for minimality: constant leading coefficient whose term attains the value."""
    if not f:
        return False
    coeffs = phi_expansion(f, phi).coefficients
    s = len(coeffs) - 1
    lead = coeffs[s]
    if lead.degree() != 0:
        return False
    return spec(lead) + s * spec(phi) == spec(f)


def d_phi(spec, phi: Poly, f: Poly) -> int:
    """Largest expansion index attaining the value of ``f``."""
    return support(spec, phi, f).delta


def check_weakly_affine(expansion: Expansion, p: int) -> bool:
    """Nonzero coefficients only at index 0 and at powers of ``p``."""

    def ok(j):
        if j == 0:
            return True
        while j % p == 0:
            j //= p
        return j == 1

    return all(ok(j) for j in expansion.support())


# ----------------------------------------------------------------------------
# chains


def validate_chain(coeff_val, ring, steps: Sequence[Tuple[Poly, object]], start: int = 0, continued=()) -> ChainReport:
    """Check every step of a Gauss-then-augmented chain.

    ``continued`` lists ``(first, last)`` index ranges declared to form
    continued families (constant degree, increasing values, consecutive
    pivots not equivalent).
    """
    report = ChainReport()
    vals = []
    prev_deg = None
    prev_beta = None
    degree_product = 1
    for k, (phi, gamma) in enumerate(steps, start=start):
        gamma = Fraction(gamma)
        deg = phi.degree()
        alpha = None
        rec = StepRecord(k, deg, None, gamma)
        report.steps.append(rec)
        rec.add("monic", phi.is_monic(), str(phi) if not phi.is_monic() else "")
        if not vals:
            is_var = phi == ring.gen()
            rec.add("gauss_pivot", is_var, f"pivot {ring.var}" if is_var else f"first pivot must be {ring.var}")
            if not is_var:
                break
            vals.append(GaussValuation(coeff_val, ring, gamma))
        else:
            if not phi.is_monic() or deg < 1:
                break
            base = vals[-1](phi)
            rec.add("gamma_above", gamma > base, f"gamma={format_value(gamma)} previous={format_value(base)}")
            if prev_deg and deg % prev_deg == 0:
                alpha = deg // prev_deg
                rec.alpha = alpha
                rec.add("degree_ratio", True, f"alpha={alpha}")
            else:
                rec.add("degree_ratio", False, f"deg {deg} is not a multiple of {prev_deg}")
            if alpha is not None:
                degree_product *= alpha
                rec.add("degree_product", degree_product == deg, f"deg={deg} product={degree_product}")
                rec.add(
                    "value_inequality",
                    gamma > alpha * prev_beta,
                    f"beta={format_value(gamma)} alpha*previous={format_value(alpha * prev_beta)}",
                )
            if not gamma > base:
                rec.add("built", False, "later steps skipped")
                break
            try:
                vals.append(AugmentedValuation(vals[-1], phi, gamma, step=k))
            except (GammaNotGreater, KeyPolyError) as exc:
                rec.add("built", False, str(exc))
                break
            for lo, hi in continued:
                if lo < k <= hi:
                    prev_phi, prev_val = steps[k - 1 - start][0], vals[-2]
                    rec.add("continued_degree", deg == prev_deg, f"deg={deg}")
                    rec.add("continued_increasing", gamma > prev_beta, f"{format_value(prev_beta)} < {format_value(gamma)}")
                    eq = mu_equivalent(prev_val, phi, prev_phi)
                    rec.add("continued_not_equivalent", not eq, "")
        prev_deg, prev_beta = deg, gamma
    return report


def validate_keychain(chain: KeyChain, continued=()) -> ChainReport:
    steps = [(chain.pivot(i), chain.gamma(i)) for i in chain.indices()]
    return validate_chain(chain.coeff_val, chain.ring, steps, chain.start, continued)


def check_delta_monotone(chain: KeyChain, h: Poly) -> SampleReport:
    """``alpha_{i+1} * delta_{i+1}(h) <= delta_i(h)`` for every adjacent pair."""
    rep = SampleReport("delta_monotone", samples=1)
    idx = list(chain.indices())
    deltas = {i: delta(chain.valuation(i), chain.pivot(i), h) for i in idx}
    for i in idx[:-1]:
        alpha = chain.pivot(i + 1).degree() // chain.pivot(i).degree()
        if alpha * deltas[i + 1] > deltas[i]:
            rep.violations.append(
                f"i={i}: alpha={alpha} delta_next={deltas[i + 1]} delta={deltas[i]} h={h}"
            )
    return rep


def _default_coeff(ring, rng):
    from .sampling import random_element

    return lambda: random_element(ring.base, rng, 2, 2)


def check_degree_rule(chain: KeyChain, samples: int = DEFAULT_SAMPLES, seed=0, coeff=None, terms: int = 3) -> SampleReport:
    """For ``deg f < deg Q_{l+1}`` the full chain and the l-th truncation agree."""
    rng = rng_for(seed)
    rep = SampleReport("prop36")
    coeff = coeff or _default_coeff(chain.ring, rng)
    full = chain.full
    idx = list(chain.indices())
    pairs = [(i, chain.pivot(i + 1).degree()) for i in idx[:-1] if chain.pivot(i + 1).degree() > 1]
    if not pairs:
        rep.note = "no index with a larger next degree"
        return rep
    for n in range(samples):
        i, d = pairs[n % len(pairs)]
        f = random_nonzero_poly(chain.ring, rng, rng.randint(0, d - 1), terms, coeff)
        rep.samples += 1
        a, b = full(f), chain.valuation(i)(f)
        if a != b:
            rep.violations.append(f"l={i} f={f}: full={format_value(a)} truncation={format_value(b)}")
    return rep


# name used by the command line and older callers
check_prop36 = check_degree_rule


def check_same_augmentation(inner, phi1: Poly, phi2: Poly, gamma, samples: int = DEFAULT_SAMPLES, seed=0, coeff=None, degree=None) -> SampleReport:
    """Compare ``[inner; phi1 -> gamma]`` and ``[inner; phi2 -> gamma]``.

    When ``inner(phi1 - phi2) >= gamma`` the two must agree everywhere; any
    disagreement is a violation.  Otherwise the report notes whether a
    disagreeing polynomial was found (the pivots themselves are tried first).
    """
    gamma = Fraction(gamma)
    rng = rng_for(seed)
    a = AugmentedValuation(inner, phi1, gamma)
    b = AugmentedValuation(inner, phi2, gamma)
    close = inner(phi1 - phi2) >= gamma
    rep = SampleReport("same_augmentation")
    coeff = coeff or _default_coeff(inner.ring, rng)
    degree = degree if degree is not None else 2 * phi1.degree() + 1
    found = None
    for f in [phi1, phi2]:
        if a(f) != b(f):
            found = f
            break
    for _ in range(samples):
        f = random_nonzero_poly(inner.ring, rng, rng.randint(0, degree), 3, coeff)
        rep.samples += 1
        va, vb = a(f), b(f)
        if va != vb:
            if close:
                rep.violations.append(f"f={f}: {format_value(va)} != {format_value(vb)}")
            found = found or f
    if not close:
        rep.note = "pivots not close; " + ("disagreement found" if found is not None else "no disagreement found")
    return rep
