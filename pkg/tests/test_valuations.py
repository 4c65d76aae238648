import threading
from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from keypolys import tower5
from keypolys.algebra.expansion import chain_expansion, reconstruct
from keypolys.errors import (
    DomainMismatch,
    GammaNotGreater,
    GeneratorExhausted,
    InvalidChain,
    LambdaNotAboveFamily,
    NotMonic,
)
from keypolys.valuations import (
    AugmentedValuation,
    GaussValuation,
    KeyChain,
    LimitValuation,
    TAdicValuation,
    TrivialValuation,
    augment,
    evaluate,
    gauss_eval,
    limit_augment,
    limit_eval,
    mu_divides_key,
    mu_equivalent,
    truncation,
    z_adic,
)
from keypolys.values import INF
from oracles import augmented_value, gauss_value, order_in, to_sympy
from strategies import F3_TOWER, Q_TOWER, nonzero, outer_polys, ratfuncs

x, y = sp.symbols("x y")
T = Q_TOWER
NU = TAdicValuation(T.top)
MU = GaussValuation(NU, T.outer, F(3, 2))
PHI = T.poly("x^2 + y^3")
MU2 = augment(MU, PHI, F(10, 3))
# a second augmentation of the same degree: PHI3 is MU2-equivalent to PHI
PHI3 = T.poly("x^2 + y^3 + y^4")
MU3 = augment(MU2, PHI3, F(7, 2))


def P(text):
    return T.poly(text)


def test_z_adic_examples():
    Z = F3_TOWER.field("z")
    assert z_adic(F3_TOWER.poly("z^3 + z^5").constant_coeff().constant_value()) == 3
    assert z_adic(Z.inv(Z.gen() ** 2)) == -2
    assert z_adic(Z.zero) is INF
    with pytest.raises(DomainMismatch):
        z_adic(F3_TOWER.top.gen())


@given(ratfuncs(T.top))
def test_t_adic_matches_sympy(a):
    expected = order_in(to_sympy(a), y)
    assert NU(a) == (INF if expected is None else expected)


def test_trivial_valuation():
    v = TrivialValuation(T.top)
    assert v(T.top.gen()) == 0 and v(T.top.zero) is INF


def test_gauss_examples():
    assert gauss_eval(NU, F(3, 2), PHI) == 3
    assert MU(P("x")) == F(3, 2)
    assert MU(P("y^5")) == 5
    assert MU(P("0")) is INF


@given(outer_polys(T))
def test_gauss_matches_sympy(f):
    expected = gauss_value(to_sympy(f), x, y, F(3, 2))
    assert MU(f) == (INF if expected is None else expected)


def test_augment_examples():
    assert evaluate(MU2, PHI) == F(10, 3)
    assert MU2(PHI * PHI + P("y^7")) == F(20, 3)
    with pytest.raises(GammaNotGreater, match="gamma 3 <= 3"):
        augment(MU, PHI, 3)
    with pytest.raises(GammaNotGreater, match="at step 1"):
        KeyChain(NU, T.outer, [(P("x"), F(3, 2)), (PHI, 3)])
    with pytest.raises(NotMonic):
        augment(MU, P("2*x^2 + y^3"), 4)
    g = P("y*x + y^2")
    assert MU2(g) == MU(g)


@given(outer_polys(T, 5, 3))
def test_augmented_matches_sympy(f):
    expected = augmented_value(to_sympy(f), x**2 + y**3, F(10, 3), x, y, F(3, 2))
    assert MU2(f) == (INF if expected is None else expected)


@pytest.mark.parametrize("spec", [MU, MU2, MU3], ids=["gauss", "one-step", "two-steps"])
@given(data=st.data())
def test_valuation_axioms(spec, data):
    f = data.draw(outer_polys(T, 4, 3))
    g = data.draw(outer_polys(T, 4, 3))
    assert spec(f * g) == spec(f) + spec(g)
    s, vf, vg = spec(f + g), spec(f), spec(g)
    assert s >= min(vf, vg)
    if vf != vg:
        assert s == min(vf, vg)


@given(nonzero(ratfuncs(T.top)), nonzero(ratfuncs(T.top)))
def test_fraction_extension(a, b):
    # MU is defined on T.outer; fractions of y-polynomials go through NU
    assert NU(a * b) == NU(a) + NU(b)
    assert NU(a / b) == NU(a) - NU(b)


def test_augmentation_monotone_and_persistent():
    chain = KeyChain(NU, T.outer, [(P("x"), F(3, 2)), (PHI, F(10, 3)), (PHI3, F(7, 2))])
    for text in ["x", "x^2+y^3", "x^2+y^3+y^4", "x^4 + y^6", "y*x^3 + x + y^9", "x^2+y^3+y^4+y^5*x"]:
        f = P(text)
        vals = [truncation(chain, i, f) for i in chain.indices()]
        assert vals == sorted(vals)
        for i in range(len(vals) - 1):
            if vals[i] == vals[i + 1]:
                assert all(v == vals[i] for v in vals[i:])


@given(outer_polys(T, 6, 4))
def test_value_invariant_under_rewriting(f):
    chain = [P("x"), PHI]
    g = reconstruct(chain_expansion(f, chain))
    assert MU2(g) == MU2(f)


def test_keychain_needs_gauss_first():
    with pytest.raises(InvalidChain):
        KeyChain(NU, T.outer, [(PHI, F(3))])
    with pytest.raises(InvalidChain):
        KeyChain(NU, T.outer, [])
    chain = KeyChain(NU, T.outer, [(P("x"), F(3, 2))])
    assert chain.stop == 0 and chain(P("x")) == F(3, 2)


def test_mu_equivalent_examples():
    assert mu_equivalent(MU, PHI, PHI)
    assert not mu_equivalent(MU, PHI, P("x^2 + 2*y^3"))
    assert not mu_equivalent(MU, P("0"), P("0"))
    p = 3
    chain = tower5.gen_Qx_chain(p, 2)
    q1, q2 = tower5.Qx(p, 1), tower5.Qx(p, 2)
    assert not mu_equivalent(chain.valuation(1), q2, q1)
    assert mu_equivalent(chain.valuation(0), q2, q1)


@given(outer_polys(T, 3, 2), outer_polys(T, 3, 2), outer_polys(T, 3, 2))
def test_mu_equivalence_is_an_equivalence(f, g, h):
    e = lambda a, b: mu_equivalent(MU2, a, b)  # noqa: E731
    if f:
        assert e(f, f)
    assert e(f, g) == e(g, f)
    if e(f, g) and e(g, h):
        assert e(f, h)


def test_mu_divides_key_examples():
    assert mu_divides_key(MU2, PHI * P("y*x + 1"))
    assert not mu_divides_key(MU2, P("y*x + 1"))
    assert not mu_divides_key(MU2, PHI + P("y^3"))
    with pytest.raises(TypeError):
        mu_divides_key(MU, PHI)


@given(outer_polys(T, 5, 3))
def test_mu_divides_key_needs_degree(f):
    if mu_divides_key(MU2, f):
        assert not f or f.degree() >= PHI.degree()


# ----------------------------------------------------------------------------
# limits


def test_limit_eval_examples():
    nu = tower5.nu_y(3)
    Y = F3_TOWER.poly_ring("y")
    q2 = tower5.gen_Qy(3, 2)[0]
    assert limit_eval(nu, q2) == F(11, 4)
    assert nu(Y.gen()) == F(1, 2)
    # the degree rule: below deg Q_{j+1} the limit is the j-th truncation
    q3 = tower5.gen_Qy(3, 3)[0]
    f = q2 * Y.gen() + q3.ring.const(F3_TOWER.field("z").gen())
    j = nu.index_for(f)
    assert tower5.degree_y(3, j + 1) > f.degree()
    assert nu(f) == nu.valuation(j)(f) == nu.valuation(j + 1)(f)


def test_limit_debug_mode_cross_checks():
    p = 3
    nu = LimitValuation(
        TAdicValuation(F3_TOWER.field("z")),
        F3_TOWER.poly_ring("y"),
        lambda j: tower5.gen_Qy(p, j),
        start=1,
        debug=True,
        max_index=8,
    )
    for j in range(1, 5):
        q = tower5.gen_Qy(p, j)[0]
        assert nu(q) == tower5.gamma_y(p, j)


def test_generator_exhausted():
    nu = LimitValuation(NU, T.outer, lambda j: [(P("x"), F(3, 2)), (PHI, F(10, 3))][j], max_index=5)
    assert nu(P("x")) == F(3, 2)
    with pytest.raises(GeneratorExhausted):
        nu(P("x^3"))


def test_continued_family_stabilizes_below_the_limit_degree():
    fam = tower5.mu_family(3)
    g = tower5.tower(3).poly("x^2 - y^2")
    assert fam(g) == fam.valuation(fam.built() - 1)(g)
    small = LimitValuation(fam.coeff_val, fam.ring, fam.produce, continued=True, bound=1, max_index=3)
    with pytest.raises(GeneratorExhausted):
        small(tower5.f_poly(3))


def test_limit_augment_examples():
    p = 3
    mu = tower5.mu_limit(p)
    f = tower5.f_poly(p)
    assert mu(f) == p
    assert mu(f * f) == 2 * p
    g = tower5.tower(p).poly("x^2 + y")
    assert mu(g) == mu.family(g)
    with pytest.raises(LambdaNotAboveFamily):
        limit_augment(tower5.mu_family(p), f, 2)
    with pytest.raises(LambdaNotAboveFamily):
        limit_augment(tower5.mu_family(p), f, F(29, 10), phi_bound=p)


def test_truncation_examples():
    p = 3
    chain = tower5.gen_Qx_chain(p, 2)
    f = tower5.f_poly(p)
    assert [truncation(chain, i, f) for i in (1, 2)] == [F(47, 16), F(191, 64)]
    for i in chain.indices():
        assert truncation(chain, i, chain.pivot(i)) == chain.gamma(i)
        c = tower5.tower(p).poly("y^2 + z")
        assert truncation(chain, i, c) == F(11, 4)


def test_concurrent_limit_evaluation_is_deterministic():
    p = 5
    fresh = LimitValuation(
        TAdicValuation(tower5.tower(p).field("z")),
        tower5.tower(p).poly_ring("y"),
        lambda j: tower5.gen_Qy(p, j),
        start=1,
        degree=lambda j: tower5.degree_y(p, j),
    )
    qs = [tower5.gen_Qy(p, j)[0] for j in range(1, 5)]
    results = []

    def work():
        results.append([fresh(q) for q in qs])

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    expected = [tower5.gamma_y(p, j) for j in range(1, 5)]
    assert all(r == expected for r in results)
    assert fresh.built() == 4


def test_augmented_rejects_wrong_ring():
    with pytest.raises(DomainMismatch):
        AugmentedValuation(MU, F3_TOWER.poly("x^2"), 4)
