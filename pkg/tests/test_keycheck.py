from fractions import Fraction as F

import pytest
from hypothesis import given

from keypolys import tower5
from keypolys.algebra.expansion import Expansion, phi_expansion
from keypolys.keycheck import (
    check_delta_monotone,
    check_minimal_sufficient,
    check_degree_rule,
    check_same_augmentation,
    check_weakly_affine,
    d_phi,
    validate_chain,
    validate_keychain,
)
from keypolys.valuations import GaussValuation, KeyChain, TAdicValuation, augment, mu_divides_key
from strategies import Q_TOWER, nonzero, outer_polys

T = Q_TOWER
NU = TAdicValuation(T.top)
MU = GaussValuation(NU, T.outer, F(3, 2))
PHI = T.poly("x^2 + y^3")
MU2 = augment(MU, PHI, F(10, 3))


def P(text):
    return T.poly(text)


def y_chain_steps(p, upto):
    return [tower5.gen_Qy(p, j) for j in range(1, upto + 1)]


def test_minimal_sufficient_examples():
    assert check_minimal_sufficient(MU2, PHI, PHI)
    assert not check_minimal_sufficient(MU, P("x"), P("y*x + 1"))
    p = 3
    nu = tower5.nu_y(p)
    q4 = tower5.gen_Qy(p, 4)[0]
    assert check_minimal_sufficient(nu.valuation(3), tower5.gen_Qy(p, 3)[0], q4)


def test_d_phi_examples():
    assert d_phi(MU2, PHI, PHI**3) == 3
    phi = P("x^2 + 5*y^3")
    assert d_phi(MU, phi, P("x^2 + y^3")) == 1


@given(nonzero(outer_polys(T, 3, 3)), nonzero(outer_polys(T, 3, 3)))
def test_d_phi_is_additive(f, g):
    assert d_phi(MU2, PHI, f * g) == d_phi(MU2, PHI, f) + d_phi(MU2, PHI, g)


@given(nonzero(outer_polys(T, 3, 3)), outer_polys(T, 3, 3))
def test_d_phi_depends_on_initial_form(f, r):
    # f + r is MU2-equivalent to f when r has larger value
    if MU2(r) > MU2(f):
        assert d_phi(MU2, PHI, f + r) == d_phi(MU2, PHI, f)


@given(nonzero(outer_polys(T, 4, 3)), nonzero(outer_polys(T, 3, 3)))
def test_minimality_consequence(f, g):
    f = f.monic() if f.degree() >= 1 else PHI
    if check_minimal_sufficient(MU2, PHI, f):
        spec = augment(MU2, f, MU2(f) + 1)
        if mu_divides_key(spec, g):
            assert g.degree() >= f.degree()


def test_weakly_affine():
    R = T.outer
    c, a, b = P("1"), P("y"), P("y^2")
    assert check_weakly_affine(Expansion(P("x"), (c, a, R.zero, b)), 3)
    assert not check_weakly_affine(Expansion(P("x"), (c, R.zero, a)), 3)
    p = 3
    for i in (1, 2):
        e = phi_expansion(tower5.f_poly(p), tower5.Qx(p, i))
        assert check_weakly_affine(e, p)
        assert e.support() == [0, p]


def test_validate_chain_y_prefix():
    p = 3
    nu0 = TAdicValuation(tower5.tower(p).field("z"))
    ring = tower5.tower(p).poly_ring("y")
    rep = validate_chain(nu0, ring, y_chain_steps(p, 5), start=1)
    assert rep.ok, rep.failures()
    assert len(rep.steps) == 5
    assert [s.degree for s in rep.steps] == [1, 2, 4, 24, 48]


def test_validate_chain_failures():
    rep = validate_chain(NU, T.outer, [(P("x"), F(3, 2)), (PHI, 3)])
    assert not rep.ok
    assert any("gamma_above: FAIL" in line for line in rep.failures())
    # beta_2 = alpha_2 * beta_1 is accepted as an augmentation but fails the inequality
    rep = validate_chain(NU, T.outer, [(P("x"), F(3, 2)), (P("x^2 + y^4"), F(3))])
    assert any("value_inequality: FAIL" in line for line in rep.failures())
    rep = validate_chain(NU, T.outer, [(PHI, F(3))])
    assert rep.failures() == ["STEP 0: CHECK gauss_pivot: FAIL first pivot must be x"]
    rep = validate_chain(NU, T.outer, [(P("x"), 1)])
    assert rep.ok


def test_validate_chain_continued():
    steps = [(P("x"), F(3, 2)), (PHI, F(10, 3)), (P("x^2 + y^3 + y^4"), F(7, 2))]
    assert validate_chain(NU, T.outer, steps).ok
    # y^4 has value 4 > 10/3, so the two pivots are equivalent: not a continued step
    rep = validate_chain(NU, T.outer, steps, continued=[(1, 2)])
    assert rep.failures() == ["STEP 2: CHECK continued_not_equivalent: FAIL"]
    rep = validate_chain(NU, T.outer, steps[:2] + [(P("x^3"), 5)], continued=[(1, 2)])
    assert any("continued_degree: FAIL" in line for line in rep.failures())


@pytest.mark.parametrize("p", [3, 5])
def test_generated_chains_validate(p):
    chain = tower5.gen_Qx_chain(p, 2)
    assert validate_keychain(chain, continued=[(0, 2)]).ok
    lines = validate_keychain(chain).lines()
    assert lines[0] == "STEP 0: CHECK monic: PASS"


def test_sampled_checks_pass_on_the_example_chain():
    chain = KeyChain(NU, T.outer, [(P("x"), F(3, 2)), (PHI, F(10, 3))])
    rep = check_degree_rule(chain, samples=50, seed=1)
    assert rep.ok and rep.samples == 50
    for text in ["x^5 + y", "x^2 + y^3", "(x^2+y^3)^2*x + y^20"]:
        assert check_delta_monotone(chain, P(text)).ok


def test_same_augmentation_cases():
    close = check_same_augmentation(MU, PHI, PHI + P("y^4"), F(10, 3), samples=50)
    assert close.ok and close.samples == 50
    far = check_same_augmentation(MU, PHI, PHI + P("y^3"), F(10, 3), samples=20)
    assert far.ok and "disagreement found" in far.note and "no disagreement" not in far.note


def test_sampled_checks_are_deterministic():
    chain = KeyChain(NU, T.outer, [(P("x"), F(3, 2)), (PHI, F(10, 3))])
    assert check_degree_rule(chain, 30, seed=7).lines() == check_degree_rule(chain, 30, seed=7).lines()
