import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from petrikit import catalog
from petrikit.cohom import is_zero_class, pairing_vector
from petrikit.curve import Divisor, riemann_roch_space
from petrikit.deform import (
    LaurentPolynomial,
    SchifferLift,
    binomial_identity_holds,
    contraction_pairing,
    exp_lie,
    exponential_identity_holds,
    extend_section,
    first_order_extendable_dimension,
    first_order_obstruction,
    inverse_gauge_identity_holds,
    joint_first_order_system,
    kernel_model,
    obstruction_pairing,
    operator_identity_check,
    symbol_by_expansion,
    symbol_of_order,
    varsigma,
)
from petrikit.exact import DeformationSeries, ExactMatrix, LaurentSeries
from petrikit.petri import PetriTensor, build_mu0
from petrikit.verify import random_lift

Q = Fraction
E = catalog.curve("g1_x3p1")
P = E.place(2, 3)
B_E = Divisor({E.infinity: 2})
G3 = catalog.curve("g3_x7mxp1")
P11 = G3.place(1, 1)
B_3 = Divisor({G3.infinity: 2})


def lift_at(place, curve, beta=None, lift_a=None):
    return SchifferLift.from_terms(place, beta or {}, lift_a or {}, curve)


POLE = lift_at(P11, G3, {1: {-1: 1}})


@pytest.fixture(scope="module")
def pencil():
    return build_mu0(G3, B_3)


# Laurent polynomials and lifts


def test_laurent_polynomial_algebra():
    p = LaurentPolynomial({-1: 1, 1: 1})
    assert p * p == LaurentPolynomial({-2: 1, 0: 2, 2: 1})
    assert p.depth == 1 and p.min_exponent == -1
    assert LaurentPolynomial().is_zero()


def test_times_series_is_exact_on_known_window():
    p = LaurentPolynomial({-2: 3})
    s = LaurentSeries(0, [1, 1, 1], 3)
    out = p.times_series(s)
    assert out.terms() == {-2: 3, -1: 3, 0: 3} and out.trunc == 1


def test_lift_place_validation():
    with pytest.raises(ValueError):
        lift_at(E.infinity, E, {1: {-1: 1}})
    with pytest.raises(ValueError):
        lift_at(E.place(-1, 0), E, {1: {-1: 1}})
    with pytest.raises(ValueError):
        SchifferLift.from_terms(P, {0: {1: 1}})


# exp_lie


def _series(coeffs, trunc):
    return LaurentSeries(0, coeffs, trunc)


def test_exp_zero_lift_identity():
    f = DeformationSeries([LaurentSeries(-1, [1, 2, 0, -1], 6), LaurentSeries.zero(6), LaurentSeries.zero(6)], 3)
    out = exp_lie(lift_at(P, E), f, +1)
    assert all(a.agrees_with(b) for a, b in zip(out, f))


@given(st.integers(0, 2**32))
@settings(max_examples=20, deadline=None)
def test_exp_group_inverse(seed):
    rng = random.Random(seed)
    lift = random_lift(rng, E, P, orders=3)
    f = DeformationSeries([LaurentSeries(-1, [Q(rng.randint(-3, 3)) for _ in range(30)], 29) for _ in range(4)], 4)
    back = exp_lie(lift, exp_lie(lift, f, +1), -1)
    assert all(a.agrees_with(b) for a, b in zip(back, f))


def test_exp_second_order_against_sympy():
    z = sympy.symbols("z")
    b = z**-1 + 2 + z
    a2 = 3 * z**-1
    f0 = 1 + z + z**2 / 2 + z**5
    # t^1 part: b f0', t^2 part: 1/2 (L1)^2 f0 + L2 f0 with L2 f = a2 f
    L1 = lambda h: b * sympy.diff(h, z)
    oracle_t1 = sympy.expand(L1(f0))
    oracle_t2 = sympy.expand(L1(L1(f0)) / 2 + a2 * f0)
    lift = lift_at(P, E, {1: {-1: 1, 0: 2, 1: 1}}, {2: {-1: 3}})
    f = DeformationSeries([_series([1, 1, Q(1, 2), 0, 0, 1], 12), LaurentSeries.zero(12), LaurentSeries.zero(12)], 3)
    out = exp_lie(lift, f, +1)
    for got, want in [(out[1], oracle_t1), (out[2], oracle_t2)]:
        shifted = sympy.Poly(sympy.expand(want * z**4), z)
        for k in range(-3, got.trunc):
            c = sympy.Rational(shifted.coeff_monomial(z ** (k + 4)))
            assert got[k] == Q(int(c.p), int(c.q)), k


def test_exp_second_order_formula():
    lift = lift_at(P, E, {1: {-1: 1, 1: 1}})
    f0 = LaurentSeries(0, [1] * 8, 10)
    out = exp_lie(lift, DeformationSeries([f0, LaurentSeries.zero(10), LaurentSeries.zero(10)], 3), +1)
    b = lift.b(1)
    assert out[2].agrees_with(b.times_series(b.times_series(f0.derivative()).derivative()).scale(Q(1, 2)))


# first-order obstruction


def test_obstruction_vanishes_when_h1_zero():
    rng = random.Random(3)
    for _ in range(3):
        lift = random_lift(rng, E, P, orders=1, depth=3)
        for s0 in riemann_roch_space(E, B_E):
            assert is_zero_class(first_order_obstruction(lift, s0, B_E))


def test_regular_data_gives_zero_tail():
    lift = lift_at(P11, G3, {1: {0: 1, 1: 1}}, {1: {0: 2}})
    t = first_order_obstruction(lift, G3.x, B_3)
    assert t.is_zero_tail() and is_zero_class(t)


def test_obstruction_of_x_under_simple_pole():
    t = first_order_obstruction(POLE, G3.x, B_3)
    assert t.tail.terms() == {-1: 1}
    assert not is_zero_class(t)
    assert pairing_vector(t) != (0, 0)


def test_obstruction_rejects_foreign_section():
    with pytest.raises(ValueError):
        first_order_obstruction(POLE, G3.x**2, B_3)


# extension and kernel model


def test_extend_zero_lift_trivial():
    lift = lift_at(P11, G3)
    for s0 in riemann_roch_space(G3, B_3):
        r = extend_section(lift, s0, B_3, 3)
        assert r.succeeded and r.achieved_order == 2
        assert all(g.is_zero() for g in r.corrections)


@given(st.integers(0, 2**32))
@settings(max_examples=5, deadline=None)
def test_extend_genus1_always_succeeds(seed):
    rng = random.Random(seed)
    lift = random_lift(rng, E, P, orders=2, depth=1)
    for s0 in riemann_roch_space(E, B_E):
        r = extend_section(lift, s0, B_E, 4)
        assert r.succeeded and r.achieved_order == 3


def test_extend_reports_order_one_obstruction():
    r = extend_section(POLE, G3.x, B_3, 3)
    assert not r.succeeded and r.achieved_order == 0
    # the (-) convention carries the opposite sign of first_order_obstruction
    assert r.obstruction.tail.terms() == {-1: -1}


def test_extend_constant_section_unobstructed():
    r = extend_section(POLE, G3.constant(1), B_3, 3)
    assert r.succeeded


def test_joint_system_infeasible():
    j = joint_first_order_system(POLE, B_3, 3)
    jo = joint_first_order_system(POLE, B_3, 3, oracle=True)
    assert not j.feasible and not jo.feasible
    assert j.a_exponents == (-3, -2, -1)


def test_joint_system_feasible_without_pole():
    lift = lift_at(P11, G3, {1: {0: 1}})
    assert joint_first_order_system(lift, B_3, 2).feasible


def test_kernel_model_zero_lift():
    assert kernel_model(lift_at(P11, G3), B_3, 0, 3) == [2, 2, 2]


def test_kernel_model_genus1_flat():
    lift = lift_at(P, E, {1: {-1: 1, 0: 2}, 2: {-2: Q(1, 2)}}, {1: {-1: 3}})
    assert kernel_model(lift, B_E, 0, 3) == [2, 2, 2]


def test_kernel_model_detects_drop():
    dims = kernel_model(POLE, B_3, 0, 2)
    assert dims == [2, 1]
    assert first_order_extendable_dimension(POLE, B_3) == first_order_extendable_dimension(POLE, B_3, oracle=True) == 1


# pairings


def test_pairing_zero_kappa(pencil):
    assert obstruction_pairing(POLE, PetriTensor.zero(2, 2), pencil) == 0


def test_pairing_regular_lift(pencil):
    lift = lift_at(P11, G3, {1: {0: 1, 1: 1}})
    assert obstruction_pairing(lift, pencil.kernel[0], pencil) == 0


def test_pairing_genus3_value(pencil):
    k = pencil.kernel[0]
    assert obstruction_pairing(POLE, k, pencil) == contraction_pairing(POLE, k, pencil) == -1


@given(st.integers(0, 2**32))
@settings(max_examples=10, deadline=None)
def test_pairing_two_routes_agree(seed):
    rng = random.Random(seed)
    pm = build_mu0(G3, B_3)
    place = rng.choice(catalog.unramified_points("g3_x7mxp1"))
    lift = random_lift(rng, G3, place, orders=1, depth=3)
    k = pm.kernel[0].scale(rng.randint(-3, 3))
    assert obstruction_pairing(lift, k, pm) == contraction_pairing(lift, k, pm)


def test_pairing_independent_of_lift_ambiguity(pencil):
    shifted = POLE.with_lift_a([LaurentPolynomial({-2: 5, -1: 1})])
    k = pencil.kernel[0]
    assert obstruction_pairing(shifted, k, pencil) == obstruction_pairing(POLE, k, pencil)


# symbol


def test_symbol_order_zero():
    lift = lift_at(P, E, {1: {-1: 1, 2: 3}})
    assert symbol_of_order(lift, 0) == LaurentPolynomial({-1: -1, 2: -3})


def test_symbol_order_one():
    assert symbol_of_order(POLE, 1) == LaurentPolynomial({-2: Q(1, 2)})


@pytest.mark.parametrize("n", range(5))
def test_symbol_matches_expansion(n):
    lift = lift_at(P, E, {1: {-2: 1, -1: Q(-1, 2), 1: 2}})
    brute = symbol_by_expansion(lift, n)
    assert symbol_of_order(lift, n).to_series(brute.trunc).agrees_with(brute)


def test_symbol_requires_pure_data():
    with pytest.raises(ValueError):
        symbol_of_order(lift_at(P, E, {1: {-1: 1}, 2: {-1: 1}}), 1)


# operator identities


def test_binomial_base_case():
    d = ExactMatrix([[1, 2], [0, 3]])
    b = ExactMatrix([[0, 1], [5, -1]])
    assert binomial_identity_holds(d, b, 0)


def test_binomial_n1_explicit():
    d = ExactMatrix([[1, 2], [-1, 3]])
    b = ExactMatrix([[2, Q(1, 2)], [1, 0]])
    bracket = d @ b - b @ d
    lhs = d @ (b @ b) - (b @ b) @ d
    rhs = (b @ bracket - bracket @ b) + (bracket @ b).scale(2)
    assert lhs == rhs
    assert binomial_identity_holds(d, b, 1)


def test_identities_on_strict_upper_triangular():
    rng = random.Random(11)
    for _ in range(5):
        d = ExactMatrix([[Q(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)])
        b = ExactMatrix([[Q(rng.randint(-3, 3)) if j > i else 0 for j in range(4)] for i in range(4)])
        assert binomial_identity_holds(d, b, 5)
        assert exponential_identity_holds(d, b)
        assert inverse_gauge_identity_holds(d, b)


def test_varsigma_vanishes_on_commuting_pairs():
    d = ExactMatrix([[1, 2], [3, 4]])
    assert varsigma(d, ExactMatrix.zeros(2, 2)).is_zero()
    n = ExactMatrix([[0, 1], [0, 0]])
    assert varsigma(ExactMatrix.identity(2).scale(5) + n.scale(3), n).is_zero()


def test_operator_identity_report():
    rep = operator_identity_check(6, 3, 10, seed=5)
    assert rep["passed"] and rep["counterexamples"] == [] and rep["trials"] == 10
