import random
from fractions import Fraction

import pytest

from gsforms.errors import BudgetExceeded, ValidationError
from gsforms.fields import QQ, PrimeField
from gsforms.ideals import (
    GREVLEX,
    Budget,
    HomIdeal,
    Ideal,
    block_order,
    contains,
    eliminate,
    groebner_basis,
    intersect,
    is_projectively_empty,
    jacobian_minors,
    jacobian_smooth_certificate,
    krull_dimension,
    leading_monomial,
    normal_form,
    projective_dimension,
    radical_contains,
    saturate_irrelevant,
)
from gsforms.poly import PolyRing, parse_poly

from helpers import emptiness_oracle, has_point, membership_oracle, padd, pmul, random_form, to_poly

F5 = PrimeField(5)


def P(text, R):
    return parse_poly(text, R)


def as_set(polys):
    return {frozenset(p.terms.items()) for p in polys}


def test_groebner_examples():
    R = PolyRing(2, QQ)
    assert as_set(groebner_basis([P("T0", R)])) == as_set([P("T0", R)])
    gb = groebner_basis([P("T0^2 - T1^2", R), P("T0^2 + T1^2", R)])
    assert as_set(gb) == as_set([P("T0^2", R), P("T1^2", R)])
    gb = groebner_basis([P("T0*T1", R), P("T0^2", R)])
    assert as_set(gb) == as_set([P("T0^2", R), P("T0*T1", R)])


def test_normal_form_examples():
    R = PolyRing(2, QQ)
    I = HomIdeal(R, [P("T0^2 + T0*T1", R), P("T1^3", R)])
    assert normal_form(P("T0^2 + T0*T1", R), I).is_zero()
    assert normal_form(P("T1^2", R), HomIdeal(R, [P("T0", R)])) == P("T1^2", R)
    assert normal_form(P("T0^2 + T0*T1 + T1^2", R), HomIdeal(R, [P("T0 + T1", R)])) == P("T1^2", R)


def test_saturation_examples():
    R = PolyRing(2, QQ)
    sat = saturate_irrelevant(HomIdeal(R, [P("T0*T1", R), P("T0^2", R)]))
    assert as_set(sat.gens) == as_set([P("T0", R)])
    sat = saturate_irrelevant(HomIdeal(R, [P("T0", R), P("T1", R)]))
    assert as_set(sat.gens) == as_set([R.one()])
    sat = saturate_irrelevant(HomIdeal(R, [P("T0", R)]))
    assert as_set(sat.gens) == as_set([P("T0", R)])
    # an embedded point at the origin of P^2 is removed
    R3 = PolyRing(3, QQ)
    sat = saturate_irrelevant(HomIdeal(R3, [P("T0^2", R3), P("T0*T1", R3), P("T0*T2", R3)]))
    assert as_set(sat.gens) == as_set([P("T0", R3)])


def test_emptiness_examples():
    R = PolyRing(3, QQ)
    assert is_projectively_empty(R.gens())
    assert not is_projectively_empty([P("T0", R)])
    R2 = PolyRing(2, F5)
    assert is_projectively_empty([P("T0^2 + T1^2", R2), P("T0*T1", R2)])
    # over F_5 T0^2 + T1^2 has roots, but not together with T0*T1
    assert not is_projectively_empty([P("T0^2 + T1^2", R2)])


def test_projective_dimension_examples():
    R = PolyRing(4, QQ)
    assert projective_dimension(HomIdeal(R, [])) == 3
    assert projective_dimension([P("T0^2 + T1^2 + T2^2 + T3^2", R)]) == 2
    R2 = PolyRing(2, QQ)
    assert projective_dimension([P("T0^2 - T1^2", R2)]) == 0
    assert projective_dimension(R2.gens()) == -1
    assert krull_dimension(R2.gens()) == 0


def test_eliminate_veronese_conic():
    R = PolyRing(5, QQ)     # T0, T1, then U0, U1, U2
    gens = [P("T2 - T0^2", R), P("T3 - T1^2", R), P("T4 - T0*T1", R)]
    out = eliminate(gens, 2)
    U = out.ring
    assert isinstance(out, HomIdeal)
    assert as_set(groebner_basis(out.gens)) == as_set([P("U0*U1 - U2^2", U)])


def test_eliminate_trivial_and_number_field_style():
    R = PolyRing(2, QQ)
    assert eliminate([P("T0", R)], 1).gens == []
    # vars (x, T0, U0): x^2 + 1 and U0 - x*T0; removing x leaves U0^2 + T0^2
    R3 = PolyRing(3, QQ)
    out = eliminate([P("T0^2 + 1", R3), P("T2 - T0*T1", R3)], 1)
    want = P("U1^2 + U0^2", out.ring)
    assert contains(out, want)
    # removing T0 as well leaves nothing homogeneous
    out2 = eliminate([P("T0^2 + 1", R3), P("T2 - T0*T1", R3)], 2)
    assert out2.gens == []


def test_intersection_and_radical():
    R = PolyRing(2, QQ)
    I = intersect([P("T0", R)], [P("T1", R)])
    assert as_set(groebner_basis(I.gens)) == as_set([P("T0*T1", R)])
    assert radical_contains([P("T0^3", R)], P("T0", R))
    assert not radical_contains([P("T0^3", R)], P("T1", R))


def test_jacobian_examples():
    R = PolyRing(3, QQ)
    cert = jacobian_smooth_certificate([P("T0^2 + T1^2 + T2^2", R)])
    assert cert.dim_ok and cert.smooth and cert.dimension == 1
    cert = jacobian_smooth_certificate([P("T2*T1^2 - T0^3 - T0^2*T2", R)])
    assert cert.dim_ok and not cert.smooth
    R4 = PolyRing(4, QQ)
    cert = jacobian_smooth_certificate([P("T0", R4), P("T1", R4)])
    assert cert.ok and cert.dimension == 1
    # two copies of one hyperplane: wrong dimension and singular
    cert = jacobian_smooth_certificate([P("T0", R4), P("2*T0", R4)])
    assert not cert.dim_ok and not cert.smooth
    with pytest.raises(ValidationError):
        jacobian_smooth_certificate([P("T0 + 1", R4)])
    # zero minors are dropped; up to sign only 2*T1*T2 and 2*T0*T2 survive
    minors = jacobian_minors([P("T0*T1", R4), P("T2^2", R4)], R4)
    assert {frozenset(m.terms) for m in minors} == {frozenset({(0, 1, 1, 0)}), frozenset({(1, 0, 1, 0)})}


def test_nodal_cubic_partials_vanish_at_node():
    R = PolyRing(3, QQ)
    f = P("T2*T1^2 - T0^3 - T0^2*T2", R)
    node = [Fraction(0), Fraction(0), Fraction(1)]
    assert all(f.derivative(i).evaluate(node) == 0 for i in range(3))


def test_not_homogeneous_rejected():
    R = PolyRing(2, QQ)
    with pytest.raises(ValidationError) as exc:
        HomIdeal(R, [P("T0^2 + T1", R)])
    assert exc.value.kind == "not-homogeneous"
    Ideal(R, [P("T0^2 + T1", R)])


def test_budget_exhaustion():
    R = PolyRing(4, F5)
    rng = random.Random(0)
    gens = [to_poly(R, random_form(F5, rng, 4, 3, 1.0)) for _ in range(3)]
    with pytest.raises(BudgetExceeded):
        groebner_basis(gens, budget=Budget(max_pairs=2))


def _is_reduced_gb(gb, order):
    lms = [leading_monomial(g, order) for g in gb]
    for i, g in enumerate(gb):
        if g.terms[lms[i]] != g.ring.field.one:
            return False
        for j, m in enumerate(lms):
            if i != j and any(all(a <= b for a, b in zip(m, t)) for t in g.terms):
                return False
    return True


@pytest.mark.parametrize("seed", range(25))
def test_random_ideals_against_oracles(seed):
    rng = random.Random(1000 + seed)
    nv = rng.choice([2, 3])
    R = PolyRing(nv, F5)
    gens = [random_form(F5, rng, nv, rng.randint(1, 3)) for _ in range(rng.randint(1, nv + 1))]
    polys = [to_poly(R, g) for g in gens]
    gb = groebner_basis(polys)
    assert _is_reduced_gb(gb, GREVLEX)
    assert as_set(groebner_basis(gb)) == as_set(gb)
    # order invariance: the block order generates the same ideal
    gb_block = groebner_basis(polys, block_order(1))
    assert _is_reduced_gb(gb_block, block_order(1))
    for g in gb_block:
        assert contains(gb, g)
    for g in gb:
        assert normal_form(g, gb_block, block_order(1)).is_zero()
    # membership
    for _ in range(4):
        D = rng.randint(1, 4)
        if rng.random() < 0.5:
            f = {}
            for g in gens:
                dg = sum(next(iter(g)))
                if dg <= D:
                    f = padd(F5, f, pmul(F5, g, random_form(F5, rng, nv, D - dg)))
        else:
            f = random_form(F5, rng, nv, D)
        assert contains(HomIdeal(R, polys), to_poly(R, f)) == membership_oracle(F5, gens, f, nv)
    # emptiness against linear algebra, and against rational points
    empty = is_projectively_empty(polys)
    assert empty == emptiness_oracle(F5, gens, nv)
    for j in (1, 2):
        if has_point(5, gens, nv, j):
            assert not empty
    if empty:
        sat = saturate_irrelevant(HomIdeal(R, polys))
        assert as_set(sat.gens) == as_set([R.one()])
