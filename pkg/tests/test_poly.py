import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsforms.errors import ParseError, ValidationError
from gsforms.fields import QQ, PrimeField, make_extension
from gsforms.groups import FiniteGroup
from gsforms.poly import (
    MultiPoly,
    PolyRing,
    compose,
    format_poly,
    monomial_basis,
    parse_poly,
    substitute_linear,
    twist_coefficients,
)

from helpers import evaluate, naive_substitute

F5 = PrimeField(5)
C2 = FiniteGroup.cyclic(2)


def test_substitute_examples():
    R = PolyRing(2, QQ)
    T0, T1 = R.gens()
    one, zero = Fraction(1), Fraction(0)
    assert substitute_linear(T0, [[zero, one], [one, zero]]) == T1
    assert substitute_linear(T0 * T0, [[one, zero], [zero, one]]) == T0 * T0
    assert substitute_linear(T0 * T1, [[one, one], [zero, one]]) == T0 * T0 + T0 * T1


def test_twist_examples():
    qi = make_extension(QQ, "x^2 + 1", ["x", "-x"], C2)
    R = PolyRing(1, qi.field)
    f = parse_poly("x*T0", R)
    assert twist_coefficients(f, qi, 1) == parse_poly("-x*T0", R)
    assert twist_coefficients(f, qi, 0) == f
    f9 = make_extension(PrimeField(3), "x^2 + 1", ["x", "x^3"], C2)
    R9 = PolyRing(1, f9.field)
    assert twist_coefficients(parse_poly("x*T0^2", R9), f9, 1) == parse_poly("-x*T0^2", R9)


def test_monomial_basis_examples():
    assert monomial_basis(2, 1) == [(1, 0), (0, 1)]
    assert monomial_basis(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomial_basis(6, 2)) == 21
    for n in range(1, 5):
        for d in range(5):
            basis = monomial_basis(n, d)
            assert len(basis) == len(set(basis)) == comb(n - 1 + d, d)
            assert all(sum(m) == d for m in basis)


def _random_poly(rng, R, nterms=4, maxdeg=3):
    terms = {}
    for _ in range(nterms):
        m = tuple(rng.randint(0, maxdeg) for _ in range(R.nvars))
        c = R.field.from_int(rng.randint(1, 4))
        terms[m] = c
    return MultiPoly(R, terms)


@pytest.mark.parametrize("seed", range(20))
def test_substitute_matches_naive_expansion(seed):
    rng = random.Random(seed)
    R = PolyRing(3, F5)
    f = _random_poly(rng, R)
    M = [[rng.randrange(5) for _ in range(3)] for _ in range(3)]
    got = substitute_linear(f, M)
    assert got.terms == naive_substitute(F5, f.terms, M)
    # and on points: f(v M^t) where (T.M)_i = sum_j T_j M[j][i]
    for _ in range(5):
        v = [rng.randrange(5) for _ in range(3)]
        w = [sum(v[j] * M[j][i] for j in range(3)) % 5 for i in range(3)]
        assert evaluate(F5, got.terms, v) == evaluate(F5, f.terms, w)


def test_permutation_shortcut_agrees_with_expansion():
    R = PolyRing(3, F5)
    f = parse_poly("T0^2*T1 + 3*T2^3 + T0*T1*T2", R)
    M = [[0, 2, 0], [0, 0, 1], [4, 0, 0]]   # monomial matrix with scalars
    assert substitute_linear(f, M).terms == naive_substitute(F5, f.terms, M)


def test_arithmetic_and_ring_identities():
    rng = random.Random(3)
    R = PolyRing(2, F5)
    for _ in range(10):
        a, b, c = (_random_poly(rng, R) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()
        assert (a * b) * c == a * (b * c)
        assert a ** 2 == a * a
    assert R.zero().is_zero() and not R.one().is_zero()


def test_compose():
    R = PolyRing(2, QQ)
    U = PolyRing(3, QQ, "U")
    T0, T1 = R.gens()
    h = parse_poly("U0*U2 - U1^2", U)
    assert compose(h, [T0 * T0, T0 * T1, T1 * T1], R).is_zero()
    h2 = parse_poly("U0 + 2*U1", U)
    assert compose(h2, [T0, T1, T0 * T1], R) == T0 + T1 * 2


def test_format_and_parse_examples():
    R = PolyRing(2, QQ)
    f = parse_poly("3*T0^2 - T0*T1 + 1/2*T1^2", R)
    assert format_poly(f) == "3*T0^2 - T0*T1 + 1/2*T1^2"
    assert format_poly(R.zero()) == "0"
    qi = make_extension(QQ, "x^2 + 1", ["x", "-x"], C2)
    Ri = PolyRing(2, qi.field)
    g = parse_poly("(1 + x)*T0 - x*T1", Ri)
    assert parse_poly(format_poly(g), Ri) == g


def test_parse_errors():
    R = PolyRing(2, QQ)
    with pytest.raises(ParseError):
        parse_poly("T0 +", R)
    with pytest.raises(ParseError):
        parse_poly("T5", R)
    with pytest.raises(ParseError):
        parse_poly("x*T0", R)   # no generator in a degree-1 field


def test_validation_of_terms():
    R = PolyRing(2, F5)
    with pytest.raises(ValidationError):
        MultiPoly(R, {(1, 0): 0}, check=True)
    with pytest.raises(ValidationError):
        MultiPoly(R, {(1,): 1}, check=True)
    with pytest.raises(ValidationError):
        substitute_linear(R.var(0), [[1]])


coeff = st.integers(-3, 3)
expo = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(expo, coeff, max_size=6))
def test_format_parse_round_trip(raw):
    R = PolyRing(3, QQ)
    f = MultiPoly(R, {m: Fraction(c) for m, c in raw.items() if c})
    assert parse_poly(format_poly(f), R) == f


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(expo, st.integers(1, 24), max_size=5))
def test_format_parse_round_trip_f25(raw):
    ext = make_extension(F5, "x^2 + 2", ["x", "4*x"], C2)
    R = PolyRing(3, ext.field)
    f = MultiPoly(R, dict(raw))
    assert parse_poly(format_poly(f), R) == f
