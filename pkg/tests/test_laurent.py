import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epik import (
    LaurentSeries,
    PrecisionPolicy,
    gauss_valuation,
    series_add,
    series_inv,
    series_mul,
    series_newton_root,
)
from epik.errors import DomainError
from epik.laurent import series_sub

P = 5
POL = PrecisionPolicy(8, 32)


def S(*vals, order=0, pol=POL):
    return LaurentSeries.from_values(P, pol, list(vals), order=order)


def same(f, g, bound=None):
    d = series_sub(f, g)
    return d.is_zero or gauss_valuation(d) >= (bound if bound is not None else d.abs_precision)


coeff = st.integers(-10**8, 10**8)
series = st.builds(lambda vs, k: S(*vs, order=k), st.lists(coeff, min_size=1, max_size=8),
                   st.integers(-2, 2))
units = st.builds(lambda c0, vs: S(c0, *vs), st.integers(1, 10**6).filter(lambda x: x % P),
                  st.lists(coeff, max_size=7))


def test_conjugate_product():
    assert same(series_mul(S(1, P), S(1, -P)), S(1, 0, -P * P))


def test_geometric_inverse():
    assert same(series_inv(S(1, P)), S(*[(-P) ** k for k in range(8)]))


def test_inverse_of_t():
    assert series_inv(S(0, 1)).order == -1


def test_monomials():
    assert series_mul(S(1, order=-2), S(1, order=2)) == LaurentSeries.one(P, POL)


def test_gauss():
    assert gauss_valuation(S(25, 5, 0, 125)) == 1
    assert gauss_valuation(S(3, 25)) == 0
    assert gauss_valuation(S(1, order=3)) == 0


def test_zero():
    z = LaurentSeries.zero(P, POL)
    assert z.is_zero and gauss_valuation(z) == float("inf")
    assert series_add(z, S(3)) == S(3)


def test_canonical_leading_zero():
    f = S(0, 0, 7)
    assert f.order == 2 and f.coeffs[0].mantissa == 7


def test_newton_sqrt_one():
    one, z = LaurentSeries.one(P, POL), LaurentSeries.zero(P, POL)
    assert series_newton_root([-one, z, one], 1, POL) == one


def test_newton_sqrt_doubles():
    pol = PrecisionPolicy(16, 32)
    f = S(1, P, pol=pol)
    one, z = LaurentSeries.one(P, pol), LaurentSeries.zero(P, pol)
    hist = []
    x = series_newton_root([-f, z, one], 1, pol, history=hist)
    assert hist == [1, 2, 4, 8]
    assert same(series_mul(x, x), f)


def test_newton_rejects_double_root():
    one, z = LaurentSeries.one(P, POL), LaurentSeries.zero(P, POL)
    with pytest.raises(DomainError):
        series_newton_root([z, z, one], 0, POL)


def test_policy_mismatch():
    with pytest.raises(DomainError):
        series_add(S(1), S(1, pol=PrecisionPolicy(4, 32)))


def test_policy_range():
    with pytest.raises(ValueError):
        PrecisionPolicy(1, 32)


@given(series, series)
def test_add_commutes(f, g):
    assert series_add(f, g) == series_add(g, f)


@given(series, series)
def test_mul_commutes(f, g):
    assert series_mul(f, g) == series_mul(g, f)


@given(units, series, series)
@settings(max_examples=50)
def test_distributive(u, f, g):
    assert same(series_mul(u, series_add(f, g)), series_add(series_mul(u, f), series_mul(u, g)))


@given(units)
def test_inverse(u):
    assert same(series_mul(u, series_inv(u)), LaurentSeries.one(P, POL))


@given(units, units)
def test_gauss_multiplicative(u, v):
    assert gauss_valuation(series_mul(u, v)) == gauss_valuation(u) + gauss_valuation(v)


def test_gauss_min_over_coefficients():
    assert gauss_valuation(S(0, P, P**3)) == 1
