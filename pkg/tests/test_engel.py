import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from epik import (
    EngelDigit,
    EngelExpansion,
    LaurentSeries,
    PrecisionPolicy,
    digit_period_check,
    engel_add,
    engel_decode,
    engel_encode,
    engel_inv,
    engel_mul,
    gauss_valuation,
    leading_part,
    precision_for_depth,
    series_add,
    series_inv,
    series_mul,
)
from epik.errors import DomainError, PrecisionError
from epik.laurent import series_sub
from helpers import admissible_digits

P = 5
POL = PrecisionPolicy(4, 10)


def S(*vals, pol=POL):
    return LaurentSeries.from_values(P, pol, list(vals))


def close(f, g, bound):
    d = series_sub(f, g)
    return d.is_zero or gauss_valuation(d) >= bound


series = st.builds(lambda c0, vs: S(c0, *vs),
                   st.integers(1, 10**7).filter(lambda x: x % P), st.lists(st.integers(0, 10**7), max_size=3))


def test_one_is_one_digit():
    e = engel_encode(LaurentSeries.one(P, POL), 8)
    assert len(e) == 1 and e.terminated and e.digits[0].scale == 0


def test_decode_single_digit():
    e = EngelExpansion(P, POL, (EngelDigit.from_ints(0, [2], P, POL),))
    assert engel_decode(e).coeffs[0].digits[:3] == (3, 2, 2)


def test_geometric_terminates():
    e = engel_encode(S(1, 1, 1, 1), 8)
    assert e.terminated and e.residual_valuations == (1, 2, 3, float("inf"))
    assert [a.scale for a in e.digits] == [0, 1, 2, 3]


def test_zero_encodes_empty():
    e = engel_encode(LaurentSeries.zero(P, POL), 4)
    assert len(e) == 0 and e.terminated


def test_leading_part_scale():
    a = leading_part(S(Fraction(1, 25), 3))
    assert a.scale == 2 and [c.to_fraction() for c in a.unit.coeffs[:2]] == [1, 75]


def test_leading_part_residues():
    a = leading_part(S(7, 6))
    assert a.scale == 0 and a.unit.residues() == (2, 1, 0, 0)


def test_leading_part_vanishes():
    with pytest.raises(DomainError):
        leading_part(S(5, 25))


def test_irregular_digit():
    e = engel_encode(S(5, 1), 8)
    assert not e.digits[0].is_regular


def test_negative_gauss_rejected():
    with pytest.raises(DomainError):
        engel_encode(S(Fraction(1, 5)), 4)


def test_precision_too_low():
    with pytest.raises(PrecisionError):
        engel_encode(S(P**8, 1), 4)


def test_digit_must_be_unit():
    with pytest.raises(DomainError):
        EngelDigit.from_ints(0, [5], P, POL)


def test_precision_for_depth():
    assert [precision_for_depth(n) for n in (1, 4, 8, 10)] == [1, 10, 36, 55]


def test_period_of_synthetic_cycle():
    a, b = EngelDigit.from_ints(0, [1], P, POL), EngelDigit.from_ints(1, [2], P, POL)
    assert digit_period_check((a, b) * 6, 4) == 2
    assert digit_period_check((a,) * 8, 4) == 1
    assert digit_period_check((a, b, b) + (b,) * 7, 4) is None


def test_period_needs_length():
    with pytest.raises(ValueError):
        digit_period_check((), 2)


@given(series)
def test_residuals_grow(f):
    v = engel_encode(f, 8).residual_valuations
    assert all(b > a for a, b in zip((0,) + v, v))


@given(series)
def test_reconstruction(f):
    e = engel_encode(f, 8)
    assert close(f, engel_decode(e), e.achieved_valuation)


@given(st.randoms(use_true_random=False), st.integers(1, 4))
def test_encode_decode_identity(rng, n):
    digits = admissible_digits(rng, P, POL, n)
    f = engel_decode(EngelExpansion(P, POL, digits))
    assert engel_encode(f, n).digits == digits


@given(series, series)
@settings(max_examples=40)
def test_add_mul_homomorphic(f, g):
    e1, e2 = engel_encode(f, 8), engel_encode(g, 8)
    for op, direct in ((engel_add, series_add), (engel_mul, series_mul)):
        try:
            r = op(e1, e2)
        except PrecisionError:
            # a non-unit constant term can leave 1/x with no digit at p^0
            assert series_inv(direct(f, g)).abs_precision < 1
            continue
        bound = min(e1.achieved_valuation, e2.achieved_valuation, r.achieved_valuation)
        assert close(engel_decode(r), direct(f, g), bound)


@given(series)
@settings(max_examples=40)
def test_inv_homomorphic(f):
    e = engel_encode(f, 8)
    r = engel_inv(e)
    assert close(engel_decode(r), series_inv(f), min(e.achieved_valuation, r.achieved_valuation))


def test_leading_part_drops_p_multiples():
    a = leading_part(S(1, P))
    assert a.scale == 0 and a.unit.residues() == (1, 0, 0, 0)


def test_mul_by_inverse():
    e = engel_encode(S(3, 1, 2, 1), 4)
    r = engel_mul(e, engel_inv(e))
    assert close(engel_decode(r), LaurentSeries.one(P, POL), min(e.achieved_valuation, r.achieved_valuation))


def test_add_zero_expansion():
    digits = admissible_digits(random.Random(4), P, POL, 3)
    e = EngelExpansion(P, POL, digits)
    assert engel_add(e, EngelExpansion(P, POL)).digits == digits
