import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epik import EngelDigit, LaurentSeries, ParamSet, PrecisionPolicy, get_preset, keygen
from epik.codec import (
    HEADER_SIZE,
    decode_ct,
    decode_digit,
    decode_header,
    decode_pk,
    decode_series,
    decode_sk,
    encode_ct,
    encode_digit,
    encode_header,
    encode_pk,
    encode_series,
    encode_sk,
    pk_body_bits,
    pk_size_bits,
)
from epik.errors import DecodeError, ParameterError
from epik.kem import encap

P = 251
POL = PrecisionPolicy(4, 10)


def S(*vals, order=0):
    return LaurentSeries.from_values(P, POL, list(vals), order=order)


series = st.builds(lambda vs, k: S(*vs, order=k),
                   st.lists(st.integers(-P**10, P**10), min_size=1, max_size=4), st.integers(-3, 3))


def test_digit_bits():
    a = EngelDigit.from_ints(0, [1], P, POL)
    assert encode_digit(a, 4, 8) == "00000001" + "0" * 24


def test_digit_roundtrip():
    a = EngelDigit.from_ints(0, [3, 250, 7, 1], P, POL)
    assert decode_digit(encode_digit(a, 4, 8), 4, 8) == (3, 250, 7, 1)


def test_digit_overflow():
    with pytest.raises(ParameterError):
        encode_digit(EngelDigit.from_ints(0, [300], 65519, POL), 4, 8)


def test_zero_series_is_9_bytes():
    assert len(encode_series(LaurentSeries.zero(P, POL))) == 9


def test_pk_size_formula():
    ps = ParamSet("t", 9, lam=8, d=4, M=8, ell_e_log=1024, precision=10)
    assert pk_size_bits(ps) == 1280


@pytest.mark.parametrize("name,bits", [("iot", 1152), ("sec128", 16896), ("high", 36864)])
def test_pk_sizes(name, bits):
    ps = get_preset(name)
    pk, _ = keygen(ps, random.Random(1))
    assert pk_size_bits(ps) == bits == len(pk_body_bits(pk))
    assert len(encode_pk(pk)) == HEADER_SIZE + bits // 8


def test_header_roundtrip():
    ps = get_preset("sec128")
    assert decode_header(encode_header(ps)) is ps


def test_header_rejects_unknown_preset():
    data = bytearray(encode_header(get_preset("iot")))
    data[5] = 77
    with pytest.raises(DecodeError):
        decode_header(bytes(data))


def test_bad_magic():
    with pytest.raises(DecodeError):
        decode_header(b"XXXX" + encode_header(get_preset("iot"))[4:])


def test_key_roundtrips():
    ps = get_preset("iot")
    pk, sk = keygen(ps, random.Random(3))
    ct, _ = encap(pk, random.Random(4))
    assert decode_pk(encode_pk(pk)) == pk
    assert decode_sk(encode_sk(sk)) == sk
    assert decode_ct(encode_ct(ct)) == ct


def test_truncated_ct():
    pk, _ = keygen(get_preset("iot"), random.Random(3))
    ct, _ = encap(pk, random.Random(4))
    with pytest.raises(DecodeError):
        decode_ct(encode_ct(ct)[:-3])


def test_bad_sk_byte():
    data = encode_sk(keygen(get_preset("iot"), random.Random(3))[1])
    with pytest.raises(DecodeError):
        decode_sk(data[:-1] + b"\x09")


def test_trailing_series_bytes():
    with pytest.raises(DecodeError):
        decode_series(encode_series(S(5)) + b"\x00", POL, P)


def test_window_mismatch():
    with pytest.raises(DecodeError):
        decode_series(encode_series(S(5)), PrecisionPolicy(8, 10), P)


@given(series)
def test_series_roundtrip(f):
    assert decode_series(encode_series(f), POL, P) == f.normalized()


@given(series)
def test_series_canonical(f):
    assert encode_series(f) == encode_series(f.normalized())


@given(series, st.integers(1, 20))
def test_series_truncation_detected(f, k):
    data = encode_series(f)
    if f.normalized().is_zero:
        return
    with pytest.raises(DecodeError):
        decode_series(data[:-k], POL, P)
