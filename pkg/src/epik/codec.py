"""Byte and bit layouts for series, digits, keys and ciphertexts.

Integers are little-endian; packed bit fields are most-significant-bit first.
Every artifact starts with a 17-byte header::

    "EPIK" | version u8 | preset id u8 | prime u32 | lambda u8 | d u8 | M u8 | ell_e_log u32

A public-key body is exactly ``M*d*lambda + ell_e_log`` bits: the published
digit residues, then an ``ell_e_log``-bit field carrying the digit side table
(scale, t-order per slot) and the curve coefficients ``A_n, B_n``, zero padded.
The header is not counted.
"""

from __future__ import annotations

import struct

from .curve import CurveParams, j_invariant
from .engel import EngelDigit
from .errors import DecodeError, DomainError, ParameterError
from .keys import (
    PRESETS_BY_ID,
    Ciphertext,
    ParamSet,
    PublicKey,
    PublishedDigit,
    SecretKey,
)
from .laurent import LaurentSeries, PrecisionPolicy
from .padic import PadicScalar, padic_zero

MAGIC = b"EPIK"
VERSION = 1
_HEADER = struct.Struct("<4sBBIBBBI")
HEADER_SIZE = _HEADER.size
_SERIES_HEAD = struct.Struct("<iHHB")
_ZERO_VALUATION = 0x7FFF
_ABSENT = 0xFF


def pk_size_bits(params: ParamSet) -> int:
    return params.M * params.d * params.lam + params.ell_e_log


# -- header -------------------------------------------------------------------

def encode_header(params: ParamSet) -> bytes:
    return _HEADER.pack(MAGIC, VERSION, params.preset_id, params.prime,
                        params.lam, params.d, params.M, params.ell_e_log)


def decode_header(data: bytes) -> ParamSet:
    if len(data) < HEADER_SIZE:
        raise DecodeError("truncated header")
    magic, version, pid, prime, lam, d, M, ell = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise DecodeError("bad magic")
    if version != VERSION:
        raise DecodeError(f"unsupported version {version}")
    params = PRESETS_BY_ID.get(pid)
    if params is None:
        raise DecodeError(f"unregistered preset id {pid}")
    if (prime, lam, d, M, ell) != (params.prime, params.lam, params.d, params.M, params.ell_e_log):
        raise DecodeError("header fields disagree with the registered preset")
    return params


# -- series -------------------------------------------------------------------

def _mantissa_bytes(prime: int, precision: int) -> int:
    return ((prime**precision - 1).bit_length() + 7) // 8


def encode_series(f: LaurentSeries) -> bytes:
    """Canonical bytes: value-equal series give identical output.

    The series is first cut to its weakest absolute precision ``N``, so each
    coefficient needs only its valuation; its mantissa then holds ``N - v``
    base-p digits.  The zero series is exactly 9 bytes.
    """
    pol = f.policy
    f = f.normalized()
    if f.is_zero:
        return _SERIES_HEAD.pack(0, pol.window, pol.precision, 1)
    width = _mantissa_bytes(f.prime, pol.precision)
    out = [_SERIES_HEAD.pack(f.order, pol.window, pol.precision, 0),
           struct.pack("<h", f.abs_precision)]
    for c in f.coeffs:
        if c.is_zero:
            out.append(struct.pack("<h", _ZERO_VALUATION) + bytes(width))
        else:
            out.append(struct.pack("<h", c.exponent) + c.mantissa.to_bytes(width, "big"))
    return b"".join(out)


def _read_series(data: bytes, pos: int, policy: PrecisionPolicy, prime: int) -> tuple[LaurentSeries, int]:
    try:
        order, w, r, flag = _SERIES_HEAD.unpack_from(data, pos)
        pos += _SERIES_HEAD.size
        if (w, r) != (policy.window, policy.precision):
            raise DecodeError(f"series has W={w}, R={r}; policy wants "
                              f"W={policy.window}, R={policy.precision}")
        if flag == 1:
            return LaurentSeries.zero(prime, policy), pos
        if flag != 0:
            raise DecodeError("bad zero flag")
        (n,) = struct.unpack_from("<h", data, pos)
        pos += 2
        width = _mantissa_bytes(prime, r)
        coeffs = []
        for _ in range(w):
            (v,) = struct.unpack_from("<h", data, pos)
            raw = data[pos + 2:pos + 2 + width]
            if len(raw) != width:
                raise DecodeError("truncated coefficient")
            pos += 2 + width
            m = int.from_bytes(raw, "big")
            if v == _ZERO_VALUATION:
                if m:
                    raise DecodeError("nonzero mantissa on a zero coefficient")
                coeffs.append(padic_zero(prime, n))
                continue
            rel = n - v
            if not 0 < rel <= r or m % prime == 0 or m >= prime**rel:
                raise DecodeError("coefficient mantissa out of range")
            coeffs.append(PadicScalar(prime, v, m, rel))
    except struct.error as exc:
        raise DecodeError(f"truncated series: {exc}") from None
    if coeffs[0].is_zero:
        raise DecodeError("non-canonical series: leading coefficient is zero")
    return LaurentSeries(prime, policy, order, tuple(coeffs)), pos


def decode_series(data: bytes, policy: PrecisionPolicy, prime: int) -> LaurentSeries:
    f, pos = _read_series(data, 0, policy, prime)
    if pos != len(data):
        raise DecodeError("trailing bytes after series")
    return f


# -- digits -------------------------------------------------------------------

def truncate_digit(a: EngelDigit, d: int) -> PublishedDigit:
    """Keep the scale, t-order and the p^0 digit of the first ``d`` unit coefficients."""
    res = list(a.unit.residues()[:d])
    res += [0] * (d - len(res))
    return PublishedDigit(a.scale, a.unit.order, tuple(res))


def encode_digit(a: EngelDigit | PublishedDigit, d: int, lam: int) -> str:
    """``d*lam`` bits as a '0'/'1' string, one lam-bit field per coefficient."""
    if not 4 <= d <= 16 or not 8 <= lam <= 16:
        raise ParameterError("d or lambda out of range")
    if isinstance(a, EngelDigit):
        a = truncate_digit(a, d)
    if len(a.residues) != d:
        raise ParameterError(f"digit has {len(a.residues)} coefficients, expected {d}")
    if any(not 0 <= r < 2**lam for r in a.residues):
        raise ParameterError(f"coefficient does not fit in {lam} bits")
    return "".join(format(r, f"0{lam}b") for r in a.residues)


def decode_digit(bits: str, d: int, lam: int) -> tuple[int, ...]:
    if len(bits) != d * lam:
        raise DecodeError(f"expected {d * lam} bits, got {len(bits)}")
    return tuple(int(bits[i * lam:(i + 1) * lam], 2) for i in range(d))


# -- public key -----------------------------------------------------------------

def pk_body_bits(pk: PublicKey) -> str:
    """The body as a bit string of length exactly ``pk_size_bits``."""
    ps = pk.params
    if len(pk.digits) > ps.M:
        raise ParameterError("more digits than M")
    empty = "0" * (ps.d * ps.lam)
    dbits = [encode_digit(a, ps.d, ps.lam) for a in pk.digits]
    dbits += [empty] * (ps.M - len(pk.digits))
    table = bytearray()
    for i in range(ps.M):
        if i < len(pk.digits):
            a = pk.digits[i]
            if not 0 <= a.scale < _ABSENT or not -128 <= a.order < 128:
                raise ParameterError("digit scale or order does not fit the side table")
            table += struct.pack("<Bb", a.scale, a.order)
        else:
            table += struct.pack("<Bb", _ABSENT, 0)
    aux = bytes(table) + encode_series(pk.curve.a) + encode_series(pk.curve.b)
    if len(aux) * 8 > ps.ell_e_log:
        raise ParameterError(f"curve data needs {len(aux) * 8} bits; "
                             f"log2(l^e) field holds {ps.ell_e_log}")
    aux_bits = "".join(format(b, "08b") for b in aux).ljust(ps.ell_e_log, "0")
    return "".join(dbits) + aux_bits


def _bits_to_bytes(bits: str) -> bytes:
    pad = (-len(bits)) % 8
    return int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big")


def _bytes_to_bits(data: bytes, nbits: int) -> str:
    return "".join(format(b, "08b") for b in data)[:nbits]


def encode_pk(pk: PublicKey) -> bytes:
    return encode_header(pk.params) + _bits_to_bytes(pk_body_bits(pk))


def decode_pk(data: bytes) -> PublicKey:
    ps = decode_header(data)
    nbits = pk_size_bits(ps)
    body = data[HEADER_SIZE:]
    if len(body) != (nbits + 7) // 8:
        raise DecodeError(f"pk body is {len(body)} bytes, expected {(nbits + 7) // 8}")
    bits = _bytes_to_bits(body, nbits)
    step = ps.d * ps.lam
    residues = [decode_digit(bits[i * step:(i + 1) * step], ps.d, ps.lam) for i in range(ps.M)]
    aux_bits = bits[ps.M * step:]
    aux = bytes(int(aux_bits[i:i + 8], 2) for i in range(0, len(aux_bits) - 7, 8))
    digits = []
    for i in range(ps.M):
        scale, order = struct.unpack_from("<Bb", aux, 2 * i)
        if scale == _ABSENT:
            if any(residues[i]) or order:
                raise DecodeError("data in an absent digit slot")
            continue
        if len(digits) != i:
            raise DecodeError("gap in the digit table")
        digits.append(PublishedDigit(scale, order, residues[i]))
    pos = 2 * ps.M
    a, pos = _read_series(aux, pos, ps.policy, ps.prime)
    b, pos = _read_series(aux, pos, ps.policy, ps.prime)
    if any(aux[pos:]):
        raise DecodeError("nonzero padding in the pk")
    try:
        curve = CurveParams(a, b)
        j = j_invariant(curve)
    except DomainError as exc:
        raise DecodeError(f"pk curve is invalid: {exc}") from None
    return PublicKey(ps, tuple(digits), j, curve)


# -- secret key and ciphertext ---------------------------------------------------

def encode_sk(sk: SecretKey) -> bytes:
    return encode_header(sk.params) + bytes([sk.n])


def decode_sk(data: bytes) -> SecretKey:
    ps = decode_header(data)
    if len(data) != HEADER_SIZE + 1:
        raise DecodeError("secret key must be header plus one byte")
    try:
        return SecretKey(ps, data[HEADER_SIZE])
    except ParameterError as exc:
        raise DecodeError(str(exc)) from None


def encode_ct(ct: Ciphertext) -> bytes:
    return b"".join([
        encode_header(ct.params),
        encode_series(ct.curve.a),
        encode_series(ct.curve.b),
        struct.pack("<I", len(ct.payload)),
        ct.payload,
    ])


def decode_ct(data: bytes) -> Ciphertext:
    ps = decode_header(data)
    a, pos = _read_series(data, HEADER_SIZE, ps.policy, ps.prime)
    b, pos = _read_series(data, pos, ps.policy, ps.prime)
    if len(data) < pos + 4:
        raise DecodeError("truncated payload length")
    (n,) = struct.unpack_from("<I", data, pos)
    payload = data[pos + 4:]
    if len(payload) != n:
        raise DecodeError(f"payload is {len(payload)} bytes, header says {n}")
    try:
        curve = CurveParams(a, b)
    except DomainError as exc:
        raise DecodeError(f"ciphertext curve is invalid: {exc}") from None
    return Ciphertext(ps, curve, payload)
