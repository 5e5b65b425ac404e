"""Key encapsulation over deterministic 2-isogeny chains.

Both parties walk the same deterministic chain from the base curve.  Alice
publishes ``E^(n)`` (with a truncated Engel expansion of its 2-torsion
x-coordinate), Bob publishes ``E^(r)``, and each extends the other's curve by
their own step count.  Since every step is a pure function of the current
curve, ``E^(n+r)`` comes out coefficient-identical on both sides.

The default key space ``n in {1, 2}`` offers no security at all;
:func:`brute_force_recover_n` recovers ``n`` from any public key.
"""

from __future__ import annotations

import hashlib
import secrets
from functools import lru_cache

from .codec import encode_series, truncate_digit
from .curve import base_curve, chain, j_invariant, next_curve, select_torsion
from .engel import engel_encode
from .errors import DecodeError, DomainError
from .keys import Ciphertext, ParamSet, PublicKey, SecretKey
from .laurent import LaurentSeries

KEY_BYTES = 32


def _rng(randomness):
    return randomness if randomness is not None else secrets.SystemRandom()


@lru_cache(maxsize=16)
def _base(params: ParamSet):
    return base_curve(params.prime, params.policy)


@lru_cache(maxsize=64)
def _public_data(params: ParamSet, n: int) -> PublicKey:
    E = chain(_base(params), n)
    x = select_torsion(E).x
    expansion = engel_encode(x, params.M)
    digits = tuple(truncate_digit(a, params.d) for a in expansion.digits)
    return PublicKey(params, digits, j_invariant(E), E)


def derive_key(j: LaurentSeries) -> bytes:
    """SHA-256 of the canonical serialization of ``j``."""
    return hashlib.sha256(encode_series(j)).digest()


def keygen(params: ParamSet, randomness=None) -> tuple[PublicKey, SecretKey]:
    n = _rng(randomness).randint(1, params.n_max)
    return _public_data(params, n), SecretKey(params, n)


def _check_pk(pk: PublicKey) -> None:
    ps = pk.params
    if len(pk.digits) > ps.M:
        raise DecodeError("pk carries more than M digits")
    if pk.curve.prime != ps.prime or pk.curve.policy != ps.policy:
        raise DecodeError("pk curve does not match its parameter set")


@lru_cache(maxsize=256)
def _shared(curve, steps: int) -> bytes:
    try:
        return derive_key(j_invariant(chain(curve, steps)))
    except DomainError as exc:
        raise DecodeError(f"cannot extend the published curve: {exc}") from None


def clear_caches() -> None:
    """Forget memoized chain steps, j-invariants and shared keys."""
    next_curve.cache_clear()
    j_invariant.cache_clear()
    _shared.cache_clear()


def encap(pk: PublicKey, randomness=None) -> tuple[Ciphertext, bytes]:
    """KEM mode: the ciphertext is ``E^(r)`` alone and the key is returned."""
    _check_pk(pk)
    ps = pk.params
    r = _rng(randomness).randint(1, ps.n_max)
    Er = chain(_base(ps), r)
    return Ciphertext(ps, Er), _shared(pk.curve, r)


def decap(sk: SecretKey, ct: Ciphertext) -> bytes:
    if ct.params != sk.params:
        raise DecodeError("ciphertext and secret key use different parameter sets")
    return _shared(ct.curve, sk.n)


def keystream(key: bytes, length: int) -> bytes:
    """SHA-256(key || counter) blocks, counter as 4-byte little-endian."""
    blocks = (length + 31) // 32
    return b"".join(hashlib.sha256(key + i.to_bytes(4, "little")).digest()
                    for i in range(blocks))[:length]


def _xor(data: bytes, ks: bytes) -> bytes:
    return bytes(a ^ b for a, b in zip(data, ks))


def pke_encrypt(pk: PublicKey, message: bytes, randomness=None) -> Ciphertext:
    ct, key = encap(pk, randomness)
    return Ciphertext(ct.params, ct.curve, _xor(message, keystream(key, len(message))))


def pke_decrypt(sk: SecretKey, ct: Ciphertext) -> bytes:
    key = decap(sk, ct)
    return _xor(ct.payload, keystream(key, len(ct.payload)))


def brute_force_recover_n(pk: PublicKey) -> int:
    """Recompute the public data for every candidate ``n`` and return the match."""
    for n in range(1, pk.params.n_max + 1):
        cand = _public_data(pk.params, n)
        if cand.digits == pk.digits and cand.curve == pk.curve:
            return n
    raise ValueError("no n in range reproduces this public key")
