"""
Key encapsulation over an isogeny chain
=======================================

Alice publishes the curve reached after ``n`` steps, Bob the one after
``r`` steps, and each walks the other's curve forward by their own count.
The default key space ``n in {1, 2}`` is a toy: anyone can recover ``n``.
"""

import random

from epik import PRESETS, brute_force_recover_n, decap, encap, keygen, pke_decrypt, pke_encrypt
from epik.codec import encode_ct, encode_pk, pk_size_bits

rng = random.Random(2024)

# public-key sizes follow M*d*lambda + log2(l^e)
for name, ps in PRESETS.items():
    print(f"{name}: p={ps.prime}, pk body {pk_size_bits(ps)} bits")

ps = PRESETS["sec128"]
pk, sk = keygen(ps, rng)
ct, key = encap(pk, rng)
print("shared key:", key.hex())
print("decap agrees:", decap(sk, ct) == key)
print("pk bytes:", len(encode_pk(pk)), "ct bytes:", len(encode_ct(ct)))

# the PKE mode masks a message with a SHA-256 counter keystream
msg = b"relay this reading to board 4"
sealed = pke_encrypt(pk, msg, rng)
print("plaintext back:", pke_decrypt(sk, sealed))

# with two candidate secrets, exhaustive search is immediate
print("recovered n:", brute_force_recover_n(pk), "actual n:", sk.n)
