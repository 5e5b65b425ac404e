"""
Engel expansions of p-adic Laurent series
=========================================

A series is rewritten as ``1/a_1 + 1/(a_1 a_2) + ...`` with digits
``a_k = p**(-s_k) * u_k``.  We encode a series, watch the residual
valuations climb, decode it back and check that the digit operations
follow ordinary series arithmetic.
"""

from epik import (
    LaurentSeries,
    PrecisionPolicy,
    engel_decode,
    engel_encode,
    engel_mul,
    gauss_valuation,
    precision_for_depth,
    series_mul,
)
from epik.laurent import series_sub

# N digits with scales 0..N-1 need about N(N+1)/2 digits of precision
p = 251
policy = PrecisionPolicy(window=6, precision=precision_for_depth(8))
print("working precision:", policy.precision)

f = LaurentSeries.from_values(p, policy, [3, 1, 4, 1, 5, 9])
e = engel_encode(f, 8)

# every step gains at least one unit of Gauss valuation
print("residual valuations:", e.residual_valuations)
for k, a in enumerate(e.digits):
    print(f"digit {k}: scale {a.scale}, unit residues {a.unit.residues()}")

# decoding reproduces f up to the last residual valuation
err = series_sub(f, engel_decode(e))
print("reconstruction error valuation:", gauss_valuation(err), ">=", e.achieved_valuation)

# multiplication through the digits agrees with series multiplication
g = LaurentSeries.from_values(p, policy, [2, 7, 1, 8])
eg = engel_encode(g, 8)
prod = engel_decode(engel_mul(e, eg))
print("engel_mul vs series_mul, difference valuation:",
      gauss_valuation(series_sub(prod, series_mul(f, g))))
