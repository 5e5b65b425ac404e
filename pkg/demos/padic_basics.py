"""
Fixed-precision p-adic numbers
==============================

A p-adic scalar is stored as ``p**v * u`` with the unit ``u`` known to a
fixed number of base-p digits.  This script walks through embedding
rationals, the precision that survives addition and multiplication, and
the integer part used later by the Engel encoder.
"""

from fractions import Fraction

from epik import padic_add, padic_from_int, padic_from_rational, padic_integer_part, padic_inv, padic_mul

# 1/2 in Z_5 has the repeating expansion 3 + 2*5 + 2*5^2 + ...
half = padic_from_rational(1, 2, 5, 6)
print("1/2 in Q_5:", half)

# multiplying back by 2 gives 1 to all six digits
print("2 * (1/2) =", padic_mul(padic_from_int(2, 5, 6), half))

# the inverse of 2 agrees with the embedded rational
print("inv(2) == 1/2:", padic_inv(padic_from_int(2, 5, 6)) == half)

# Cancellation costs relative precision: 1 + 24 = 25 = 5^2 has only the
# digits above 5^2 left, but the absolute bound O(5^6) is kept.
s = padic_add(padic_from_int(1, 5, 6), padic_from_int(24, 5, 6))
print("1 + 24 =", s, "valuation", s.valuation, "relative digits", s.precision)

# negative valuations come from denominators divisible by p
x = padic_from_rational(7, 25, 5, 6) + padic_from_int(50, 5, 6)
print("7/25 + 50 =", x)

# the integer part keeps the digits at p^-2, p^-1 and p^0 only
ip = padic_integer_part(x)
print("integer part:", ip, "=", ip.to_fraction(), "=", Fraction(7, 25))
