"""Fixed-precision arithmetic in Q_p.

A nonzero element is stored as ``p**valuation * mantissa`` where the mantissa
is a unit known modulo ``p**precision`` (relative precision).  An exact zero
keeps the absolute bound it is known to, ``0 mod p**bound``.

>>> half = padic_from_rational(1, 2, 5, 3)
>>> half.digits
(3, 2, 2)
>>> (half * 2).digits
(1, 0, 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

from .errors import DomainError, ParameterError, PrecisionError

DEFAULT_PRECISION = 32
INF = math.inf

try:  # GMP-backed integers for the hot paths when available
    from gmpy2 import invert as _invert, mpz as _big, remove as _remove
except ImportError:  # pragma: no cover
    _big = int

    def _invert(a, m):
        return pow(a, -1, m)

    def _remove(s, p):
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return s, k

_POWERS: dict[int, list] = {}


def _powers(p: int, k: int) -> list:
    """Cached ``[1, p, p**2, ...]`` with at least ``k + 1`` entries."""
    table = _POWERS.setdefault(p, [_big(1)])
    while len(table) <= k:
        table.append(table[-1] * p)
    return table


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp(n: int, p: int) -> int | float:
    """p-adic valuation of an integer (``INF`` for 0)."""
    if n == 0:
        return INF
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def check_prime(p: int) -> None:
    if not isinstance(p, int) or p <= 3 or not is_prime(p):
        raise ParameterError(f"need an odd prime > 3, got {p!r}")


@dataclass(frozen=True, slots=True)
class PadicScalar:
    prime: int
    exponent: int  # valuation; for an exact zero, the absolute bound
    mantissa: int  # unit part modulo p**precision; 0 for an exact zero
    precision: int  # relative digit count; 0 marks exact zero

    @property
    def is_zero(self) -> bool:
        return self.precision == 0

    @property
    def valuation(self) -> int | float:
        return INF if self.precision == 0 else self.exponent

    @property
    def abs_precision(self) -> int:
        return self.exponent + self.precision

    @property
    def digits(self) -> tuple[int, ...]:
        """Base-p mantissa digits d_0..d_{R-1}, least significant first."""
        p, m = self.prime, self.mantissa
        out = []
        for _ in range(self.precision):
            m, d = divmod(m, p)
            out.append(d)
        return tuple(out)

    def digit_at(self, k: int) -> int:
        """Digit at the power p**k (0 outside the stored mantissa)."""
        i = k - self.exponent
        if self.is_zero or i < 0:
            return 0
        if i >= self.precision:
            raise PrecisionError(f"digit at p^{k} is beyond precision")
        return (self.mantissa // self.prime**i) % self.prime

    def to_fraction(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.mantissa) * Fraction(self.prime) ** self.exponent

    def residue(self) -> int:
        """Image in F_p; the value must be p-integral."""
        if self.is_zero:
            if self.exponent < 1:
                raise PrecisionError("residue of a zero known below p^1")
            return 0
        if self.exponent < 0:
            raise DomainError("residue of a non-integral p-adic number")
        if self.exponent > 0:
            return 0
        return self.mantissa % self.prime

    def with_abs_precision(self, n: int) -> PadicScalar:
        """Drop digits at or above p**n (never adds precision)."""
        if n >= self.abs_precision:
            return self
        if self.is_zero or n <= self.exponent:
            return _zero(self.prime, n)
        r = n - self.exponent
        return PadicScalar(self.prime, self.exponent, self.mantissa % self.prime**r, r)

    def __add__(self, other):
        return padic_add(self, _coerce(other, self))

    __radd__ = __add__

    def __neg__(self):
        return padic_neg(self)

    def __sub__(self, other):
        return padic_add(self, padic_neg(_coerce(other, self)))

    def __rsub__(self, other):
        return padic_add(_coerce(other, self), padic_neg(self))

    def __mul__(self, other):
        return padic_mul(self, _coerce(other, self))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return padic_mul(self, padic_inv(_coerce(other, self)))

    def __repr__(self) -> str:
        if self.is_zero:
            return f"PadicScalar(0 + O({self.prime}^{self.exponent}))"
        return (
            f"PadicScalar({self.prime}^{self.exponent} * {self.digits}"
            f" + O({self.prime}^{self.abs_precision}))"
        )


def _zero(p: int, bound: int) -> PadicScalar:
    return PadicScalar(p, bound, 0, 0)


def _coerce(x, like: PadicScalar) -> PadicScalar:
    if isinstance(x, PadicScalar):
        return x
    r = like.precision or DEFAULT_PRECISION
    if isinstance(x, int):
        return padic_from_rational(x, 1, like.prime, r)
    if isinstance(x, Fraction):
        return padic_from_rational(x.numerator, x.denominator, like.prime, r)
    raise TypeError(f"cannot combine PadicScalar with {type(x).__name__}")


def padic_zero(prime: int, bound: int = DEFAULT_PRECISION) -> PadicScalar:
    return _zero(prime, bound)


def padic_from_rational(numerator: int, denominator: int, prime: int,
                        precision: int = DEFAULT_PRECISION) -> PadicScalar:
    """Embed ``numerator/denominator`` with ``precision`` significant digits.

    Zero becomes an exact zero known modulo ``p**precision``.
    """
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    if prime < 2 or not is_prime(prime):
        raise ParameterError(f"{prime} is not prime")
    if precision < 1:
        raise ValueError("precision must be positive")
    if numerator == 0:
        return _zero(prime, precision)
    vn, vd = vp(numerator, prime), vp(denominator, prime)
    n = numerator // prime**vn
    d = denominator // prime**vd
    mod = prime**precision
    return PadicScalar(prime, vn - vd, (n * pow(d, -1, mod)) % mod, precision)


def padic_from_int(n: int, prime: int, precision: int = DEFAULT_PRECISION) -> PadicScalar:
    return padic_from_rational(n, 1, prime, precision)


def padic_valuation(a: PadicScalar) -> int | float:
    return a.valuation


def padic_neg(a: PadicScalar) -> PadicScalar:
    if a.is_zero:
        return a
    return PadicScalar(a.prime, a.exponent, (-a.mantissa) % a.prime**a.precision, a.precision)


def padic_add(a: PadicScalar, b: PadicScalar) -> PadicScalar:
    """Sum known up to the smaller absolute precision, renormalized."""
    p = a.prime
    if b.prime != p:
        raise DomainError(f"prime mismatch: {p} vs {b.prime}")
    n = min(a.abs_precision, b.abs_precision)
    terms = [x for x in (a, b) if not x.is_zero]
    if not terms:
        return _zero(p, n)
    base = min(x.exponent for x in terms)
    if base >= n:
        return _zero(p, n)
    width = n - base
    s = sum(x.mantissa * p ** (x.exponent - base) for x in terms) % p**width
    if s == 0:
        return _zero(p, n)
    k = 0
    while s % p == 0:
        s //= p
        k += 1
    return PadicScalar(p, base + k, s, width - k)


def padic_mul(a: PadicScalar, b: PadicScalar) -> PadicScalar:
    p = a.prime
    if b.prime != p:
        raise DomainError(f"prime mismatch: {p} vs {b.prime}")
    if a.is_zero or b.is_zero:
        return _zero(p, a.exponent + b.exponent)
    r = min(a.precision, b.precision)
    m = _big(a.mantissa) * b.mantissa % _powers(p, r)[r]
    return PadicScalar(p, a.exponent + b.exponent, int(m), r)


def padic_inv(a: PadicScalar) -> PadicScalar:
    if a.is_zero:
        raise ZeroDivisionError("inverse of an exact zero")
    mod = _powers(a.prime, a.precision)[a.precision]
    return PadicScalar(a.prime, -a.exponent, int(_invert(a.mantissa, mod)), a.precision)


def padic_shift(a: PadicScalar, k: int) -> PadicScalar:
    """Multiply by p**k exactly."""
    return PadicScalar(a.prime, a.exponent + k, a.mantissa, a.precision)


def padic_integer_part(a: PadicScalar) -> PadicScalar:
    """Keep the digits at non-positive powers of p, drop the rest.

    The result carries the input's absolute precision, so adding the dropped
    tail back reproduces ``a``.
    """
    if a.is_zero or a.exponent > 0:
        return _zero(a.prime, a.abs_precision)
    if a.abs_precision < 1:
        raise PrecisionError("the p^0 digit is not known at this precision")
    width = 1 - a.exponent
    return PadicScalar(a.prime, a.exponent, a.mantissa % a.prime**width, a.precision)
