"""Engel expansions of Laurent series over Q_p.

A series ``f`` is written as ``sum_n 1/(a_1 a_2 ... a_n)`` where each digit
``a_k = p**(-s_k) * u_k`` is a p-power scale times an integral series.  The
greedy encoder runs the residual recursion

    x_1 = f,   a_k = leading_part(1/x_k),   x_{k+1} = a_k x_k - 1,

whose residuals gain at least one unit of Gauss valuation per step.
Digits are exact finite objects, so their units are re-embedded at the
policy's full relative precision; this makes digit equality literal.

Precision note: forming ``x_{k+1}`` costs ``s_k`` digits of absolute
precision, so ``N`` digits with scales ``0, 1, ..., N-1`` need about
``N(N+1)/2`` digits of working precision (see :func:`precision_for_depth`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, PrecisionError
from .laurent import (
    LaurentSeries,
    PrecisionPolicy,
    gauss_valuation,
    series_add,
    series_inv,
    series_mul,
    series_neg,
    series_shift_p,
)
from .padic import INF, PadicScalar, padic_integer_part, padic_zero


def precision_for_depth(depth: int) -> int:
    """Working precision that lets a regular expansion reach ``depth`` digits."""
    return depth * (depth + 1) // 2


@dataclass(frozen=True)
class EngelDigit:
    """One digit ``p**(-scale) * unit``.

    ``unit`` is integral with Gauss valuation 0.  A *regular* digit also has
    t-order 0 and a unit constant term; greedy encoding of a residual whose
    leading coefficient does not carry its Gauss valuation yields an
    irregular (but still exact) digit.
    """

    scale: int
    unit: LaurentSeries

    def __post_init__(self):
        if self.scale < 0:
            raise DomainError("digit scale must be non-negative")
        if self.unit.is_zero:
            raise DomainError("digit unit is zero")
        if gauss_valuation(self.unit) != 0:
            raise DomainError("digit unit must be integral with Gauss valuation 0")

    @property
    def is_regular(self) -> bool:
        u = self.unit
        return u.order == 0 and u.coeffs[0].valuation == 0

    def value(self) -> LaurentSeries:
        return series_shift_p(self.unit, -self.scale)

    @cached_property
    def _inverse(self) -> LaurentSeries:
        return series_shift_p(series_inv(self.unit), self.scale)

    def inverse(self) -> LaurentSeries:
        return self._inverse

    @classmethod
    def from_ints(cls, scale: int, unit_coeffs, prime: int, policy: PrecisionPolicy,
                  order: int = 0) -> EngelDigit:
        return cls(scale, LaurentSeries.from_values(prime, policy, unit_coeffs, order=order))


@dataclass(frozen=True)
class EngelExpansion:
    prime: int
    policy: PrecisionPolicy
    digits: tuple[EngelDigit, ...] = ()
    residual_valuations: tuple = ()
    terminated: bool = False

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def achieved_valuation(self) -> int | float:
        """Gauss valuation of the last residual (0 before any digit)."""
        return self.residual_valuations[-1] if self.residual_valuations else 0

    @cached_property
    def _partial_sum(self) -> LaurentSeries:
        total = LaurentSeries.zero(self.prime, self.policy)
        running = LaurentSeries.one(self.prime, self.policy)
        for a in self.digits:
            if a.unit.prime != self.prime or a.unit.policy != self.policy:
                raise DomainError("digit disagrees with the expansion's prime or policy")
            running = series_mul(running, a.inverse())
            total = series_add(total, running)
        return total


def leading_part(g: LaurentSeries) -> EngelDigit:
    """Coefficient-wise p-adic integer part of ``g`` as a scaled digit."""
    if g.is_zero:
        raise DomainError("leading part of the zero series")
    s = max(0, -gauss_valuation(g))
    p, policy = g.prime, g.policy
    R = policy.precision
    coeffs = []
    for c in g.coeffs:
        if c.is_zero or c.exponent > 0:
            coeffs.append(padic_zero(p, R))
            continue
        # digits at p^e..p^0, scaled by p^s: an integer of valuation e + s
        ip = padic_integer_part(c)
        coeffs.append(PadicScalar(p, c.exponent + s, ip.mantissa % p**R, R))
    unit = LaurentSeries.build(p, policy, g.order, coeffs, fill_bound=R)
    if unit.is_zero or gauss_valuation(unit) != 0:
        raise DomainError("no digits at or below p^0: leading part vanishes")
    return EngelDigit(s, unit)


def engel_encode(f: LaurentSeries, max_depth: int) -> EngelExpansion:
    """Greedy Engel expansion of ``f`` to at most ``max_depth`` digits.

    Stops early when a residual is exactly zero, when its Gauss valuation
    exceeds the working precision, or when the precision left is too small
    to fix the next digit.
    """
    p, policy = f.prime, f.policy
    if f.is_zero:
        return EngelExpansion(p, policy, (), (), True)
    if gauss_valuation(f) < 0:
        raise DomainError("series with negative Gauss valuation are not encodable")
    one = LaurentSeries.one(p, policy)
    digits: list[EngelDigit] = []
    vals: list = []
    terminated = False
    x = f
    while len(digits) < max_depth:
        g = series_inv(x)
        if g.abs_precision < 1:
            if not digits:
                raise PrecisionError("working precision too low for a single digit")
            break
        a = leading_part(g)
        x = series_add(series_mul(a.value(), x), series_neg(one))
        digits.append(a)
        if x.is_zero:
            vals.append(INF)
            terminated = True
            break
        v = gauss_valuation(x)
        vals.append(v)
        if v > policy.precision:
            break
    return EngelExpansion(p, policy, tuple(digits), tuple(vals), terminated)


def engel_decode(e: EngelExpansion, policy: PrecisionPolicy | None = None) -> LaurentSeries:
    """Partial sum ``sum_n 1/(a_1...a_n)`` over the stored digits."""
    policy = policy or e.policy
    if policy != e.policy:
        raise DomainError("policy mismatch")
    return e._partial_sum


def _depth(*es: EngelExpansion) -> int:
    return max([len(e) for e in es] + [1])


def engel_add(e1: EngelExpansion, e2: EngelExpansion, max_depth: int | None = None) -> EngelExpansion:
    """Decode, add, re-encode greedily."""
    _same(e1, e2)
    return engel_encode(series_add(engel_decode(e1), engel_decode(e2)), max_depth or _depth(e1, e2))


def engel_mul(e1: EngelExpansion, e2: EngelExpansion, max_depth: int | None = None) -> EngelExpansion:
    _same(e1, e2)
    return engel_encode(series_mul(engel_decode(e1), engel_decode(e2)), max_depth or _depth(e1, e2))


def engel_inv(e: EngelExpansion, max_depth: int | None = None) -> EngelExpansion:
    if not e.digits:
        raise ZeroDivisionError("inverse of the zero expansion")
    return engel_encode(series_inv(engel_decode(e)), max_depth or _depth(e))


def _same(e1: EngelExpansion, e2: EngelExpansion) -> None:
    if e1.prime != e2.prime or e1.policy != e2.policy:
        raise DomainError("expansions use different parameters")


def digit_period_check(e: EngelExpansion | tuple, max_period: int) -> int | None:
    """Smallest r <= max_period with digits[i] == digits[i+r] throughout, else None."""
    digits = e.digits if isinstance(e, EngelExpansion) else tuple(e)
    if len(digits) < 2 * max_period:
        raise ValueError(f"need at least {2 * max_period} digits, have {len(digits)}")
    n = len(digits)
    for r in range(1, max_period + 1):
        if all(digits[i] == digits[i + r] for i in range(n - r)):
            return r
    return None


__all__ = [
    "EngelDigit",
    "EngelExpansion",
    "digit_period_check",
    "engel_add",
    "engel_decode",
    "engel_encode",
    "engel_inv",
    "engel_mul",
    "leading_part",
    "precision_for_depth",
]
