"""Truncated Laurent series over Q_p.

A series stores ``W`` consecutive coefficients starting at its t-order, each a
:class:`~epik.padic.PadicScalar`.  The leading stored coefficient is never an
exact zero; a series with no nonzero coefficient is the canonical zero
(empty coefficient tuple).  Results are re-anchored at their true t-order and
anything past the window is discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import add, mul
from typing import Iterable, Sequence

from .errors import ConvergenceError, DomainError, PrecisionError
from .padic import (
    DEFAULT_PRECISION,
    INF,
    PadicScalar,
    _POWERS,
    _big,
    _powers,
    _remove,
    padic_from_rational,
    padic_inv,
    padic_mul,
    padic_neg,
    padic_shift,
    padic_zero,
)

NEWTON_MAX_ITER = 64


@dataclass(frozen=True)
class PrecisionPolicy:
    """Window of t-coefficients and p-adic digits per coefficient."""

    window: int = 8
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("window must be >= 2")
        if self.precision < 4:
            raise ValueError("precision must be >= 4")


def _unpack(cs) -> tuple[list, list, list]:
    # exponent, mantissa (0 for exact zero), absolute precision
    return ([c.exponent for c in cs], [_big(c.mantissa) for c in cs],
            [c.exponent + c.precision for c in cs])


def _span(u) -> tuple[int, int]:
    es = [e for e, m in zip(u[0], u[1]) if m]
    return (min(es), max(es)) if es else (0, 0)


def _collect_int(p: int, s, ref: int, bound: int) -> PadicScalar:
    """Normalize ``s * p**ref`` known modulo ``p**bound``."""
    width = bound - ref
    if width <= 0:
        return PadicScalar(p, bound, 0, 0)
    tab = _POWERS.get(p)
    if tab is None or width >= len(tab):
        tab = _powers(p, width)
    s %= tab[width]
    if not s:
        return PadicScalar(p, bound, 0, 0)
    s, k = _remove(s, p)
    return PadicScalar(p, ref + k, int(s), width - k)


def _product_bounds(a, b, w: int) -> list[int]:
    ea, _, aa = a
    eb, _, ab = b
    return [min(min(map(add, aa[:n + 1], eb[n::-1])), min(map(add, ea[:n + 1], ab[n::-1])))
            for n in range(w)]


def _add2(p: int, x: PadicScalar, y: PadicScalar) -> PadicScalar:
    bound = min(x.exponent + x.precision, y.exponent + y.precision)
    if not x.precision:
        return y.with_abs_precision(bound) if y.precision else padic_zero(p, bound)
    if not y.precision:
        return x.with_abs_precision(bound)
    ref = min(x.exponent, y.exponent)
    pw = _powers(p, abs(x.exponent - y.exponent))
    s = _big(x.mantissa) * pw[x.exponent - ref] + y.mantissa * pw[y.exponent - ref]
    return _collect_int(p, s, ref, bound)


@dataclass(frozen=True)
class LaurentSeries:
    prime: int
    policy: PrecisionPolicy
    order: int
    coeffs: tuple[PadicScalar, ...]

    # -- construction -------------------------------------------------------

    @classmethod
    def build(cls, prime: int, policy: PrecisionPolicy, order: int,
              coeffs: Sequence[PadicScalar], fill_bound: int | None = None) -> LaurentSeries:
        """Canonicalize: strip leading exact zeros, truncate/pad to the window."""
        coeffs = list(coeffs)
        if fill_bound is None:
            fill_bound = min((c.abs_precision for c in coeffs), default=policy.precision)
        i = 0
        while i < len(coeffs) and coeffs[i].precision == 0:
            i += 1
        if i == len(coeffs):
            return cls(prime, policy, 0, ())
        kept = coeffs[i:i + policy.window]
        kept += [padic_zero(prime, fill_bound)] * (policy.window - len(kept))
        return cls(prime, policy, order + i, tuple(kept))

    @classmethod
    def from_values(cls, prime: int, policy: PrecisionPolicy,
                    values: Iterable, order: int = 0) -> LaurentSeries:
        """Series from ints, Fractions or PadicScalars (missing tail is zero)."""
        out = []
        for v in values:
            if isinstance(v, PadicScalar):
                out.append(v)
            else:
                v = Fraction(v)
                out.append(padic_from_rational(v.numerator, v.denominator, prime, policy.precision))
        return cls.build(prime, policy, order, out, fill_bound=policy.precision)

    @classmethod
    def zero(cls, prime: int, policy: PrecisionPolicy) -> LaurentSeries:
        return cls(prime, policy, 0, ())

    @classmethod
    def one(cls, prime: int, policy: PrecisionPolicy) -> LaurentSeries:
        return cls.from_values(prime, policy, [1])

    @classmethod
    def constant(cls, value, prime: int, policy: PrecisionPolicy) -> LaurentSeries:
        return cls.from_values(prime, policy, [value])

    @classmethod
    def monomial(cls, prime: int, policy: PrecisionPolicy, k: int, value=1) -> LaurentSeries:
        return cls.from_values(prime, policy, [value], order=k)

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def window(self) -> int:
        return self.policy.window

    @property
    def abs_precision(self) -> int | float:
        """Weakest absolute p-adic precision over the stored coefficients."""
        return min((c.abs_precision for c in self.coeffs), default=INF)

    def coefficient(self, n: int) -> PadicScalar:
        if self.is_zero or n < self.order:
            return padic_zero(self.prime, self.policy.precision)
        i = n - self.order
        if i >= len(self.coeffs):
            raise PrecisionError(f"t^{n} lies outside the stored window")
        return self.coeffs[i]

    def residues(self) -> tuple[int, ...]:
        """Coefficients reduced to F_p (series must be integral)."""
        return tuple(c.residue() for c in self.coeffs)

    def normalized(self) -> LaurentSeries:
        """Cut every coefficient to the series' weakest absolute precision."""
        if self.is_zero:
            return self
        n = self.abs_precision
        return LaurentSeries.build(
            self.prime, self.policy, self.order,
            [c.with_abs_precision(n) for c in self.coeffs], fill_bound=n)

    def _check(self, other: LaurentSeries) -> None:
        if other.prime != self.prime:
            raise DomainError(f"prime mismatch: {self.prime} vs {other.prime}")
        if other.policy != self.policy:
            raise DomainError("precision policy mismatch")

    def _lift(self, other) -> LaurentSeries:
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return LaurentSeries.constant(other, self.prime, self.policy)
        raise TypeError(f"cannot combine LaurentSeries with {type(other).__name__}")

    # -- operators ----------------------------------------------------------

    def __add__(self, other):
        return series_add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self):
        return series_neg(self)

    def __sub__(self, other):
        return series_add(self, series_neg(self._lift(other)))

    def __rsub__(self, other):
        return series_add(self._lift(other), series_neg(self))

    def __mul__(self, other):
        if isinstance(other, PadicScalar):
            return series_scale(self, other)
        if isinstance(other, int) and not isinstance(other, bool):
            return series_scale(self, padic_from_rational(other, 1, self.prime, self.policy.precision))
        return series_mul(self, self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return series_mul(self, series_inv(self._lift(other)))

    def __rtruediv__(self, other):
        return series_mul(self._lift(other), series_inv(self))

    def __pow__(self, k: int):
        if k < 0:
            return series_inv(self) ** (-k)
        out = LaurentSeries.one(self.prime, self.policy)
        for _ in range(k):
            out = series_mul(out, self)
        return out

    def __repr__(self) -> str:
        if self.is_zero:
            return f"LaurentSeries(0, p={self.prime})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            frac = c.to_fraction()
            terms.append(f"({frac})*t^{self.order + i}")
        return f"LaurentSeries({' + '.join(terms)} + O(t^{self.order + self.window}), p={self.prime})"


def series_neg(f: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(f.prime, f.policy, f.order, tuple(padic_neg(c) for c in f.coeffs))


def series_add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    f._check(g)
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    p, w = f.prime, f.window
    lo = min(f.order, g.order)
    fc, gc = f.coeffs, g.coeffs
    out = []
    for n in range(lo, lo + w):
        i, j = n - f.order, n - g.order
        if not 0 <= i < w:
            out.append(gc[j])
        elif not 0 <= j < w:
            out.append(fc[i])
        else:
            out.append(_add2(p, fc[i], gc[j]))
    return LaurentSeries.build(p, f.policy, lo, out,
                               fill_bound=min([c.exponent + c.precision for c in out]))


def series_sub(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return series_add(f, series_neg(g))


def series_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Windowed convolution anchored at ``order(f) + order(g)``.

    The coefficient sums come from one big-integer product (Kronecker
    substitution); precision bounds are tracked per output coefficient.
    """
    f._check(g)
    if f.is_zero or g.is_zero:
        return LaurentSeries.zero(f.prime, f.policy)
    p, w = f.prime, f.window
    a, b = _unpack(f.coeffs), _unpack(g.coeffs)
    (lo_a, hi_a), (lo_b, hi_b) = _span(a), _span(b)
    pw = _powers(p, max(hi_a - lo_a, hi_b - lo_b))
    fa = [m * pw[e - lo_a] if m else 0 for e, m in zip(a[0], a[1])]
    fb = [m * pw[e - lo_b] if m else 0 for e, m in zip(b[0], b[1])]
    bits = max(fa).bit_length() + max(fb).bit_length() + w.bit_length()
    pa = pb = _big(0)
    for x, y in zip(reversed(fa), reversed(fb)):
        pa = (pa << bits) | x
        pb = (pb << bits) | y
    prod = pa * pb
    mask = (_big(1) << bits) - 1
    ref = lo_a + lo_b
    bounds = _product_bounds(a, b, w)
    out = [_collect_int(p, (prod >> (n * bits)) & mask, ref, bounds[n]) for n in range(w)]
    return LaurentSeries.build(p, f.policy, f.order + g.order, out, fill_bound=min(bounds))


def series_scale(f: LaurentSeries, s: PadicScalar) -> LaurentSeries:
    if f.is_zero:
        return f
    return LaurentSeries.build(f.prime, f.policy, f.order, [padic_mul(c, s) for c in f.coeffs])


def series_shift_p(f: LaurentSeries, k: int) -> LaurentSeries:
    """Multiply by p**k, exactly."""
    return LaurentSeries(f.prime, f.policy, f.order, tuple(padic_shift(c, k) for c in f.coeffs))


def series_inv(f: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse by the triangular recurrence on coefficients.

    ``g_n = -g_0 * sum_{i=1..n} c_i g_{n-i}``, each partial sum carrying the
    weakest bound among its products and ``g_n`` keeping
    ``min(R(g_0), R(sum))`` significant digits.
    """
    if f.is_zero:
        raise ZeroDivisionError("inverse of the zero series")
    p, w = f.prime, f.window
    c = f.coeffs
    g0 = padic_inv(c[0])
    e0, r0 = g0.exponent, g0.precision
    m0 = _big(-g0.mantissa)
    ec, mc, ac = _unpack(c)
    nz = [(i, e) for i, (e, m) in enumerate(zip(ec, mc)) if m]
    lo_c = min(e for _, e in nz)
    # v(g_n) >= e0 + n * min(0, min_i (v(c_i) - v(c_0)) / i), so lo_g bounds
    # every exponent that can appear and the sums become plain dot products
    drop = min([0] + [(e + e0) * (w - 1) // i for i, e in nz if i])
    lo_g = e0 + drop
    tab = _powers(p, max(e - lo_c for _, e in nz) + r0 - drop)
    cs = [m * tab[e - lo_c] if m else 0 for e, m in zip(ec, mc)]
    eg, ag = [e0], [e0 + r0]
    gs = [_big(g0.mantissa) * tab[-drop]]
    ms = [g0.mantissa]
    ref = lo_c + lo_g
    for n in range(1, w):
        bound = min(min(map(add, ac[1:n + 1], eg[n - 1::-1])),
                    min(map(add, ec[1:n + 1], ag[n - 1::-1])))
        width = bound - ref
        if width > 0:
            if width >= len(tab):
                tab = _powers(p, width)
            acc = sum(map(mul, cs[1:n + 1], gs[n - 1::-1])) % tab[width]
        if width <= 0 or not acc:
            eg.append(e0 + bound)
            ag.append(e0 + bound)
            gs.append(0)
            ms.append(0)
            continue
        acc, k = _remove(acc, p)
        r = min(r0, width - k)
        e = e0 + ref + k
        m = m0 * acc % tab[r]
        eg.append(e)
        ag.append(e + r)
        if e - lo_g >= len(tab):
            tab = _powers(p, e - lo_g)
        gs.append(m * tab[e - lo_g])
        ms.append(m)
    out = [PadicScalar(p, e, int(m), a - e) for e, m, a in zip(eg, ms, ag)]
    return LaurentSeries.build(p, f.policy, -f.order, out, fill_bound=min(ag))


def gauss_valuation(f: LaurentSeries) -> int | float:
    """Smallest p-adic valuation over the stored coefficients."""
    return min((c.valuation for c in f.coeffs), default=INF)


def _horner(poly: Sequence[LaurentSeries], x: LaurentSeries) -> LaurentSeries:
    acc = poly[-1]
    for c in reversed(poly[:-1]):
        acc = series_add(series_mul(acc, x), c)
    return acc


def _derivative(poly: Sequence[LaurentSeries]) -> list[LaurentSeries]:
    return [poly[i] * i for i in range(1, len(poly))]


def _residue_at_zero(f: LaurentSeries) -> int:
    if f.is_zero or f.order > 0:
        return 0
    if f.order < 0 and any(not c.is_zero for c in f.coeffs[: -f.order]):
        raise DomainError("polynomial coefficient has a pole at t = 0")
    return f.coefficient(0).residue()


def series_newton_root(poly: Sequence[LaurentSeries], seed: int, policy: PrecisionPolicy,
                       *, history: list | None = None) -> LaurentSeries:
    """Lift a simple root mod p of ``sum(poly[i] * X**i)`` to a series root.

    Runs ``X <- X - F(X)/F'(X)`` from the constant ``seed`` until the
    correction vanishes at working precision or its Gauss valuation passes
    ``policy.precision``.  Gauss valuations of the corrections are appended
    to ``history`` when given.
    """
    if len(poly) < 2:
        raise DomainError("need a polynomial of degree >= 1")
    p = poly[0].prime
    for c in poly:
        if c.prime != p or c.policy != policy:
            raise DomainError("coefficients disagree on prime or policy")
    dpoly = _derivative(poly)
    fbar = [_residue_at_zero(c) for c in poly]
    val = sum(c * pow(seed, i, p) for i, c in enumerate(fbar)) % p
    dval = sum(i * c * pow(seed, i - 1, p) for i, c in enumerate(fbar) if i) % p
    if val != 0 or dval == 0:
        raise DomainError(f"{seed} is not a simple root mod {p}")

    x = LaurentSeries.constant(seed, p, policy)
    for _ in range(NEWTON_MAX_ITER):
        fx = _horner(poly, x)
        if fx.is_zero:
            return x
        corr = series_mul(fx, series_inv(_horner(dpoly, x)))
        if history is not None:
            history.append(gauss_valuation(corr))
        x = series_sub(x, corr)
        if corr.is_zero or gauss_valuation(corr) > policy.precision:
            return x
    raise ConvergenceError(f"Newton lift did not settle in {NEWTON_MAX_ITER} steps")
