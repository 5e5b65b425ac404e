"""Short Weierstrass curves over Q_p((t)) and their 2-isogenies.

The chain rule is deterministic: at every step the kernel is the 2-torsion
point lifted from the smallest simple root of the reduced fiber cubic
``X^3 + A(0) X + B(0)`` over F_p.  Because each step is a pure function of
the current curve, ``chain(E, a + b) == chain(chain(E, a), b)`` holds as
literal equality of coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError
from .laurent import (
    LaurentSeries,
    PrecisionPolicy,
    series_inv,
    series_mul,
    series_newton_root,
)
from .padic import check_prime


@dataclass(frozen=True)
class CurveParams:
    """``y^2 = x^3 + A x + B`` with nonzero discriminant."""

    a: LaurentSeries
    b: LaurentSeries

    def __post_init__(self):
        if self.a.prime != self.b.prime or self.a.policy != self.b.policy:
            raise DomainError("A and B disagree on prime or policy")
        if self.discriminant().is_zero:
            raise DomainError("singular curve: discriminant vanishes at working precision")

    @property
    def prime(self) -> int:
        return self.a.prime

    @property
    def policy(self) -> PrecisionPolicy:
        return self.a.policy

    def discriminant(self) -> LaurentSeries:
        return (4 * self.a**3 + 27 * self.b**2) * (-16)

    def rhs(self, x: LaurentSeries) -> LaurentSeries:
        return x**3 + self.a * x + self.b

    def contains(self, pt: AffinePoint) -> bool:
        return (pt.y**2 - self.rhs(pt.x)).is_zero


@dataclass(frozen=True)
class TorsionPoint:
    """2-torsion point ``(x, 0)``."""

    x: LaurentSeries


@dataclass(frozen=True)
class AffinePoint:
    x: LaurentSeries
    y: LaurentSeries


@dataclass(frozen=True)
class IsogenyStep:
    alpha: LaurentSeries
    c: LaurentSeries
    domain: CurveParams
    codomain: CurveParams


def base_curve(prime: int, policy: PrecisionPolicy) -> CurveParams:
    """``y^2 = x^3 + 1 + p t``."""
    check_prime(prime)
    a = LaurentSeries.zero(prime, policy)
    b = LaurentSeries.from_values(prime, policy, [1, prime]).normalized()
    return CurveParams(a, b)


def reduce_fiber(E: CurveParams, prime: int | None = None) -> tuple[int, int]:
    """Residues of the constant terms of A and B modulo p."""
    if prime is not None and prime != E.prime:
        raise DomainError("prime does not match the curve")
    return _const_residue(E.a), _const_residue(E.b)


def _const_residue(f: LaurentSeries) -> int:
    if f.is_zero or f.order > 0:
        return 0
    if f.order < 0 and any(not c.is_zero for c in f.coeffs[: -f.order]):
        raise DomainError("coefficient has a pole at t = 0")
    c = f.coefficient(0)
    if c.valuation < 0:
        raise DomainError("constant term has negative valuation")
    return c.residue()


def fiber_simple_roots(E: CurveParams) -> list[int]:
    """Simple roots in F_p of the reduced 2-torsion cubic, ascending."""
    p = E.prime
    a, b = reduce_fiber(E)
    r = np.arange(p, dtype=np.int64)
    f = (r**3 + a * r + b) % p
    df = (3 * r**2 + a) % p
    return [int(x) for x in r[(f == 0) & (df != 0)]]


def two_torsion_lift(E: CurveParams, seed: int) -> TorsionPoint:
    """Hensel-lift a simple fiber root to a root of ``X^3 + A X + B``."""
    p, pol = E.prime, E.policy
    zero = LaurentSeries.zero(p, pol)
    one = LaurentSeries.one(p, pol)
    x = series_newton_root([E.b, E.a, zero, one], seed % p, pol)
    return TorsionPoint(x)


def select_torsion(E: CurveParams) -> TorsionPoint:
    roots = fiber_simple_roots(E)
    if not roots:
        raise ParameterError("no simple 2-torsion root on the reduced fiber; chain cannot extend")
    return two_torsion_lift(E, roots[0])


def velu_step(E: CurveParams, P: TorsionPoint) -> IsogenyStep:
    """Quotient by ``<(alpha, 0)>``: ``A' = A - 5c``, ``B' = B - 7 c alpha``."""
    alpha = P.x
    if not E.rhs(alpha).is_zero:
        raise DomainError("kernel point is not on the curve")
    c = 3 * alpha**2 + E.a
    a2 = (E.a - 5 * c).normalized()
    b2 = (E.b - 7 * c * alpha).normalized()
    return IsogenyStep(alpha, c, E, CurveParams(a2, b2))


def velu_eval(step: IsogenyStep, Q: AffinePoint) -> AffinePoint:
    """``(x + c/(x-alpha), y (1 - c/(x-alpha)^2))``."""
    d = Q.x - step.alpha
    if d.is_zero:
        raise DomainError("point lies in the kernel")
    dinv = series_inv(d)
    u = series_mul(step.c, dinv)
    return AffinePoint(Q.x + u, Q.y * (1 - u * dinv))


@lru_cache(maxsize=512)
def next_curve(E: CurveParams) -> CurveParams:
    """One deterministic 2-isogeny step."""
    return velu_step(E, select_torsion(E)).codomain


def chain(E0: CurveParams, steps: int) -> CurveParams:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    E = E0
    for _ in range(steps):
        E = next_curve(E)
    return E


@lru_cache(maxsize=512)
def j_invariant(E: CurveParams) -> LaurentSeries:
    """``1728 * 4A^3 / (4A^3 + 27B^2)``."""
    a3 = 4 * E.a**3
    den = a3 + 27 * E.b**2
    if den.is_zero:
        raise DomainError("j-invariant denominator vanishes")
    return series_mul(1728 * a3, series_inv(den))


def count_points_fp(a: int, b: int, prime: int) -> int:
    """#E(F_p) for ``y^2 = x^3 + a x + b`` including the point at infinity."""
    p = prime
    if p > 2**14:
        raise ValueError("brute-force count limited to p <= 2^14")
    if (4 * a**3 + 27 * b**2) % p == 0:
        raise DomainError("singular reduction")
    y = np.arange(p, dtype=np.int64)
    sq = np.bincount((y * y) % p, minlength=p)
    x = np.arange(p, dtype=np.int64)
    rhs = ((x * x % p) * x + a * x + b) % p
    return int(sq[rhs].sum()) + 1
