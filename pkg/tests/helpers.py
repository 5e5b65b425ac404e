"""Random inputs shared by the unit and acceptance tests."""

from epik import EngelDigit, LaurentSeries, precision_for_depth


def random_series(rng, p, pol):
    """Gauss valuation 0; usually a unit constant term, sometimes p | f(0)."""
    w, r = pol.window, pol.precision
    vals = [rng.randrange(p**r) if rng.random() > 0.1 else 0 for _ in range(w)]
    if rng.random() < 0.8:
        vals[0] = rng.randrange(1, p) + p * rng.randrange(p ** (r - 1))
    else:
        vals[0] = p * rng.randrange(1, p ** (r - 1))
        vals[1] = rng.randrange(1, p) + p * rng.randrange(p ** (r - 1))
    return LaurentSeries.from_values(p, pol, vals, order=rng.choice([0, 0, 0, 0, 1, 2]))


def admissible_depth(pol, cap):
    n = 1
    while n < cap and precision_for_depth(n + 1) <= pol.precision:
        n += 1
    return n


def admissible_digits(rng, p, pol, n):
    """Digits with scales 0..n-1, unit constant terms and coefficients below p^(s+1)."""
    out = []
    for s in range(n):
        cs = [rng.randrange(p ** (s + 1)) for _ in range(pol.window)]
        cs[0] = rng.randrange(1, p) + p * rng.randrange(p**s)
        out.append(EngelDigit.from_ints(s, cs, p, pol))
    return tuple(out)
