import pytest
from hypothesis import given
from hypothesis import strategies as st

from epik import (
    AffinePoint,
    CurveParams,
    LaurentSeries,
    PrecisionPolicy,
    base_curve,
    chain,
    count_points_fp,
    j_invariant,
    reduce_fiber,
    select_torsion,
    two_torsion_lift,
    velu_eval,
    velu_step,
)
from epik import padic_from_rational
from epik.curve import fiber_simple_roots
from epik.errors import DomainError, ParameterError
from epik.laurent import series_sub

POL = PrecisionPolicy(8, 32)


def euler_count(a, b, p):
    total = 1
    for x in range(p):
        r = (x**3 + a * x + b) % p
        total += 1 if r == 0 else 1 + (1 if pow(r, (p - 1) // 2, p) == 1 else -1)
    return total


def test_base_fiber():
    assert reduce_fiber(base_curve(251, POL)) == (0, 1)


def test_kernel_root():
    E = base_curve(251, POL)
    assert fiber_simple_roots(E) == [250]
    assert select_torsion(E).x.residues()[0] == 250


def test_torsion_is_root():
    E = base_curve(251, POL)
    assert E.rhs(select_torsion(E).x).is_zero


def test_velu_codomain():
    E = base_curve(251, POL)
    step = velu_step(E, select_torsion(E))
    x = step.alpha
    assert series_sub(step.codomain.a, -15 * x * x).is_zero
    assert series_sub(step.codomain.b, LaurentSeries.from_values(251, POL, [22, 22 * 251])).is_zero
    assert reduce_fiber(step.codomain) == (251 - 15, 22)


def test_point_map():
    E = base_curve(251, POL)
    step = velu_step(E, select_torsion(E))
    c = lambda v: LaurentSeries.constant(v, 251, POL)
    q = velu_eval(step, AffinePoint(c(2), c(3)))
    x, y = q.x.residues()[0], q.y.residues()[0]
    assert (x, y) == (3, 2)
    assert (y * y - (x**3 - 15 * x + 22)) % 251 == 0


def test_kernel_point_rejected():
    E = base_curve(251, POL)
    step = velu_step(E, select_torsion(E))
    with pytest.raises(DomainError):
        velu_eval(step, AffinePoint(step.alpha, LaurentSeries.zero(251, POL)))


def test_j_values():
    assert j_invariant(base_curve(251, POL)).is_zero
    c = lambda v: LaurentSeries.constant(v, 251, POL)
    j = j_invariant(CurveParams(c(-15), c(22)))
    assert j.order == 0 and j.coeffs[0].to_fraction() == 54000


def test_p11_fiber():
    assert reduce_fiber(chain(base_curve(11, POL), 1)) == (7, 0)


def test_chain_composes():
    E = base_curve(251, POL)
    assert chain(E, 3) == chain(chain(E, 1), 2)


def test_chain_steps():
    with pytest.raises(ValueError):
        chain(base_curve(251, POL), 0)


def test_singular_rejected():
    z = LaurentSeries.zero(251, POL)
    with pytest.raises(DomainError):
        CurveParams(z, z)


def test_no_simple_root():
    c = lambda v: LaurentSeries.constant(v, 7, POL)
    with pytest.raises(ParameterError):
        select_torsion(CurveParams(c(0), c(3)))


def test_seed_not_a_root():
    with pytest.raises(DomainError):
        two_torsion_lift(base_curve(251, POL), 3)


@pytest.mark.parametrize("p", [5, 11, 17, 23])
def test_supersingular_counts(p):
    E = base_curve(p, POL)
    for k in range(4):
        a, b = reduce_fiber(chain(E, k) if k else E)
        assert count_points_fp(a, b, p) == p + 1


@given(st.sampled_from([5, 7, 11, 13, 101]), st.integers(0, 100), st.integers(0, 100))
def test_count_matches_euler(p, a, b):
    if (4 * a**3 + 27 * b**2) % p == 0:
        with pytest.raises(DomainError):
            count_points_fp(a, b, p)
    else:
        assert count_points_fp(a, b, p) == euler_count(a, b, p)


def test_torsion_is_cube_root():
    x = select_torsion(base_curve(251, POL)).x
    assert series_sub(x * x * x, -LaurentSeries.from_values(251, POL, [1, 251])).is_zero
    second = x.coeffs[1]
    assert series_sub(LaurentSeries.constant(second, 251, POL),
                      LaurentSeries.constant(padic_from_rational(-251, 3, 251, 32), 251, POL)).is_zero
