from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miop.classical import (
    DegenerateParameterError,
    ModelParams,
    backward_shift_apply,
    ch_params,
    classical_pn,
    classical_pn_hypergeometric,
    energy,
    forward_shift_apply,
    htilde_apply,
    leading_cn,
    mp_params,
    three_term_coeffs,
)
from miop.exact_core import Poly, as_gaussian

MP_POINTS = [
    mp_params(2, (3, 4, 5)),
    mp_params(Fraction(7, 3), (5, 12, 13)),
    mp_params(Fraction(1, 2), (8, 15, 17)),
    mp_params(-Fraction(5, 4), (3, 4, 5)),
]
CH_POINTS = [
    ch_params("1+i", 2),
    ch_params("3+i", Fraction(7, 4)),
    ch_params("7/4+i/3", "6/5-i/2"),
    ch_params("1/3", "2/5+i"),
]
ALL_POINTS = MP_POINTS + CH_POINTS


def _mp_reference(p, n, x):
    a = mpmath.mpf(p.a.numerator) / p.a.denominator
    phi = mpmath.atan2(float(p.s), float(p.c))
    e = mpmath.exp(1j * phi)
    return mpmath.rf(2 * a, n) * e ** n / mpmath.factorial(n) * mpmath.hyp2f1(-n, a + 1j * x, 2 * a, 1 - e ** -2)


def _ch_reference(p, n, x):
    a1, a2 = complex(p.a1), complex(p.a2)
    a1c, a2c = a1.conjugate(), a2.conjugate()
    b1 = a1 + a1c + a2 + a2c
    pref = 1j ** n * mpmath.rf(a1 + a1c, n) * mpmath.rf(a1 + a2c, n) / mpmath.factorial(n)
    return pref * mpmath.hyp3f2(-n, n + b1 - 1, a1 + 1j * x, a1 + a1c, a1 + a2c, 1)


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_matches_mpmath_hypergeometric(p, n):
    poly = classical_pn(p, n)
    ref = _mp_reference if p.is_mp else _ch_reference
    for x in (-1.3, 0.0, 0.7, 2.5):
        assert complex(poly(complex(x))) == pytest.approx(complex(ref(p, n, x)), rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
def test_recurrence_matches_sum(p):
    for n in range(9):
        assert classical_pn(p, n) == classical_pn_hypergeometric(p, n)


def test_mp_first_polynomial():
    # P_1 = 2 (a cos(phi) + x sin(phi)) at a = 2, sin = 3/5
    assert classical_pn(mp_params(2, (3, 4, 5)), 1) == Poly([Fraction(16, 5), Fraction(6, 5)])


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
def test_degree_leading_and_reality(p):
    for n in range(7):
        poly = classical_pn(p, n)
        assert poly.degree == n
        assert poly.leading == leading_cn(p, n)
        assert poly.is_star_real


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
def test_eigen_equation(p):
    for n in range(8):
        poly = classical_pn(p, n)
        assert htilde_apply(p, poly) == poly * energy(p, n)


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
def test_three_term_relation(p):
    x = Poly.x()
    for n in range(7):
        a_n, b_n, c_n = three_term_coeffs(p, n)
        rhs = classical_pn(p, n + 1) * a_n + classical_pn(p, n) * b_n + classical_pn(p, n - 1) * c_n
        assert x * classical_pn(p, n) == rhs


@pytest.mark.parametrize("p", ALL_POINTS, ids=lambda p: p.label())
def test_shift_factorization(p):
    """F lowers the degree, B raises it back, and the product of the two constants is E_n."""
    shifted = p.plus_delta()
    for n in range(1, 6):
        f = forward_shift_apply(p, classical_pn(p, n))
        lower = classical_pn(shifted, n - 1)
        f_n = f.leading / lower.leading
        assert f == lower * f_n
        b = backward_shift_apply(p, lower)
        b_n = b.leading / classical_pn(p, n).leading
        assert b == classical_pn(p, n) * b_n
        assert f_n * b_n == energy(p, n)


def test_energy_formulas():
    assert energy(mp_params(2, (3, 4, 5)), 3) == Fraction(18, 5)
    # n (n + b1 - 1) with b1 = 2 Re(a1 + a2) = 19/2
    assert energy(ch_params("3+i", Fraction(7, 4)), 2) == 2 * (2 + Fraction(17, 2))


def test_degenerate_ch_point_raises():
    p = ch_params(Fraction(1, 4), Fraction(1, 4))  # b1 = 1
    with pytest.raises(DegenerateParameterError):
        three_term_coeffs(p, 0)
    with pytest.raises(DegenerateParameterError):
        p.validate(3)
    # the hypergeometric form never divides by those factors
    assert classical_pn_hypergeometric(p, 2).degree in (1, 2)


def test_param_validation():
    with pytest.raises(ValueError):
        ModelParams("mp", a=1)
    with pytest.raises(ValueError):
        ModelParams("xx")
    assert mp_params(2).in_orthogonal_range()
    assert not ch_params("-1+i", 1).in_orthogonal_range()


@settings(max_examples=15, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7),
    st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=7),
    st.fractions(min_value=-2, max_value=2, max_denominator=5),
)
def test_ch_constructions_agree_on_random_points(r1, r2, im):
    p = ch_params(as_gaussian(r1) + as_gaussian(im) * as_gaussian("i"), r2)
    for n in range(5):
        assert classical_pn(p, n) == classical_pn_hypergeometric(p, n)
