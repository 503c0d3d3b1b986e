from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miop.exact_core import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    InexactDivisionError,
    Poly,
    PolyMatrix,
    _det_bareiss,
    as_gaussian,
    binomial_shift_oracle,
    det,
    det_cofactor,
    exact_divide,
    make_circle_point,
    parse_gaussian,
    pochhammer,
    pochhammer_poly,
    poly_shift,
    poly_star,
)

from _strategies import gaussians, nonzero_gaussians, nonzero_polys, polys, small_fractions

x = Poly.x()


# -- Q(i) arithmetic -----------------------------------------------------------


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(nonzero_gaussians)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert a / a == ONE


@given(gaussians, gaussians)
def test_conjugation_is_multiplicative(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).im == 0
    assert a.norm() == (a * a.conjugate()).re


@given(gaussians, gaussians)
def test_matches_complex_floats(a, b):
    assert complex(a * b) == pytest.approx(complex(a) * complex(b), rel=1e-12, abs=1e-12)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_powers_of_i():
    assert I ** 2 == -1
    assert I ** 4 == ONE
    assert I ** -1 == -I


def test_mixed_with_int_and_fraction():
    a = GaussianRational(1, 2)
    assert a + 1 == GaussianRational(2, 2)
    assert Fraction(1, 2) * a == GaussianRational(Fraction(1, 2), 1)
    assert 3 - a == GaussianRational(2, -2)
    assert a == GaussianRational("1", "2")
    assert GaussianRational(5) == 5
    assert hash(GaussianRational(5)) == hash(5)


@pytest.mark.parametrize(
    "text, want",
    [
        ("3/2", GaussianRational(Fraction(3, 2))),
        ("1+i", GaussianRational(1, 1)),
        ("-2/3i", GaussianRational(0, Fraction(-2, 3))),
        ("7/4 - 1/2*i", GaussianRational(Fraction(7, 4), Fraction(-1, 2))),
        ("i/2", GaussianRational(0, Fraction(1, 2))),
        ("-i", GaussianRational(0, -1)),
        ("3+i", GaussianRational(3, 1)),
        ("0", ZERO),
    ],
)
def test_parse_gaussian(text, want):
    assert parse_gaussian(text) == want
    assert as_gaussian(text) == want


@pytest.mark.parametrize("text", ["", "1+", "++1", "ii", "abc", "1/0"])
def test_parse_gaussian_rejects(text):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_gaussian(text)


@given(gaussians)
def test_json_round_trip(a):
    assert GaussianRational.from_json(a.to_json()) == a


def test_as_gaussian_rejects_floats():
    with pytest.raises(TypeError):
        as_gaussian(0.5)


# -- unit circle ---------------------------------------------------------------


def test_circle_point_from_triple():
    pt = make_circle_point(3, 4, 5)
    assert pt.s == Fraction(3, 5) and pt.c == Fraction(4, 5)
    assert pt.exp_i * pt.exp_i.conjugate() == ONE
    assert pt.sin2 == Fraction(24, 25)
    assert pt.cos2 == Fraction(7, 25)


@pytest.mark.parametrize("triple", [(1, 1, 1), (3, 4, 6), (-3, 4, 5), (0, 1, 1)])
def test_circle_point_rejects(triple):
    with pytest.raises(ValueError):
        make_circle_point(*triple)


# -- polynomials -----------------------------------------------------------------


@given(polys(), polys(), gaussians)
def test_product_evaluates_pointwise(p, q, t):
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)


@given(polys(), nonzero_polys)
def test_divmod(p, d):
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree


@given(polys(), nonzero_polys)
def test_exact_divide_recovers_factor(p, d):
    assert exact_divide(p * d, d) == p


def test_exact_divide_raises_on_remainder():
    with pytest.raises(InexactDivisionError):
        exact_divide(x * x + 1, x - 1)


@given(polys(max_degree=7), small_fractions)
def test_shift_matches_binomial_expansion(p, t):
    assert poly_shift(p, t) == binomial_shift_oracle(p, t)


@given(polys(), small_fractions, small_fractions)
def test_shift_composes(p, s, t):
    assert poly_shift(poly_shift(p, s), t) == poly_shift(p, s + t)


@given(polys(), gaussians)
def test_star_conjugates_coefficients(p, t):
    # p*(x) has conjugated coefficients, so p*(conj t) = conj p(t)
    assert poly_star(p)(t.conjugate()) == p(t).conjugate()


def test_degree_and_leading():
    p = Poly([1, 0, 3])
    assert p.degree == 2 and p.leading == 3
    assert Poly().degree < 0
    assert Poly([0, 0]).is_zero()


@given(polys())
def test_poly_json_round_trip(p):
    assert Poly.from_json(p.to_json()) == p


def test_poly_immutable():
    with pytest.raises(AttributeError):
        x.coeffs = ()


# -- determinants ----------------------------------------------------------------


small_int_polys = polys(max_degree=2, elements=st.builds(GaussianRational, st.integers(-3, 3), st.integers(-2, 2)))


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(lambda n: st.lists(st.lists(small_int_polys, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(rows):
    m = PolyMatrix(rows)
    assert _det_bareiss(m) == det_cofactor(m)
    assert det(m) == det_cofactor(m)


def test_det_of_vandermonde():
    nodes = [1, 2, 4, 7, 11]
    m = PolyMatrix([[Fraction(t) ** k for k in range(5)] for t in nodes])
    want = 1
    for i in range(5):
        for j in range(i + 1, 5):
            want *= nodes[j] - nodes[i]
    assert det(m) == Poly.const(want)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det(PolyMatrix([[1, 2]]))
    with pytest.raises(ValueError):
        PolyMatrix([[1, 2], [3]])


# -- Pochhammer ------------------------------------------------------------------


def test_pochhammer_scalar():
    assert pochhammer(4, 3) == 120
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(I, 0) == ONE
    assert pochhammer(-2, 3) == 0


@given(gaussians, st.integers(min_value=0, max_value=6), gaussians)
def test_pochhammer_poly_evaluates(u, k, t):
    base = Poly([u, 1])
    assert pochhammer_poly(base, k)(t) == pochhammer(u + t, k)
