import math

import mpmath
import numpy as np
import pytest
from fractions import Fraction

from miop.classical import ch_params, classical_pn, mp_params
from miop.exact_core import Poly
from miop.multi_indexed import IndexSet, deformed_system
from miop.numeric_ortho import (
    WeightSpec,
    classical_norm,
    complex_gamma,
    complex_loggamma,
    expected_norm,
    gram_report,
    interlaces,
    quad_norm,
    strip_check,
    zero_census,
)

MP_HALF_PI = mp_params(2, (1, 0, 1))
MP_A = mp_params(2, (3, 4, 5))
CH_A = ch_params("3+i", Fraction(7, 4))


# -- Gamma function -----------------------------------------------------------------


def test_gamma_special_values():
    assert complex_gamma(1) == pytest.approx(1, rel=1e-13)
    assert complex_gamma(5) == pytest.approx(24, rel=1e-13)
    assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-13)


@pytest.mark.parametrize(
    "z",
    [0.3 + 0.1j, 2.5 - 3j, 7 + 12j, -0.4 + 0.7j, -3.3 - 0.2j, 0.01 + 25j, 30.5 + 0.5j],
)
def test_gamma_matches_mpmath(z):
    assert complex_gamma(z) == pytest.approx(complex(mpmath.gamma(z)), rel=1e-11)
    assert complex_loggamma(z).real == pytest.approx(float(mpmath.log(abs(mpmath.gamma(z)))), abs=1e-11)


@pytest.mark.parametrize("z", [0.2 + 0.3j, 1.7 - 2.1j, -1.5 + 0.5j, 4 + 9j])
def test_gamma_functional_equation(z):
    assert complex_gamma(z + 1) == pytest.approx(z * complex_gamma(z), rel=1e-12)


@pytest.mark.parametrize("a, x", [(2.0, 0.3), (0.7, -1.9), (3.5, 6.0)])
def test_gamma_conjugate_product_is_real(a, x):
    prod = complex_gamma(complex(a, x)) * complex_gamma(complex(a, -x))
    assert abs(prod.imag) <= 1e-12 * abs(prod)
    assert prod.real > 0
    assert prod.real == pytest.approx(abs(complex_gamma(complex(a, x))) ** 2, rel=1e-12)


@pytest.mark.parametrize("z", [0, -1, -4])
def test_gamma_poles(z):
    with pytest.raises(ValueError):
        complex_gamma(z)


# -- norms and orthogonality ----------------------------------------------------------


def test_ground_norm_half_pi():
    spec = WeightSpec(MP_HALF_PI, IndexSet.mp())
    want = 2 * math.pi * math.gamma(4) / 2 ** 4
    assert abs(quad_norm(spec, 0, 0) - want) <= 1e-8 * want
    assert classical_norm(MP_HALF_PI, 0) == pytest.approx(3 * math.pi / 4, rel=1e-13)


def _mpmath_norm(p, n):
    """h_n by direct mpmath quadrature of the classical weight."""
    P = classical_pn(p, n)
    if p.is_mp:
        a = float(p.a)
        phi = math.atan2(float(p.s), float(p.c))
        w = lambda x: mpmath.exp((2 * phi - mpmath.pi) * x) * abs(mpmath.gamma(a + 1j * x)) ** 2
    else:
        a1, a2 = complex(p.a1), complex(p.a2)
        w = lambda x: abs(mpmath.gamma(a1 + 1j * x) * mpmath.gamma(a2 + 1j * x)) ** 2
    f = lambda x: w(x) * abs(complex(P(complex(float(x))))) ** 2
    return float(mpmath.quad(f, [-mpmath.inf, -5, 0, 5, mpmath.inf]))


@pytest.mark.parametrize("p", [MP_A, MP_HALF_PI, CH_A], ids=["mp", "mp-half-pi", "ch"])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_classical_norm_against_mpmath(p, n):
    assert classical_norm(p, n) == pytest.approx(_mpmath_norm(p, n), rel=1e-9)


@pytest.mark.parametrize(
    "p, D",
    [(MP_A, IndexSet.mp()), (MP_A, IndexSet.mp([2])), (MP_HALF_PI, IndexSet.mp([2])), (CH_A, IndexSet.ch([2]))],
    ids=["mp-empty", "mp-d2", "mp-d2-half-pi", "ch-d2"],
)
def test_gram_matrix(p, D):
    assert strip_check(deformed_system(p, D)).passed
    rep = gram_report(WeightSpec(p, D), 4)
    assert rep.passed(diag_tol=1e-7, off_tol=1e-8), rep.to_json()


def test_deformed_norm_matches_closed_form():
    spec = WeightSpec(MP_A, IndexSet.mp([2]))
    for n in (0, 2):
        got = quad_norm(spec, n, n).real
        assert got == pytest.approx(expected_norm(MP_A, spec.D, n), rel=1e-7)


def test_quadrature_guards():
    with pytest.raises(ValueError):
        quad_norm(WeightSpec(mp_params(-1, (3, 4, 5)), IndexSet.mp()), 0, 0)
    with pytest.raises(ValueError):
        quad_norm(WeightSpec(MP_A, IndexSet.mp([1])), 0, 0)


# -- strip condition --------------------------------------------------------------------


def test_strip_check_outcomes():
    assert strip_check(deformed_system(MP_A, IndexSet.mp())).passed
    assert strip_check(deformed_system(MP_A, IndexSet.mp([2]))).passed
    odd = strip_check(deformed_system(MP_A, IndexSet.mp([1])))
    assert not odd.passed and odd.min_abs_imag < 0.5
    assert strip_check(deformed_system(CH_A, IndexSet.ch([2]))).passed


# -- zeros ---------------------------------------------------------------------------------


def test_interlaces():
    assert interlaces([1.5], [1.0, 2.0])
    assert not interlaces([2.5], [1.0, 2.0])
    assert not interlaces([1.5, 1.6], [1.0, 2.0])


@pytest.mark.parametrize("n", range(1, 7))
def test_classical_zeros_are_real(n):
    census = zero_census(classical_pn(MP_A, n))
    assert census.real_count == n and census.complex_count == 0
    assert census.exact_sign_changes == n


@pytest.mark.parametrize("p, D", [(MP_A, IndexSet.mp([2])), (CH_A, IndexSet.ch([2]))], ids=["mp-d2", "ch-d2"])
def test_deformed_zero_structure(p, D):
    system = deformed_system(p, D)
    prev = None
    for n in range(7):
        census = zero_census(system.P(n))
        assert census.real_count == n
        assert census.complex_count == D.ell
        assert census.exact_sign_changes == n
        if prev is not None:
            assert interlaces(prev, census.real)
        prev = census.real


def test_zero_census_of_constant():
    census = zero_census(Poly.const(3))
    assert census.real_count == 0 and census.complex_count == 0
