from fractions import Fraction

import pytest

from miop.classical import ch_params, energy, mp_params
from miop.closure import (
    AlphaSystem,
    ClosureData,
    alpha_eval,
    alpha_formula,
    build_Ri,
    closure_from_fit,
    ladder_apply,
    ladder_direct,
    ladder_weights,
    p_ij,
    smallest_order_observed,
    verify_closure_operator,
    verify_closure_spectral,
)
from miop.exact_core import ONE, ZERO, GaussianRational, Poly
from miop.multi_indexed import IndexSet, deformed_system
from miop.recurrences import build_X, fit_Iz, solve_const_coeffs

MP_A = mp_params(2, (3, 4, 5))
CH_A = ch_params("3+i", Fraction(7, 4))  # b1 = 19/2
t = Poly.x()


def _setup(p, D, Y=Poly.const(1), n_max=None):
    system = deformed_system(p, D)
    X = build_X(system, Y)
    L = X.degree
    bound = L if p.is_mp else 2 * L
    rec = solve_const_coeffs(system, X, n_max or bound + 3, Y)
    sys = AlphaSystem(p, L)
    closure = closure_from_fit(sys, fit_Iz(rec, system))
    return system, X, rec, sys, closure


def test_alpha_values():
    sys = AlphaSystem(MP_A, 3)
    assert alpha_eval(sys, 1, 0) == Fraction(18, 5)
    assert [sys.step(j) for j in range(1, 7)] == [3, 2, 1, -1, -2, -3]
    with pytest.raises(ValueError):
        sys.step(7)
    ch = AlphaSystem(CH_A, 2)
    for n in range(4):
        for j in range(1, 5):
            assert alpha_eval(ch, j, n) == energy(CH_A, n + ch.step(j)) - energy(CH_A, n)
            assert alpha_formula(ch, j, n) == alpha_eval(ch, j, n)


def test_pair_sums():
    for p in (MP_A, CH_A):
        sys = AlphaSystem(p, 2)
        for j in (1, 2):
            for n in range(2, 5):
                total = alpha_eval(sys, j, n) + alpha_eval(sys, 2 * 2 + 1 - j, n)
                m = 2 + 1 - j
                assert total == (0 if p.is_mp else 2 * m * m)


def test_mp_order_six_coefficients():
    data = build_Ri(AlphaSystem(MP_A, 3))
    s = MP_A.s
    assert data.R[4] == Poly.const(56 * s ** 2)
    assert data.R[2] == Poly.const(-784 * s ** 4)
    assert data.R[0] == Poly.const(2304 * s ** 6)
    assert data.R[1].is_zero() and data.R[3].is_zero() and data.R[5].is_zero()
    assert data.R[4] == Poly.const(Fraction(56 * 9, 25))


def test_ch_order_two_coefficients():
    data = build_Ri(AlphaSystem(CH_A, 1))
    b = CH_A.b1 - 1
    assert data.R[1] == Poly.const(2)
    assert data.R[0] == -Poly([1 - b * b, -4])


@pytest.mark.parametrize("p", [MP_A, CH_A], ids=["mp", "ch"])
@pytest.mark.parametrize("L", [1, 2, 3])
def test_coefficients_are_elementary_symmetric(p, L):
    """t^K - sum R_i t^i factors as prod_j (t - alpha_j) at every level."""
    sys = AlphaSystem(p, L)
    data = build_Ri(sys)
    for n in range(L, L + 3):
        z = energy(p, n)
        char = Poly(data.char_poly_at(z))
        prod = Poly.const(1)
        for j in range(1, sys.K + 1):
            prod = prod * (t - alpha_eval(sys, j, n))
        assert char == prod


@pytest.mark.parametrize(
    "p, D, L",
    [(MP_A, IndexSet.mp([2]), 3), (MP_A, IndexSet.mp([1]), 2), (CH_A, IndexSet.ch([1]), 2), (MP_A, IndexSet.mp(), 1)],
    ids=["mp-d2", "mp-d1", "ch-d1", "mp-empty"],
)
def test_spectral_closure(p, D, L):
    system, X, rec, sys, closure = _setup(p, D)
    assert closure.L == L
    rep = verify_closure_spectral(system, rec, closure, rec.n_max)
    assert rep.passed and rep.checked > 0


def test_spectral_closure_detects_bad_R():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp([2]))
    bad = ClosureData(closure.L, list(closure.R), closure.R_minus1 + 1)
    assert not verify_closure_spectral(system, rec, bad, 4).passed
    bad.R[4] = bad.R[4] + 1
    assert not verify_closure_spectral(system, rec, bad, 4).passed
    with pytest.raises(ValueError):
        verify_closure_spectral(system, rec, closure, rec.n_max + 1)


def test_operator_closure_mp_d2():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp([2]))
    for probe in (system.P(0), system.P(1) + system.P(2), system.P(0) * 3 - system.P(3)):
        assert verify_closure_operator(system, X, closure, probe).passed


def test_operator_closure_classical():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp())
    assert verify_closure_operator(system, X, closure, Poly.const(1)).passed


def test_operator_closure_detects_wrong_X():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp([2]))
    rep = verify_closure_operator(system, X + 1, closure, system.P(0))
    assert not rep.passed
    with pytest.raises(ValueError):
        verify_closure_operator(system, X, build_Ri(sys), system.P(0))


def test_p_ij_is_synthetic_division():
    """sum_i p_ij t^(i-1) equals prod_(k != j) (t - alpha_k)."""
    sys = AlphaSystem(MP_A, 3)
    data = build_Ri(sys)
    n = 4
    z = energy(MP_A, n)
    alphas = [alpha_eval(sys, k, n) for k in range(1, 7)]
    for j, aj in enumerate(alphas, start=1):
        quotient = Poly([p_ij(data, i, aj, z) for i in range(1, 7)])
        want = Poly.const(1)
        for k, ak in enumerate(alphas, start=1):
            if k != j:
                want = want * (t - ak)
        assert quotient == want
        assert p_ij(data, 6, aj, z) == ONE
    with pytest.raises(ValueError):
        p_ij(data, 0, alphas[0], z)


def test_weights_partial_fractions():
    """The Lagrange basis sums to one, so the summed weights are (1, 0, ..., 0)."""
    sys = AlphaSystem(MP_A, 3)
    system, X, rec, _, closure = _setup(MP_A, IndexSet.mp([2]))
    for n in (0, 3):
        totals = [ZERO] * sys.K
        for j in range(1, sys.K + 1):
            w, _ = ladder_weights(sys, closure, j, n)
            totals = [a + b for a, b in zip(totals, w)]
        assert totals == [ONE] + [ZERO] * (sys.K - 1)


@pytest.mark.parametrize(
    "p, D",
    [(MP_A, IndexSet.mp([2])), (MP_A, IndexSet.mp([1])), (CH_A, IndexSet.ch([1]))],
    ids=["mp-d2", "mp-d1", "ch-d1"],
)
def test_ladder_actions(p, D):
    system, X, rec, sys, closure = _setup(p, D)
    for n in range(6):
        for j in range(1, sys.K + 1):
            coef, target = ladder_apply(rec, sys.L, j, n)
            got = ladder_direct(system, X, closure, j, n)
            want = system.P(target) * coef if target >= 0 else Poly()
            assert got == want


def test_ladder_spot_values():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp([2]))
    assert ladder_apply(rec, 3, 1, 0) == (Fraction(5, 24), 3)
    assert ladder_apply(rec, 3, 3, 2) == (rec.coeff(2, 1), 3)
    assert ladder_apply(rec, 3, 4, 0) == (ZERO, -1)
    with pytest.raises(ValueError):
        ladder_apply(rec, 3, 7, 0)


def test_smallest_order_bound():
    system, X, rec, sys, closure = _setup(MP_A, IndexSet.mp([2]))
    assert smallest_order_observed(rec, system) == 6


def test_closure_json():
    _, _, _, _, closure = _setup(MP_A, IndexSet.mp([1]))
    js = closure.to_json()
    assert js["K"] == 4 and set(js["R"]) == {"-1", "0", "1", "2", "3"}
