"""Meixner-Pollaczek (MP) and continuous Hahn (cH) polynomials in exact arithmetic.

The coordinate is ``eta(x) = x`` with unit imaginary shift, so a polynomial in
``x`` and a polynomial in ``eta`` are the same object.  Parameters:

* MP: ``lam = (a, phi)`` with rational ``a`` and ``e^{i phi}`` a rational
  unit-circle point,
* cH: ``lam = (a1, a2)`` with Gaussian-rational ``a1, a2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

from .exact_core import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    Poly,
    UnitCirclePoint,
    as_gaussian,
    make_circle_point,
    pochhammer,
    pochhammer_poly,
    poly_shift,
    poly_star,
)

__all__ = [
    "MP",
    "CH",
    "DegenerateParameterError",
    "ModelParams",
    "mp_params",
    "ch_params",
    "three_term_coeffs",
    "classical_pn",
    "classical_pn_hypergeometric",
    "leading_cn",
    "energy",
    "potential",
    "forward_shift_apply",
    "backward_shift_apply",
    "htilde_apply",
    "htilde_with_potential",
]

MP = "mp"
CH = "ch"


class DegenerateParameterError(ArithmeticError):
    """A parameter combination makes some denominator vanish."""


@dataclass(frozen=True)
class ModelParams:
    """Parameter set for either model.

    For MP only ``a`` and ``phi`` are used; for cH only ``a1`` and ``a2``.
    """

    model: str
    a: Fraction = Fraction(0)
    phi: Optional[UnitCirclePoint] = None
    a1: GaussianRational = ZERO
    a2: GaussianRational = ZERO

    def __post_init__(self):
        if self.model == MP:
            if self.phi is None:
                raise ValueError("MP parameters need a unit-circle point")
            object.__setattr__(self, "a", Fraction(self.a))
        elif self.model == CH:
            object.__setattr__(self, "a1", as_gaussian(self.a1))
            object.__setattr__(self, "a2", as_gaussian(self.a2))
        else:
            raise ValueError(f"unknown model {self.model!r}")

    @property
    def is_mp(self) -> bool:
        return self.model == MP

    # cH symmetric combinations
    @property
    def sigma1(self) -> Fraction:
        return 2 * self.a1.re

    @property
    def sigma1p(self) -> Fraction:
        return 2 * self.a2.re

    @property
    def b1(self) -> Fraction:
        if self.is_mp:
            raise AttributeError("b1 is defined for cH only")
        return self.sigma1 + self.sigma1p

    @property
    def s(self) -> Fraction:
        return self.phi.s

    @property
    def c(self) -> Fraction:
        return self.phi.c

    def shifted(self, d1, d2=0) -> "ModelParams":
        """``lam + (d1, d2)``; MP ignores ``d2`` (the angle never shifts)."""
        if self.is_mp:
            return ModelParams(MP, a=self.a + Fraction(d1), phi=self.phi)
        return ModelParams(CH, a1=self.a1 + Fraction(d1), a2=self.a2 + Fraction(d2))

    def plus_delta(self, times=1) -> "ModelParams":
        """``lam + times*delta`` with delta = (1/2, 0) for MP and (1/2, 1/2) for cH."""
        h = Fraction(times, 2)
        return self.shifted(h, 0 if self.is_mp else h)

    def in_orthogonal_range(self) -> bool:
        if self.is_mp:
            return self.a > 0 and self.s > 0
        return self.a1.re > 0 and self.a2.re > 0

    def validate(self, n_max: int) -> "ModelParams":
        """Reject cH points whose three-term data degenerate for 0 <= n <= n_max."""
        if not self.is_mp:
            for n in range(0, n_max + 1):
                b1 = self.b1
                if (2 * n + b1 - 1) * (2 * n + b1) == 0 or (n and 2 * n + b1 - 2 == 0):
                    raise DegenerateParameterError(
                        f"three-term denominator vanishes at n={n} (b1={b1})"
                    )
        return self

    def label(self) -> str:
        if self.is_mp:
            return f"MP(a={self.a}, cos={self.c}, sin={self.s})"
        return f"cH(a1={self.a1}, a2={self.a2})"

    def to_json(self) -> dict:
        if self.is_mp:
            return {"model": MP, "a": str(self.a), "cos": str(self.c), "sin": str(self.s)}
        return {"model": CH, "a1": self.a1.to_json(), "a2": self.a2.to_json()}


def mp_params(a, circle=(3, 4, 5)) -> ModelParams:
    """MP parameters from ``a`` and a Pythagorean triple ``(p, q, r)`` (or a circle point)."""
    pt = circle if isinstance(circle, UnitCirclePoint) else make_circle_point(*circle)
    return ModelParams(MP, a=Fraction(a), phi=pt)


def ch_params(a1, a2) -> ModelParams:
    return ModelParams(CH, a1=as_gaussian(a1), a2=as_gaussian(a2))


def _g(x) -> GaussianRational:
    return as_gaussian(x)


def three_term_coeffs(params: ModelParams, n: int):
    """``(A_n, B_n, C_n)`` of ``eta P_n = A_n P_{n+1} + B_n P_n + C_n P_{n-1}``."""
    if params.is_mp:
        s, c, a = params.s, params.c, params.a
        return (_g(Fraction(n + 1) / (2 * s)), _g(-(n + a) * c / s), _g((n + 2 * a - 1) / (2 * s)))
    a1, a2 = params.a1, params.a2
    a1c, a2c = a1.conjugate(), a2.conjugate()
    b1 = params.b1
    d1 = (2 * n + b1 - 1) * (2 * n + b1)
    d2 = (2 * n + b1 - 2) * (2 * n + b1 - 1)
    if n == -1:
        # A_{-1} = 0 kills every term it multiplies; B_{-1}, C_{-1} never enter.
        return ZERO, ZERO, ZERO
    if d1 == 0 or (n != 0 and d2 == 0):
        raise DegenerateParameterError(f"cH three-term denominator vanishes at n={n} (b1={b1})")
    a_n = _g(Fraction(n + 1) * (n + b1 - 1) / d1)
    term1 = (n + b1 - 1) * (n + a1 + a1c) * (n + a1 + a2c) / d1
    term2 = ZERO if n == 0 else n * (n + a2 + a1c - 1) * (n + a2 + a2c - 1) / d2
    b_n = I * (a1 - term1 + term2)
    if d2 == 0:
        # only possible at n = 0, where C_0 multiplies P_{-1} = 0
        c_n = ZERO
    else:
        c_n = (n + a1 + a1c - 1) * (n + a1 + a2c - 1) * (n + a2 + a1c - 1) * (n + a2 + a2c - 1) / d2
    return a_n, b_n, c_n


@lru_cache(maxsize=4096)
def classical_pn(params: ModelParams, n: int) -> Poly:
    """``P_n`` by iterating the three-term recurrence; the zero polynomial for n < 0."""
    if n < 0:
        return Poly()
    if n == 0:
        return Poly.const(1)
    a_n, b_n, c_n = three_term_coeffs(params, n - 1)
    if not a_n:
        raise DegenerateParameterError(f"A_{n - 1} = 0")
    x = Poly.x()
    nxt = (x - b_n) * classical_pn(params, n - 1) - classical_pn(params, n - 2) * c_n
    return nxt / a_n


@lru_cache(maxsize=4096)
def classical_pn_hypergeometric(params: ModelParams, n: int) -> Poly:
    """``P_n`` from its terminating hypergeometric sum, written without denominators.

    Only ``k!`` and ``n!`` are divided out, so the construction also works at
    parameters where the three-term coefficients degenerate (e.g. twisted cH).
    """
    if n < 0:
        return Poly()
    ix = Poly([0, I])
    total = Poly()
    if params.is_mp:
        a = params.a
        e = params.phi.exp_i
        z = ONE - e.conjugate() ** 2
        base = ix + a
        for k in range(n + 1):
            coef = pochhammer(Fraction(-n), k) / factorial(k) * pochhammer(2 * a + k, n - k)
            if coef:
                total = total + pochhammer_poly(base, k) * (_g(coef) * z ** k)
        return total * (e ** n / factorial(n))
    a1, a2 = params.a1, params.a2
    sig = a1 + a1.conjugate()
    mix = a1 + a2.conjugate()
    b1 = params.b1
    base = ix + a1
    for k in range(n + 1):
        coef = (
            _g(pochhammer(Fraction(-n), k) * pochhammer(n + b1 - 1, k) / factorial(k))
            * pochhammer(sig + k, n - k)
            * pochhammer(mix + k, n - k)
        )
        if coef:
            total = total + pochhammer_poly(base, k) * coef
    return total * (I ** n / factorial(n))


def leading_cn(params: ModelParams, n: int) -> GaussianRational:
    """Leading coefficient of ``P_n``."""
    if params.is_mp:
        return _g((2 * params.s) ** n / factorial(n))
    return _g(pochhammer(n + params.b1 - 1, n) / factorial(n))


def energy(params: ModelParams, n: int) -> GaussianRational:
    """``E_n``: ``2 n sin(phi)`` (MP) or ``n (n + b1 - 1)`` (cH)."""
    if params.is_mp:
        return _g(2 * n * params.s)
    return _g(n * (n + params.b1 - 1))


def potential(params: ModelParams) -> Poly:
    """``V(x)``: ``i e^{-i phi} (a + i x)`` (MP) or ``(a1 + i x)(a2 + i x)`` (cH)."""
    if params.is_mp:
        pref = I * params.phi.exp_i.conjugate()
        return Poly([params.a, I]) * pref
    return Poly([params.a1, I]) * Poly([params.a2, I])


def forward_shift_apply(params: ModelParams, p: Poly) -> Poly:
    """``F p = i (p(x - i/2) - p(x + i/2))``."""
    h = Fraction(1, 2)
    return (poly_shift(p, -h) - poly_shift(p, h)) * I


def backward_shift_apply(params: ModelParams, p: Poly) -> Poly:
    """``B p = -i (V p(x - i/2) - V* p(x + i/2))``."""
    h = Fraction(1, 2)
    v = potential(params)
    return (v * poly_shift(p, -h) - poly_star(v) * poly_shift(p, h)) * (-I)


def htilde_with_potential(v: Poly, p: Poly) -> Poly:
    """``V (p(x - i) - p) + V* (p(x + i) - p)`` for a polynomial potential ``V``."""
    return v * (poly_shift(p, -1) - p) + poly_star(v) * (poly_shift(p, 1) - p)


def htilde_apply(params: ModelParams, p: Poly) -> Poly:
    """The square-root-free difference operator acting on ``p``."""
    return htilde_with_potential(potential(params), p)
