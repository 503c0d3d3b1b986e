"""Closed-form coefficient tables used as an independent oracle.

Each entry is written as a function of the model parameters and ``n``.
The comparison engine builds the same objects through the generic machinery
(determinants, graded elimination, interpolation) and checks exact agreement
at several parameter points.  ``X`` and ``I(z)`` are compared up to one global scalar each, since
their overall normalization is a free choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .classical import ModelParams, ch_params, mp_params
from .closure import AlphaSystem, build_Ri, closure_from_fit, ladder_weights
from .exact_core import I, ONE, ZERO, GaussianRational, Poly, as_gaussian, pochhammer
from .multi_indexed import IndexSet, build_Xi_D, deformed_system
from .recurrences import build_X, fit_Iz, solve_const_coeffs

__all__ = ["GoldenCase", "GoldenResult", "CASES", "run_case", "run_all", "closure_example_check"]

F = Fraction
eta = Poly.x()


class _MP:
    """Shorthands for MP closed forms."""

    def __init__(self, p: ModelParams):
        self.a = p.a
        self.s = p.s
        self.c = p.c
        self.cot = p.c / p.s
        self.C2 = p.c ** 2 - p.s ** 2
        self.S2 = 2 * p.c * p.s
        self.C4 = 2 * self.C2 ** 2 - 1


class _CH:
    """Shorthands for cH closed forms (``S1 = a1 + a1*``, ``S2 = a1 a1*``, primes for ``a2``)."""

    def __init__(self, p: ModelParams):
        self.a1, self.a2 = p.a1, p.a2
        self.a1c, self.a2c = p.a1.conjugate(), p.a2.conjugate()
        self.S1 = self.a1 + self.a1c
        self.S2 = self.a1 * self.a1c
        self.T1 = self.a2 + self.a2c
        self.T2 = self.a2 * self.a2c
        self.b1 = self.S1 + self.T1


def _poly(*coeffs) -> Poly:
    return Poly([as_gaussian(c) if not isinstance(c, GaussianRational) else c for c in coeffs])


P = pochhammer


# ---------------------------------------------------------------------------
# MP, D = {2}, Y = 1


def _mp_d2_X(m):
    a, s = m.a, m.s
    inner = _poly(12 * a * a - 24 * a + 13 + (12 * a * a - 36 * a + 23) * m.C2, -6 * (2 * a - 3) * m.S2, 8 * s * s)
    return eta * inner * F(1, 12)


_MP_D2_R = {
    3: lambda m, n: P(n + 1, 3) / (12 * m.s) * (2 * m.a + n - 3) / (2 * m.a + n),
    -3: lambda m, n: P(2 * m.a + n - 3, 3) / (12 * m.s),
    2: lambda m, n: -F(1, 2) * P(n + 1, 2) * (2 * m.a + n - 3) * m.cot,
    -2: lambda m, n: -F(1, 2) * P(2 * m.a + n - 3, 3) * m.cot,
    1: lambda m, n: (n + 1) * (2 * m.a + n - 3) / (4 * m.s) * (4 * m.a + 3 * n + 2 * (2 * m.a + n - 1) * m.C2),
    -1: lambda m, n: (2 * m.a + n - 3) * (2 * m.a + n - 1) / (4 * m.s)
    * (4 * m.a + 3 * n - 3 + 2 * (2 * m.a + n - 2) * m.C2),
    0: lambda m, n: -F(1, 6)
    * (
        (2 * m.a - 3) * (2 * m.a - 1) * (7 * m.a - 1)
        + 2 * (36 * m.a ** 2 - 60 * m.a + 19) * n
        + 6 * (8 * m.a - 7) * n ** 2
        + 10 * n ** 3
    )
    * m.cot
    + F(1, 24) * (2 * m.a + 2 * n - 1) * (4 * m.a * (7 * m.a + 5 * n - 16) + 33 - 22 * n + 4 * n * n) * m.S2,
}


def _mp_d2_I(m):
    a, s, C2 = m.a, m.s, m.C2
    return _poly(
        (2 * a - 3) * (2 * a - 1) * (14 * a + 7 + (14 * a - 11) * C2) * s ** 3,
        4 * (4 * (6 * a * a - 9 * a + 2) + (12 * a * a - 24 * a + 11) * C2) * s * s,
        6 * (6 * a - 5 + 2 * (a - 1) * C2) * s,
        4 + C2,
    ) * (-48 * s * m.S2)


# MP, D = {1, 2}, Y = 1


def _mp_d12_X(m):
    a, s = m.a, m.s
    inner = _poly(3 * a * a - 9 * a + 7 + (3 * a * a - 6 * a + 2) * m.C2, -3 * (a - 1) * m.S2, 2 * s * s)
    return eta * inner * (2 * s / 3)


_MP_D12_R = {
    3: lambda m, n: F(1, 6) * P(n + 1, 3) * P(2 * m.a + n - 3, 2) / P(2 * m.a + n, 2),
    2: lambda m, n: -P(n + 1, 2) * P(2 * m.a + n - 3, 2) / (2 * m.a + n) * m.c,
    1: lambda m, n: F(1, 2) * (n + 1) * (2 * m.a + n - 3) * (4 * m.a + 3 * n - 4 + 2 * (2 * m.a + n - 2) * m.C2),
}


def _mp_d12_I(m):
    a, s, C2 = m.a, m.s, m.C2
    return _poly(
        8 * (a - 1) * (a * (7 * a - 11) + (7 * a * a - 14 * a + 6) * C2) * s ** 3,
        4 * (4 * (6 * a * a - 12 * a + 5) + (12 * a * a - 24 * a + 11) * C2) * s * s,
        12 * (a - 1) * (3 + C2) * s,
        4 + C2,
    ) * (-96 * s * s * m.S2)


# MP, D = {2}, Y = eta


def _mp_d2_eta_X(m):
    a, s = m.a, m.s
    inner = _poly(
        -2 * (2 * a - 3) * m.S2,
        3 * (4 * a * a - 8 * a + 5 + (4 * a * a - 12 * a + 7) * m.C2),
        -8 * (2 * a - 3) * m.S2,
        12 * s * s,
    )
    return eta * inner * F(1, 24)


_MP_D2_ETA_R = {
    4: lambda m, n: P(n + 1, 4) / (32 * m.s ** 2) * (2 * m.a + n - 3) / (2 * m.a + n + 1),
    3: lambda m, n: -P(n + 1, 3) * m.c / (12 * m.s ** 2) * (2 * m.a + n - 3) / (2 * m.a + n) * (5 * m.a + 3 * n),
    2: lambda m, n: P(n + 1, 2) / (8 * m.s ** 2) * (2 * m.a + n - 3) * (2 * (2 * m.a + 2 * n + 1) + (4 * m.a + 3 * n) * m.C2),
    1: lambda m, n: -(n + 1) * m.c / (4 * m.s ** 2) * (2 * m.a + n - 3)
    * (4 * m.a * (m.a + 1) + (11 * m.a + 1) * n + 5 * n * n + 2 * (m.a + n) * (2 * m.a + n - 1) * m.C2),
}


def _mp_d2_eta_I(m):
    a, s, C2, C4 = m.a, m.s, m.C2, m.C4
    return _poly(
        (2 * a - 3)
        * (
            3 * (2 * a + 1) * (68 * a * a - 4 * a + 1)
            + 4 * (2 * a - 1) * (2 * a + 1) * (34 * a - 3) * C2
            + (2 * a - 1) * (68 * a * a - 80 * a + 15) * C4
        )
        * s ** 4,
        16
        * (
            3 * (56 * a ** 3 - 98 * a * a + 39 * a - 9)
            + 4 * (48 * a ** 3 - 96 * a * a + 50 * a - 9) * C2
            + (24 * a ** 3 - 60 * a * a + 44 * a - 9) * C4
        )
        * s ** 3,
        12 * (2 * (86 * a * a - 119 * a + 30) + 8 * (22 * a * a - 33 * a + 10) * C2 + (16 * a * a - 28 * a + 11) * C4) * s * s,
        4 * (36 * (4 * a - 3) + 4 * (34 * a - 27) * C2 + (10 * a - 9) * C4) * s,
        3 * (18 + 16 * C2 + C4),
    ) * (-192 * s * s)


# MP, D = {4}, Y = 1


def _mp_d4_X(m):
    a, s, c, C2, C4 = m.a, m.s, m.c, m.C2, m.C4
    const = (
        240 * a ** 4 - 1440 * a ** 3 + 3160 * a ** 2 - 3000 * a + 1067
        + 4 * (80 * a ** 4 - 560 * a ** 3 + 1360 * a ** 2 - 1380 * a + 511) * C2
        + (80 * a ** 4 - 800 * a ** 3 + 2760 * a ** 2 - 3800 * a + 1689) * C4
    )
    inner = _poly(
        const,
        -80 * (2 * a - 5) * (4 * a * a - 8 * a + 5 + (4 * a * a - 20 * a + 19) * C2) * c * s,
        160 * (4 * a * a - 16 * a + 17 + (4 * a * a - 20 * a + 23) * C2) * s * s,
        -320 * (2 * a - 5) * c * s ** 3,
        128 * s ** 4,
    )
    return eta * inner * F(1, 960)


_MP_D4_R = {
    5: lambda m, n: P(n + 1, 5) / (240 * m.s) * (2 * m.a + n - 5) / (2 * m.a + n),
    4: lambda m, n: -F(1, 24) * P(n + 1, 4) * (2 * m.a + n - 5) * m.cot,
    3: lambda m, n: P(n + 1, 3) / (48 * m.s) * (2 * m.a + n - 5) * (8 * m.a + 5 * n + 4 * (2 * m.a + n - 1) * m.C2),
    2: lambda m, n: -F(1, 6) * P(n + 1, 2) * (2 * m.a + n - 5) * (2 * m.a + n - 1) * m.cot
    * (2 * m.a + 2 * n + 1 + (2 * m.a + n - 2) * m.C2),
    1: lambda m, n: F(n + 1) / (24 * m.s) * (2 * m.a + n - 5) * (2 * m.a + n - 1)
    * (
        12 * m.a ** 2 + 6 * m.a * (4 * n - 1) + 10 * n * (n - 1)
        + 2 * (2 * m.a + n - 2) * (4 * m.a + 5 * n) * m.C2
        + P(2 * m.a + n - 3, 2) * m.C4
    ),
}


def _mp_d4_I(m):
    a, s, C2, C4 = m.a, m.s, m.C2, m.C4
    return _poly(
        (2 * a - 5) * (2 * a - 1)
        * (
            744 * a ** 3 - 828 * a ** 2 + 406 * a - 297
            + 4 * (2 * a - 3) * (2 * a + 1) * (62 * a - 57) * C2
            + (2 * a - 3) * (124 * a * a - 352 * a + 193) * C4
        )
        * s ** 5,
        32
        * (
            280 * a ** 4 - 1100 * a ** 3 + 1310 * a ** 2 - 645 * a + 131
            + 2 * (160 * a ** 4 - 760 * a ** 3 + 1180 * a ** 2 - 690 * a + 119) * C2
            + (40 * a ** 4 - 240 * a ** 3 + 510 * a ** 2 - 450 * a + 137) * C4
        )
        * s ** 4,
        40
        * (
            4 * (2 * a - 1) * (25 * a * a - 67 * a + 35)
            + 4 * (48 * a ** 3 - 180 * a * a + 200 * a - 65) * C2
            + (2 * a - 3) * (8 * a * a - 24 * a + 15) * C4
        )
        * s ** 3,
        20 * (2 * (78 * a * a - 173 * a + 78) + 4 * (32 * a * a - 82 * a + 47) * C2 + (8 * a * a - 24 * a + 17) * C4) * s * s,
        10 * (8 * (7 * a - 8) + 4 * (10 * a - 13) * C2 + (2 * a - 3) * C4) * s,
        38 + 24 * C2 + C4,
    ) * (-3840 * s ** 3 * m.S2)


# MP, D = {1}, Y = 1


def _mp_d1_X(m):
    return eta * _poly(2 * (1 - m.a) * m.c, m.s)


_MP_D1_R = {
    2: lambda m, n: P(n + 1, 2) / (4 * m.s) * (2 * m.a + n - 2) / (2 * m.a + n),
    -2: lambda m, n: P(2 * m.a + n - 2, 2) / (4 * m.s),
    1: lambda m, n: -(n + 1) * (2 * m.a + n - 2) * m.cot,
    -1: lambda m, n: -P(2 * m.a + n - 2, 2) * m.cot,
    0: lambda m, n: (m.a * (6 * m.a + 10 * n - 7) + 3 * n * n - 7 * n + 1) / (2 * m.s)
    - F(1, 4) * (2 * m.a + 2 * n - 1) * (6 * m.a + 2 * n - 5) * m.s,
}


def _mp_d1_I(m):
    a, s, C2 = m.a, m.s, m.C2
    return _poly(
        (12 * a * (a - 1) - 1 + (2 * a - 1) * (6 * a - 5) * C2) * s * s,
        2 * (6 * a - 4 + (4 * a - 3) * C2) * s,
        2 + C2,
    ) * (-8 * s)


# MP, D = {1}, Y = eta


def _mp_d1_eta_X(m):
    return eta * _poly(m.s, 6 * (1 - m.a) * m.c, 4 * m.s) * F(1, 6)


_MP_D1_ETA_R = {
    3: lambda m, n: P(n + 1, 3) / (12 * m.s ** 2) * (2 * m.a + n - 2) / (2 * m.a + n + 1),
    2: lambda m, n: -P(n + 1, 2) * (3 * m.a + 2 * n) * m.c / (4 * m.s ** 2) * (2 * m.a + n - 2) / (2 * m.a + n),
    1: lambda m, n: (n + 1) * (2 * m.a + n - 2) / (4 * m.s ** 2) * (2 * m.a + 3 * n + 1 + 2 * (m.a + n) * m.C2),
}


def _mp_d1_eta_I(m):
    a, s, C2 = m.a, m.s, m.C2
    return _poly(
        (a - 1) * (20 * a * (a + 1) - 3 + (2 * a - 1) * (10 * a - 3) * C2) * s ** 3,
        2 * (30 * a * (a - 1) + 4 + (12 * a * a - 15 * a + 4) * C2) * s * s,
        3 * (10 * a - 6 + (3 * a - 2) * C2) * s,
        4 + C2,
    ) * (-48 * m.S2)


# MP, D = {1}, Y = eta^2


def _mp_d1_eta2_X(m):
    c1 = (1 - m.a) * m.c
    return eta * _poly(2 * c1, 3 * m.s, 8 * c1, 6 * m.s) * F(1, 12)


_MP_D1_ETA2_R = {
    4: lambda m, n: P(n + 1, 4) / (32 * m.s ** 3) * (2 * m.a + n - 2) / (2 * m.a + n + 2),
    3: lambda m, n: -P(n + 1, 3) * (4 * m.a + 3 * n + 2) * m.c / (12 * m.s ** 3) * (2 * m.a + n - 2) / (2 * m.a + n + 1),
    2: lambda m, n: P(n + 1, 2) / (8 * m.s ** 3) * (2 * m.a + n - 2) / (2 * m.a + n)
    * (
        5 * m.a * (m.a + 1) + 2 * (5 * m.a + 1) * n + 4 * n * n
        + (5 * m.a ** 2 + 2 * m.a + 8 * m.a * n + 3 * n * n + n) * m.C2
    ),
    1: lambda m, n: -(n + 1) * (2 * m.a + n - 2) * m.c / (4 * m.s ** 3)
    * (2 * m.a ** 2 + 4 * m.a + 8 * m.a * n + 5 * n * n + 2 * n + 1 + 2 * (m.a + n) ** 2 * m.C2),
}


def _mp_d1_eta2_I(m):
    a, s, C2, C4 = m.a, m.s, m.C2, m.C4
    return _poly(
        (
            3 * (2 * a + 1) * (56 * a ** 3 + 4 * a * a - 58 * a - 3)
            + 4 * (112 * a ** 4 - 16 * a ** 3 - 112 * a * a + 16 * a + 3) * C2
            + (2 * a - 1) * (56 * a ** 3 - 100 * a * a + 38 * a + 3) * C4
        )
        * s ** 4,
        16
        * (
            3 * (32 * a ** 3 - 33 * a * a + 13 * a - 6)
            + 2 * (54 * a ** 3 - 69 * a * a + 29 * a - 8) * C2
            + (a - 1) * (12 * a * a - 9 * a + 1) * C4
        )
        * s ** 3,
        12 * (126 * a * (a - 1) + 30 + 4 * (31 * a * a - 33 * a + 8) * C2 + (10 * a * a - 12 * a + 3) * C4) * s * s,
        4 * (18 * (7 * a - 4) + 4 * (29 * a - 17) * C2 + (8 * a - 5) * C4) * s,
        3 * (18 + 16 * C2 + C4),
    ) * (-192 * s)


# MP, D = {3}, Y = 1


def _mp_d3_X(m):
    a, s, c, C2 = m.a, m.s, m.c, m.C2
    inner = _poly(
        -2 * (a - 2) * ((2 * a - 1) ** 2 + (4 * a * (a - 4) + 11) * C2) * c,
        (12 * a * (a - 3) + 29 + (12 * a * (a - 4) + 43) * C2) * s,
        -16 * (a - 2) * c * s * s,
        4 * s ** 3,
    )
    return eta * inner * F(1, 12)


_MP_D3_R = {
    4: lambda m, n: P(n + 1, 4) / (48 * m.s) * (2 * m.a + n - 4) / (2 * m.a + n),
    3: lambda m, n: -F(1, 6) * P(n + 1, 3) * (2 * m.a + n - 4) * m.cot,
    2: lambda m, n: P(n + 1, 2) / (12 * m.s) * (2 * m.a + n - 4) * (6 * m.a + 4 * n + 3 * (2 * m.a + n - 1) * m.C2),
    1: lambda m, n: -F(1, 6) * (n + 1) * (2 * m.a + n - 1) * (2 * m.a + n - 4) * m.cot
    * (4 * m.a + 5 * n + 2 + 2 * (2 * m.a + n - 2) * m.C2),
}


def _mp_d3_I(m):
    a, s, C2, C4 = m.a, m.s, m.C2, m.C4
    return _poly(
        3 * (2 * a - 1)
        * (
            (2 * a - 1) * (60 * a * a - 116 * a - 9)
            + 4 * (40 * a ** 3 - 116 * a * a + 70 * a + 5) * C2
            + (2 * a - 3) * (20 * a * a - 56 * a + 31) * C4
        )
        * s ** 4,
        16
        * (
            3 * (2 * a - 1) * (16 * a * a - 35 * a + 12)
            + 8 * (14 * a ** 3 - 42 * a * a + 35 * a - 8) * C2
            + (4 * a - 5) * (4 * a * a - 10 * a + 5) * C4
        )
        * s ** 3,
        4 * (6 * (2 * a - 1) * (19 * a - 27) + 8 * (30 * a * a - 63 * a + 28) * C2 + (24 * a * a - 60 * a + 35) * C4) * s * s,
        4 * (54 * (a - 1) + 4 * (13 * a - 14) * C2 + (4 * a - 5) * C4) * s,
        18 + 16 * C2 + C4,
    ) * (-384 * s ** 3)


# ---------------------------------------------------------------------------
# cH, D = {2 (type I)}, Y = 1


def _ch_d2_X(h):
    a1, a2, a1c, a2c, S1, S2, T1, T2 = h.a1, h.a2, h.a1c, h.a2c, h.S1, h.S2, h.T1, h.T2
    q2 = a2 * (a2 + 1)
    const = (
        12
        + (36 * q2 - 2 * T1 - 24 * T2 - 7) * S1
        + (1 - 12 * q2) * S1 ** 2
        + 24 * q2 * (a1 ** 2 - 3 * a1 + S2)
        - T1 * (23 * T1 + 17)
        - 12 * a1 * (a1 - 3) * T1 * (T1 + 1)
        + 24 * (a1 ** 2 - 3 * a1 + 3 + S2) * T2
    )
    lin = 6 * I * (S1 - T1 - 3) * (a1 - a1c + 2 * (a1 * a2c - a1c * a2) + 3 * (a2 - a2c))
    quad = 4 * P(S1 - T1 - 4, 2)
    return eta * _poly(const, lin, quad) * F(1, 24)


_CH_D2_R = {
    3: lambda h, n: P(h.S1 - h.T1 - 4, 2) * P(n + 1, 3) * (n + h.S1 - 3) * P(n + h.b1 - 1, 3)
    / (6 * (n + h.S1) * P(2 * n + h.b1 - 1, 6)),
    2: lambda h, n: I * (h.a1 - h.a1c - h.a2 + h.a2c) * (h.S1 - h.T1 - 3) * (h.b1 - 2) * P(n + 1, 2)
    * (n + h.S1 - 3) * (n + h.T1 + 2) * P(n + h.b1 - 1, 2)
    / (2 * P(2 * n + h.b1 - 2, 5) * (2 * n + h.b1 + 4)),
}


# cH, D = {1 (type I)}, Y = 1


def _ch_d1_X(h):
    lin = -2 * I * (h.a2 - h.a2c + h.a1 * h.a2c - h.a1c * h.a2)
    return eta * _poly(lin, 2 - h.S1 + h.T1) * F(1, 2)


_CH_D1_R = {
    2: lambda h, n: (2 - h.S1 + h.T1) * P(n + 1, 2) * (n + h.S1 - 2) * P(n + h.b1 - 1, 2)
    / (2 * (n + h.S1) * P(2 * n + h.b1 - 1, 4)),
    1: lambda h, n: -I * (h.a1 - h.a1c - h.a2 + h.a2c) * (h.b1 - 2) * (n + 1) * (n + h.S1 - 2) * (n + h.T1 + 1)
    * (n + h.b1 - 1)
    / (P(2 * n + h.b1 - 2, 3) * (2 * n + h.b1 + 2)),
}


def _ch_d1_I(h):
    A1, A2, A1c, A2c, S1, S2, T1, T2, b1 = h.a1, h.a2, h.a1c, h.a2c, h.S1, h.S2, h.T1, h.T2, h.b1
    z3 = -4 * (2 - S1 + T1)
    z2 = 2 * (
        16 - S1 ** 3 - 12 * S2 + 12 * A2 * S2 + 6 * A1 ** 2 * (2 * A2 - T1) + 14 * T1 + 4 * S2 * T1 - 3 * T1 ** 2
        + T1 ** 3
        + S1 ** 2 * (3 - 6 * A2 + 3 * T1)
        + S1 * (-10 + 12 * A2 + 6 * A2 ** 2 + 6 * S2 - 16 * T1 - 3 * T1 ** 2 - 4 * T2)
        + 20 * T2 - 6 * T1 * T2
        - 6 * A1 * (4 * A2 + 2 * A2 ** 2 - 2 * T1 - T1 ** 2 + 2 * T2)
    )
    z1 = -2 * (
        6 - 24 * S2 + 48 * A2 * S2 + 16 * A2 ** 2 * S2 + 4 * A2 ** 3 * S2
        + 4 * A2 ** 2 * A2c * S2 + 27 * T1 - 20 * S2 * T1 + 4 * T1 ** 2 + 10 * S2 * T1 ** 2
        - 11 * T1 ** 3 - 10 * S2 * T1 ** 3 + 3 * T1 ** 4
        + S1 ** 4 * (1 + 2 * T1) + 16 * S2 * T2 + 24 * T1 * T2
        + 4 * S2 * T1 * T2 - 14 * T1 ** 2 * T2
        - 2 * A1 ** 3 * (6 * A2 + 2 * A2 ** 2 - 3 * T1 - T1 ** 2 + 2 * T2)
        + S1 ** 3 * (-1 + 6 * A2 + 2 * A2 ** 2 - 8 * T1 + 10 * T2)
        - S1 ** 2 * (
            8 + 24 * A2 + 2 * A2 ** 3 + 2 * A2 ** 2 * (4 + A2c) - 19 * T1 - 12 * T1 ** 2
            + 2 * S2 * (3 + 5 * T1) + 46 * T2 - 12 * T1 * T2
        )
        + 2 * A1 * (-24 * A2 + 2 * A2 ** 3 + 2 * A2 ** 2 * (-4 + A2c) + 4 * T1 ** 2 - T1 ** 3 - 8 * T2 + 2 * T1 * (6 + T2))
        + 2 * A1 ** 2 * (
            -6 * (-4 + A1c) * A2 + 2 * A2 ** 3 + A2 ** 2 * (8 - 2 * A1c + 2 * A2c)
            + (-4 + A1c) * T1 ** 2 - T1 ** 3
            - 2 * (-4 + A1c) * T2
            + T1 * (-12 + 3 * A1c + 2 * T2)
        )
        - S1 * (
            -9 + 2 * A2 ** 3 + 12 * A2 * (-2 + S2)
            + 2 * A2 ** 2 * (-4 + A2c + 2 * S2) + 40 * T1 + 23 * T1 ** 2 - 12 * T1 ** 3
            + 2 * T1 ** 4 - 52 * T2
            + 42 * T1 * T2 - 10 * T1 ** 2 * T2
            + 2 * S2 * (-12 - 15 * T1 + 6 * T1 ** 2 + 2 * T2)
        )
    )
    z0 = -F(1, 2) * P(b1 - 3, 2) * (
        -32 * A2 ** 2 * S2 - 8 * A2 ** 3 * S2 - 8 * A2 ** 2 * A2c * S2
        - 2 * T1 + 16 * S2 * T1 - 7 * T1 ** 2 + 20 * S2 * T1 ** 2 - 5 * T1 ** 3
        + S1 ** 3 * (-4 * A2 ** 2 + (1 + 2 * T1) ** 2)
        - 4 * A1 ** 2 * (2 * A2 ** 3 + A2 ** 2 * (8 - 2 * A1c + 2 * A2c) + (-4 + A1c - T1) * (T1 ** 2 - 2 * T2))
        + 8 * A1 * (2 * A2 ** 3 + 2 * A2 ** 2 * (2 + A2c) - (2 + T1) * (T1 ** 2 - 2 * T2))
        - 32 * S2 * T2 + 8 * T1 * T2 - 8 * S2 * T1 * T2
        + A1 ** 3 * (8 * A2 ** 2 - 4 * T1 ** 2 + 8 * T2)
        + S1 ** 2 * (-1 + 4 * A2 ** 3 + 4 * A2 ** 2 * (4 + A2c) + T1 - 8 * T1 ** 2 - 4 * T1 ** 3 + 12 * T2 + 16 * T1 * T2)
        - S1 * (
            2 + 8 * A2 ** 3 + 8 * A2 ** 2 * (2 + A2c - S2)
            + (-11 + 16 * S2) * T1 ** 2 - 12 * T1 ** 3
            + 24 * T2 - 8 * S2 * T2
            + 4 * T1 * (2 + 5 * S2 + 9 * T2)
        )
    )
    return _poly(z0, z1, z2, z3)


# ---------------------------------------------------------------------------
# registry


MP_POINTS = (mp_params(2, (3, 4, 5)), mp_params(F(7, 3), (5, 12, 13)))
MP_POINTS_ALT = (mp_params(F(7, 3), (3, 4, 5)), mp_params(F(11, 4), (5, 12, 13)))
CH_POINTS = (ch_params("3+i", F(7, 4)), ch_params("7/4+i/3", "6/5-i/2"))


@dataclass(frozen=True)
class GoldenCase:
    key: str
    description: str
    D: IndexSet
    Y: Poly
    points: Sequence[ModelParams]
    X: Optional[Callable] = None
    r: Dict[int, Callable] = field(default_factory=dict)
    Iz: Optional[Callable] = None
    n_check: int = 5

    @property
    def model(self) -> str:
        return self.D.model


ONE_POLY = Poly.const(1)

CASES: List[GoldenCase] = [
    GoldenCase("mp-d2", "MP D={2}, Y=1 (7-term)", IndexSet.mp([2]), ONE_POLY, MP_POINTS, _mp_d2_X, _MP_D2_R, _mp_d2_I),
    GoldenCase("mp-d12", "MP D={1,2}, Y=1 (7-term)", IndexSet.mp([1, 2]), ONE_POLY, MP_POINTS_ALT, _mp_d12_X, _MP_D12_R, _mp_d12_I),
    GoldenCase("mp-d2-eta", "MP D={2}, Y=eta (9-term)", IndexSet.mp([2]), eta, MP_POINTS, _mp_d2_eta_X, _MP_D2_ETA_R, _mp_d2_eta_I),
    GoldenCase("mp-d4", "MP D={4}, Y=1 (11-term)", IndexSet.mp([4]), ONE_POLY, (mp_params(3, (3, 4, 5)), mp_params(F(10, 3), (5, 12, 13))), _mp_d4_X, _MP_D4_R, _mp_d4_I),
    GoldenCase("mp-d1", "MP D={1}, Y=1 (5-term)", IndexSet.mp([1]), ONE_POLY, MP_POINTS, _mp_d1_X, _MP_D1_R, _mp_d1_I),
    GoldenCase("mp-d1-eta", "MP D={1}, Y=eta (7-term)", IndexSet.mp([1]), eta, MP_POINTS, _mp_d1_eta_X, _MP_D1_ETA_R, _mp_d1_eta_I),
    GoldenCase("mp-d1-eta2", "MP D={1}, Y=eta^2 (9-term)", IndexSet.mp([1]), eta * eta, MP_POINTS, _mp_d1_eta2_X, _MP_D1_ETA2_R, _mp_d1_eta2_I),
    GoldenCase("mp-d3", "MP D={3}, Y=1 (9-term)", IndexSet.mp([3]), ONE_POLY, MP_POINTS_ALT, _mp_d3_X, _MP_D3_R, _mp_d3_I),
    GoldenCase("ch-d2I", "cH D={2 type I}, Y=1 (7-term)", IndexSet.ch([2]), ONE_POLY, CH_POINTS, _ch_d2_X, _CH_D2_R, None),
    GoldenCase("ch-d1I", "cH D={1 type I}, Y=1 (5-term)", IndexSet.ch([1]), ONE_POLY, CH_POINTS, _ch_d1_X, _CH_D1_R, _ch_d1_I),
]


def case_by_key(key: str) -> GoldenCase:
    for c in CASES:
        if c.key == key:
            return c
    raise KeyError(key)


@dataclass
class GoldenResult:
    key: str
    description: str
    passed: bool = True
    checks: List[dict] = field(default_factory=list)

    def record(self, point: ModelParams, item: str, expected, got, ok: bool, **extra) -> None:
        entry = {
            "point": point.to_json(),
            "item": item,
            "expected": _js(expected),
            "got": _js(got),
            "match": ok,
        }
        entry.update(extra)
        self.checks.append(entry)
        self.passed = self.passed and ok

    def to_json(self) -> dict:
        return {"key": self.key, "description": self.description, "passed": self.passed, "checks": self.checks}


def _js(v):
    if v is None:
        return None
    if hasattr(v, "to_json"):
        return v.to_json()
    return as_gaussian(v).to_json()


def _scale_between(ours: Poly, theirs: Poly) -> Optional[GaussianRational]:
    """``lam`` with ``ours == lam * theirs``, or None when not proportional."""
    if theirs.is_zero() or ours.degree != theirs.degree:
        return None
    lam = ours.leading / theirs.leading
    return lam if ours == theirs * lam else None


def _shorthand(point: ModelParams):
    return _MP(point) if point.is_mp else _CH(point)


def run_case(case: GoldenCase) -> GoldenResult:
    res = GoldenResult(case.key, case.description)
    for point in case.points:
        system = deformed_system(point, case.D)
        X = build_X(system, case.Y)
        sh = _shorthand(point)
        scale = ONE
        if case.X is not None:
            theirs = case.X(sh)
            lam = _scale_between(X, theirs)
            res.record(point, "X", theirs, X, lam is not None, scale=_js(lam))
            if lam is not None:
                scale = lam
        L = X.degree
        bound = L if point.is_mp else 2 * L
        n_solve = max(case.n_check, bound + 2) if case.Iz is not None else case.n_check
        rec = solve_const_coeffs(system, X, n_solve, case.Y)
        res.record(point, "residual", 0, 0 if rec.ok else 1, rec.ok)
        for k, fn in sorted(case.r.items(), reverse=True):
            for n in range(case.n_check + 1):
                if n + k < 0:
                    continue
                want = as_gaussian(fn(sh, n)) * scale
                got = rec.coeff(n, k)
                res.record(point, f"r[{n},{k}]", want, got, want == got)
        if case.Iz is not None:
            fit = fit_Iz(rec, system)
            theirs = case.Iz(sh)
            lam = _scale_between(fit.I_poly, theirs)
            res.record(point, "I(z)", theirs, fit.I_poly, lam is not None and fit.held_out_ok, scale=_js(lam))
    return res


# ---------------------------------------------------------------------------
# closure example: MP D={2}, Y=1, L=3

LADDER_TABLE = {
    1: (7680, (384, 64, -120, -20, 6, 1), F(1, 6)),
    2: (1920, (-576, -144, 160, 40, -4, -1), F(-1, 4)),
    3: (1536, (1152, 576, -104, -52, 2, 1), F(1, 2)),
    4: (1536, (1152, -576, -104, 52, 2, -1), F(1, 2)),
    5: (1920, (-576, 144, 160, -40, -4, 1), F(-1, 4)),
    6: (7680, (384, -64, -120, 20, 6, -1), F(1, 6)),
}


def _closure_xi(m: _MP) -> Poly:
    a = m.a
    return _poly((a - 1) * (a - 1 + (a - 2) * m.C2), -(2 * a - 3) * m.S2, 1 - m.C2)


def closure_example_check(points: Sequence[ModelParams] = MP_POINTS) -> GoldenResult:
    res = GoldenResult("mp-d2-closure", "MP D={2}: denominator polynomial, R_i and ladder weights")
    for point in points:
        m = _MP(point)
        D = IndexSet.mp([2])
        xi = build_Xi_D(point, D)
        want_xi = _closure_xi(m)
        res.record(point, "Xi_D", want_xi, xi, xi == want_xi)
        sys = AlphaSystem(point, 3)
        data = build_Ri(sys)
        s = m.s
        want_R = {0: 2304 * s ** 6, 1: 0, 2: -784 * s ** 4, 3: 0, 4: 56 * s ** 2, 5: 0}
        for i, w in want_R.items():
            got = data.R[i]
            res.record(point, f"R_{i}", w, got, got == Poly.const(w))
        system = deformed_system(point, D)
        X = build_X(system, ONE_POLY)
        rec = solve_const_coeffs(system, X, 6)
        fit = fit_Iz(rec, system)
        closure = closure_from_fit(sys, fit)
        want_rm1 = -_mp_d2_I(m)
        res.record(point, "R_-1", want_rm1, closure.R_minus1, closure.R_minus1 == want_rm1)
        for j, (den, nums, last) in LADDER_TABLE.items():
            weights, w_r = ladder_weights(sys, closure, j, 0)
            for i, (num, w) in enumerate(zip(nums, weights)):
                want = as_gaussian(F(num, den) / s ** i)
                res.record(point, f"a({j}) weight {i}", want, w, want == w)
            want = as_gaussian(last / den / s ** 6)
            res.record(point, f"a({j}) weight R", want, w_r, want == w_r)
    return res


def run_all() -> List[GoldenResult]:
    out = [run_case(c) for c in CASES]
    out.append(closure_example_check())
    return out
