"""Floating-point checks: weights, orthogonality, zeros and the strip condition.

Exact polynomials are lowered to complex doubles only at evaluation time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .classical import ModelParams
from .exact_core import Poly
from .multi_indexed import DeformedSystem, IndexSet, deformed_system, norm_factor

__all__ = [
    "complex_gamma",
    "complex_loggamma",
    "WeightSpec",
    "classical_norm",
    "expected_norm",
    "quad_norm",
    "OrthoReport",
    "gram_report",
    "ZeroCensus",
    "zero_census",
    "interlaces",
    "StripReport",
    "strip_check",
]

# Lanczos coefficients, g = 7, nine terms
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def _check_pole(z: complex) -> None:
    if z.real <= 0 and abs(z.imag) < 1e-12 and abs(z.real - round(z.real)) < 1e-12:
        raise ValueError(f"Gamma has a pole at {z}")


def complex_loggamma(z: complex) -> complex:
    """Principal-branch-free ``log Gamma(z)`` (imaginary part not reduced mod 2 pi)."""
    z = complex(z)
    _check_pole(z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - complex_loggamma(1 - z)
    z -= 1
    acc = complex(_LANCZOS[0])
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def complex_gamma(z: complex) -> complex:
    """``Gamma(z)`` for complex ``z`` by the Lanczos approximation."""
    return cmath.exp(complex_loggamma(z))


def _log_abs_gamma_vec(a: complex, x: np.ndarray) -> np.ndarray:
    """``log |Gamma(a + i x)|`` over an array of real ``x``."""
    return np.array([complex_loggamma(a + 1j * float(t)).real for t in x])


@dataclass(frozen=True)
class WeightSpec:
    """Weight ``psi_D(x)^2 = phi_0(x; lam')^2 / (Xi(x - i/2) Xi(x + i/2))`` on the real line."""

    params: ModelParams
    D: IndexSet

    @property
    def system(self) -> DeformedSystem:
        return deformed_system(self.params, self.D)

    def log_phi0_sq(self, x: np.ndarray) -> np.ndarray:
        lp = self.system.lam_prime
        if lp.is_mp:
            ang = lp.phi.angle
            return (2 * ang - math.pi) * x + 2 * _log_abs_gamma_vec(complex(float(lp.a)), x)
        return 2 * (_log_abs_gamma_vec(complex(lp.a1), x) + _log_abs_gamma_vec(complex(lp.a2), x))

    def denominator(self, x: np.ndarray) -> np.ndarray:
        xi = self.system.Xi
        return (_horner(xi, x - 0.5j) * _horner(xi, x + 0.5j)).real

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.exp(self.log_phi0_sq(x)) / self.denominator(x)


def _horner(p: Poly, x) -> np.ndarray:
    cs = p.to_complex_coeffs()
    out = np.zeros_like(np.asarray(x, dtype=complex))
    for c in reversed(cs):
        out = out * x + c
    return out


def classical_norm(params: ModelParams, n: int) -> float:
    """``h_n`` of the undeformed system."""
    if params.is_mp:
        a = float(params.a)
        lg = complex_loggamma(n + 2 * a).real - math.lgamma(n + 1) - 2 * a * math.log(2 * float(params.s))
        return 2 * math.pi * math.exp(lg)
    a = [complex(params.a1), complex(params.a2)]
    b1 = float(params.b1)
    lg = sum(complex_loggamma(n + aj + ak.conjugate()) for aj in a for ak in a)
    lg -= math.lgamma(n + 1) + complex_loggamma(n + b1 - 1)
    return 2 * math.pi * cmath.exp(lg).real / (2 * n + b1 - 1)


def expected_norm(params: ModelParams, D: IndexSet, n: int) -> float:
    """``h_{D,n} = h_n * prod_j (E_n - E~_{d_j})``."""
    return classical_norm(params, n) * complex(norm_factor(params, D, n)).real


_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(24)


def _panel_integral(f, lo: float, hi: float, width: float) -> Tuple[complex, float]:
    """Composite Gauss-Legendre value of ``int f`` and of ``int |f|``."""
    n = max(1, int(math.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, n + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * (edges[1:] - edges[:-1])
    xs = (mids[:, None] + halves[:, None] * _NODES[None, :]).ravel()
    ws = (halves[:, None] * _WEIGHTS[None, :]).ravel()
    vals = f(xs)
    return complex(np.sum(ws * vals)), float(np.sum(ws * np.abs(vals)))


def _integrate(f, rtol: float = 1e-12) -> Tuple[complex, dict]:
    """Integral over the real line of a smooth, exponentially decaying ``f``.

    Convergence is measured against ``int |f|`` so that integrals which cancel
    to (nearly) zero still terminate.
    """
    T = 8.0
    width = 1.0
    prev, _ = _panel_integral(f, -T, T, width)
    for _ in range(12):
        T2 = 2 * T
        cur, scale = _panel_integral(f, -T2, T2, width)
        tail = max(abs(f(np.array([-T2]))[0]), abs(f(np.array([T2]))[0]))
        if abs(cur - prev) <= rtol * scale and tail < 1e-16 * scale:
            break
        prev, T = cur, T2
    refined, scale = _panel_integral(f, -T2, T2, width / 2)
    info = {"T": T2, "panel_width": width, "refinement_change": abs(refined - cur) / scale, "abs_integral": scale}
    return refined, info


def quad_norm(spec: WeightSpec, n: int, m: int, check_strip: bool = True) -> complex:
    """``int psi_D^2 P_{D,n} P_{D,m} dx`` by composite Gauss-Legendre quadrature."""
    value, _ = _quad_with_info(spec, n, m, check_strip)
    return value


def _quad_with_info(spec: WeightSpec, n: int, m: int, check_strip: bool = True):
    if not spec.params.in_orthogonal_range():
        raise ValueError("parameters outside the orthogonal range; the weight does not decay")
    if check_strip:
        rep = strip_check(spec.system)
        if not rep.passed:
            raise ValueError("denominator polynomial has zeros in the strip |Im x| <= 1/2")
    pn = spec.system.P(n)
    pm = spec.system.P(m)

    def f(x):
        return spec(x) * _horner(pn, x) * _horner(pm, x)

    return _integrate(f)


@dataclass
class OrthoReport:
    n_max: int
    gram: List[List[complex]]
    expected: List[float]
    max_diag_rel: float
    max_offdiag_rel: float
    diagnostics: dict = field(default_factory=dict)

    def passed(self, diag_tol: float = 1e-7, off_tol: float = 1e-8) -> bool:
        return self.max_diag_rel <= diag_tol and self.max_offdiag_rel <= off_tol

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "gram_real": [[g.real for g in row] for row in self.gram],
            "gram_imag": [[g.imag for g in row] for row in self.gram],
            "expected": self.expected,
            "max_diag_rel": self.max_diag_rel,
            "max_offdiag_rel": self.max_offdiag_rel,
            "diagnostics": self.diagnostics,
        }


def gram_report(spec: WeightSpec, n_max: int) -> OrthoReport:
    """Gram matrix for ``0 <= n, m <= n_max`` against the closed-form norms."""
    size = n_max + 1
    gram = [[0j] * size for _ in range(size)]
    Ts = []
    for n in range(size):
        for m in range(n, size):
            val, info = _quad_with_info(spec, n, m, check_strip=(n == 0 and m == 0))
            gram[n][m] = gram[m][n] = val
            Ts.append(info["T"])
    expected = [expected_norm(spec.params, spec.D, n) for n in range(size)]
    diag = max(abs(gram[n][n] - expected[n]) / abs(expected[n]) for n in range(size))
    off = 0.0
    for n in range(size):
        for m in range(size):
            if n != m:
                off = max(off, abs(gram[n][m]) / math.sqrt(abs(expected[n] * expected[m])))
    return OrthoReport(n_max, gram, expected, diag, off, {"max_T": max(Ts)})


@dataclass
class ZeroCensus:
    real: List[float]
    complex: List[complex]
    exact_sign_changes: Optional[int]
    ill_conditioned: bool

    @property
    def real_count(self) -> int:
        return len(self.real)

    @property
    def complex_count(self) -> int:
        return len(self.complex)

    def to_json(self) -> dict:
        return {
            "real": self.real,
            "complex": [[z.real, z.imag] for z in self.complex],
            "exact_sign_changes": self.exact_sign_changes,
            "ill_conditioned": self.ill_conditioned,
        }


def _to_fraction(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10 ** 12)


def _exact_sign_changes(p: Poly, real_roots: Sequence[float]) -> Optional[int]:
    """Sign changes of ``p`` at rational points separating the numerical real roots."""
    if not p.is_star_real:
        return None
    rs = sorted(real_roots)
    if rs:
        probes = [rs[0] - 1.0] + [0.5 * (u + v) for u, v in zip(rs, rs[1:])] + [rs[-1] + 1.0]
    else:
        probes = [0.0]
    signs = []
    for t in probes:
        v = p(_to_fraction(t)).re
        if v == 0:
            return None
        signs.append(v > 0)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def zero_census(p: Poly, tol: float = 1e-8) -> ZeroCensus:
    """Real and non-real zeros of ``p`` from companion-matrix eigenvalues."""
    if p.degree <= 0:
        return ZeroCensus([], [], 0, False)
    roots = np.roots(list(reversed(p.to_complex_coeffs())))
    real, cplx = [], []
    for r in roots:
        (real if abs(r.imag) < tol * (1 + abs(r)) else cplx).append(r)
    real = sorted(float(r.real) for r in real)
    cplx = sorted((complex(r) for r in cplx), key=lambda z: (z.real, z.imag))
    ill = any(abs(u - v) < 1e-6 * (1 + abs(u)) for i, u in enumerate(roots) for v in roots[i + 1:])
    return ZeroCensus(real, cplx, _exact_sign_changes(p, real), ill)


def interlaces(inner: Sequence[float], outer: Sequence[float]) -> bool:
    """True when each gap between consecutive ``outer`` zeros holds exactly one ``inner`` zero."""
    inner, outer = sorted(inner), sorted(outer)
    if len(outer) != len(inner) + 1:
        return False
    return all(outer[i] < inner[i] < outer[i + 1] for i in range(len(inner)))


@dataclass
class StripReport:
    passed: bool
    indeterminate: bool
    min_abs_imag: Optional[float]
    roots: List[complex]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "indeterminate": self.indeterminate,
            "min_abs_imag": self.min_abs_imag,
            "roots": [[z.real, z.imag] for z in self.roots],
        }


def strip_check(system: DeformedSystem, margin: float = 1e-6) -> StripReport:
    """Is ``Xi_D`` zero-free on the band ``|Im x| <= 1/2``?"""
    xi = system.Xi
    if xi.degree <= 0:
        return StripReport(True, False, None, [])
    roots = [complex(r) for r in np.roots(list(reversed(xi.to_complex_coeffs())))]
    low = min(abs(r.imag) for r in roots)
    indeterminate = abs(low - 0.5) <= margin
    return StripReport(low > 0.5 + margin, indeterminate, low, roots)
