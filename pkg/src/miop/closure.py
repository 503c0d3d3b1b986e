"""Closure relations of order ``K = 2L`` and ladder operators.

The closure relation reads

    (ad H)^K X = sum_{i<K} (ad H)^i X . R_i(H) + R_{-1}(H)

with ``R_i`` the signed elementary symmetric functions of ``alpha_1..alpha_K``.
Checks are done two ways: on eigenvalues (characteristic identity at ``z = E_n``)
and by applying the deformed operator to probe polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .classical import ModelParams, energy
from .exact_core import ONE, ZERO, GaussianRational, Poly, as_gaussian
from .multi_indexed import DeformedSystem
from .recurrences import (
    CheckReport,
    ConstRecurrence,
    SpectralFit,
    fit_Iz,
    pair_product_poly,
    pair_sum,
)

__all__ = [
    "AlphaSystem",
    "alpha_eval",
    "alpha_formula",
    "ClosureData",
    "build_Ri",
    "closure_from_fit",
    "verify_closure_spectral",
    "verify_closure_operator",
    "p_ij",
    "ladder_weights",
    "ladder_apply",
    "ladder_direct",
    "smallest_order_observed",
]


@dataclass(frozen=True)
class AlphaSystem:
    params: ModelParams
    L: int

    @property
    def K(self) -> int:
        return 2 * self.L

    def step(self, j: int) -> int:
        """Signed level step of ``alpha_j``: ``L+1-j`` (creation) or ``-(j-L)`` (annihilation)."""
        if not 1 <= j <= self.K:
            raise ValueError(f"alpha index {j} outside 1..{self.K}")
        return self.L + 1 - j if j <= self.L else -(j - self.L)


def alpha_formula(sys: AlphaSystem, j: int, n: int) -> GaussianRational:
    """``alpha_j(E_n)`` from the closed form, with the cH root taken as ``2n + b1 - 1``."""
    k = sys.step(j)
    m = abs(k)
    p = sys.params
    if p.is_mp:
        return as_gaussian(2 * k * p.s)
    root = 2 * n + p.b1 - 1
    return as_gaussian(m * m + (m if k > 0 else -m) * root)


def alpha_eval(sys: AlphaSystem, j: int, n: int) -> GaussianRational:
    """``alpha_j(E_n)`` as the energy gap ``E_{n+k} - E_n`` (checked against the closed form)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k = sys.step(j)
    gap = energy(sys.params, n + k) - energy(sys.params, n)
    if gap != alpha_formula(sys, j, n):
        raise ArithmeticError(f"alpha_{j}(E_{n}) disagrees with the energy gap")
    return gap


@dataclass
class ClosureData:
    L: int
    R: List[Poly]  # R_0 .. R_{K-1}, polynomials in z
    R_minus1: Optional[Poly] = None

    @property
    def K(self) -> int:
        return 2 * self.L

    def char_poly_at(self, z: GaussianRational) -> List[GaussianRational]:
        """Coefficients of ``t^K - sum R_i(z) t^i`` (index = power of t)."""
        cs = [-r(z) for r in self.R]
        cs.append(ONE)
        return cs

    def to_json(self) -> dict:
        out = {"L": self.L, "K": self.K, "R": {str(i): r.to_json() for i, r in enumerate(self.R)}}
        if self.R_minus1 is not None:
            out["R"]["-1"] = self.R_minus1.to_json()
        return out


def build_Ri(sys: AlphaSystem) -> ClosureData:
    """``R_0..R_{K-1}`` from ``prod_j (t^2 - (alpha_j + alpha_j') t + alpha_j alpha_j')``.

    Each pair sum and product is a polynomial in ``z``, so the coefficients of
    the product (as a polynomial in ``t``) are polynomials in ``z`` as well.
    """
    prod: List[Poly] = [Poly.const(1)]
    for j in range(1, sys.L + 1):
        quad = [pair_product_poly(sys.params, sys.L, j), Poly.const(-pair_sum(sys.params, sys.L, j)), Poly.const(1)]
        nxt = [Poly() for _ in range(len(prod) + 2)]
        for a, pa in enumerate(prod):
            for b, qb in enumerate(quad):
                nxt[a + b] = nxt[a + b] + pa * qb
        prod = nxt
    R = [-prod[i] for i in range(sys.K)]
    return ClosureData(sys.L, R)


def closure_from_fit(sys: AlphaSystem, fit: SpectralFit) -> ClosureData:
    data = build_Ri(sys)
    data.R_minus1 = -fit.I_poly
    return data


def _eval_poly(p: Poly, z: GaussianRational) -> GaussianRational:
    return p(z) if not p.is_zero() else ZERO


def verify_closure_spectral(system: DeformedSystem, rec: ConstRecurrence, closure: ClosureData, n_max: int) -> CheckReport:
    """Characteristic identity for every nonzero ladder step and the diagonal identity."""
    if n_max > rec.n_max:
        raise ValueError("recurrence not solved far enough")
    rep = CheckReport("closure (spectral)", True)
    K = closure.K
    for n in range(n_max + 1):
        z = energy(system.params, n)
        for k in range(-rec.L, rec.L + 1):
            if k == 0 or not rec.coeff(n, k):
                continue
            eps = energy(system.params, n + k) - z
            rhs = ZERO
            for i, r in enumerate(closure.R):
                rhs = rhs + _eval_poly(r, z) * eps ** i
            rep.checked += 1
            if eps ** K != rhs:
                rep.passed = False
                rep.failures.append({"n": n, "k": k, "kind": "characteristic"})
        if closure.R_minus1 is not None:
            lhs = _eval_poly(closure.R_minus1, z)
            rhs = -rec.coeff(n, 0) * _eval_poly(closure.R[0], z)
            rep.checked += 1
            if lhs != rhs:
                rep.passed = False
                rep.failures.append({"n": n, "kind": "diagonal", "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


class _OperatorCache:
    """Memoized powers of the deformed operator applied to polynomials."""

    def __init__(self, system: DeformedSystem):
        self.system = system
        self._memo: Dict[Tuple[Poly, int], Poly] = {}

    def power(self, p: Poly, m: int) -> Poly:
        if m == 0:
            return p
        key = (p, m)
        hit = self._memo.get(key)
        if hit is None:
            hit = self.system.htilde(self.power(p, m - 1))
            self._memo[key] = hit
        return hit

    def poly_of_H(self, f: Poly, p: Poly) -> Poly:
        out = Poly()
        for m in range(f.degree + 1):
            c = f.coeff(m)
            if c:
                out = out + self.power(p, m) * c
        return out

    def ad_power(self, X: Poly, i: int, p: Poly) -> Poly:
        """``(ad H)^i X`` applied to ``p``: ``sum_j C(i,j) (-1)^j H^{i-j} X H^j p``."""
        out = Poly()
        for j in range(i + 1):
            term = self.power(X * self.power(p, j), i - j)
            out = out + term * ((-1) ** j * comb(i, j))
        return out


def verify_closure_operator(system: DeformedSystem, X: Poly, closure: ClosureData, probe: Poly) -> CheckReport:
    """Apply both sides of the closure relation to ``probe`` and compare exactly.

    The deformed operator only maps polynomials to polynomials on the span of
    the eigenpolynomials; other probes raise ``InexactDivisionError``.
    """
    if closure.R_minus1 is None:
        raise ValueError("closure data lacks R_{-1}")
    ops = _OperatorCache(system)
    K = closure.K
    lhs = ops.ad_power(X, K, probe)
    rhs = ops.poly_of_H(closure.R_minus1, probe)
    for i, r in enumerate(closure.R):
        if r.is_zero():
            continue
        rhs = rhs + ops.ad_power(X, i, ops.poly_of_H(r, probe))
    rep = CheckReport("closure (operator)", lhs == rhs, checked=1)
    if not rep.passed:
        rep.failures.append({"residual": (lhs - rhs).to_json()})
    return rep


def p_ij(closure: ClosureData, i: int, alpha: GaussianRational, z: GaussianRational) -> GaussianRational:
    """``alpha^{K-i} - sum_{k=1}^{K-i} R_{K-k}(z) alpha^{K-i-k}`` for a given ``alpha = alpha_j(z)``."""
    K = closure.K
    if not 1 <= i <= K:
        raise ValueError(f"i must be in 1..{K}")
    out = alpha ** (K - i)
    for k in range(1, K - i + 1):
        out = out - _eval_poly(closure.R[K - k], z) * alpha ** (K - i - k)
    return out


def ladder_weights(sys: AlphaSystem, closure: ClosureData, j: int, n: int) -> Tuple[List[GaussianRational], GaussianRational]:
    """Scalar weights of the ladder operator ``a^(j)`` on the ``E_n`` eigenspace.

    Returns ``(w_1..w_K, w_R)`` with ``a^(j) P_n = sum_i w_i (ad H)^{i-1} X P_n + w_R R_{-1}(E_n) P_n``.
    """
    z = energy(sys.params, n)
    alphas = [alpha_eval(sys, k, n) for k in range(1, sys.K + 1)]
    aj = alphas[j - 1]
    den = ONE
    for k, ak in enumerate(alphas, start=1):
        if k != j:
            den = den * (aj - ak)
    inv = den.inverse()
    weights = [p_ij(closure, i, aj, z) * inv for i in range(1, sys.K + 1)]
    return weights, inv / aj


def ladder_apply(rec: ConstRecurrence, L: int, j: int, n: int) -> Tuple[GaussianRational, int]:
    """Spectral action ``a^(j) P_{D,n} = coefficient * P_{D,target}``."""
    if not 1 <= j <= 2 * L:
        raise ValueError(f"j must be in 1..{2 * L}")
    k = L + 1 - j if j <= L else -(j - L)
    target = n + k
    if target < 0:
        return ZERO, target
    return rec.coeff(n, k), target


def ladder_direct(system: DeformedSystem, X: Poly, closure: ClosureData, j: int, n: int) -> Poly:
    """Build ``a^(j) P_{D,n}`` from nested commutators; on an eigenvector ``(ad H)^m X P = (H - E_n)^m (X P)``."""
    if closure.R_minus1 is None:
        raise ValueError("closure data lacks R_{-1}")
    sys = AlphaSystem(system.params, closure.L)
    weights, w_r = ladder_weights(sys, closure, j, n)
    En = energy(system.params, n)
    P = system.P(n)
    cur = X * P
    out = Poly()
    for w in weights:
        if w:
            out = out + cur * w
        cur = system.htilde(cur) - cur * En
    out = out + P * (w_r * closure.R_minus1(En))
    return out


def smallest_order_observed(rec: ConstRecurrence, system: DeformedSystem) -> int:
    """Number of distinct nonzero energy gaps reached by ``X`` over the solved range.

    A closure relation of order ``K`` needs every such gap among the roots of a
    degree-``K`` characteristic polynomial, so this is a lower bound on ``K``
    for MP (where gaps do not depend on ``n``) and a per-level bound for cH.
    """
    best = 0
    gaps_all = set()
    for n in range(rec.n_max + 1):
        z = energy(system.params, n)
        gaps = {energy(system.params, n + k) - z for k in range(-rec.L, rec.L + 1) if k and rec.coeff(n, k)}
        gaps_all |= gaps
        best = max(best, len(gaps))
    return len(gaps_all) if system.params.is_mp else best
