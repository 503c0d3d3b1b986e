"""Recurrence relations for multi-indexed polynomials.

Two families are handled:

* variable-coefficient relations ``sum_k R^[M]_{n,k}(eta) P_{D,n+k}(eta) = 0``
  with ``|k| <= M + 1``, built from the three-term data by a shift recursion;
* constant-coefficient relations ``X(eta) P_{D,n} = sum_{|k|<=L} r_{n,k} P_{D,n+k}``
  with ``X = I[Xi_D * Y]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .classical import DegenerateParameterError, ModelParams, energy, three_term_coeffs
from .exact_core import I, ONE, ZERO, GaussianRational, Poly, as_gaussian, poly_shift
from .multi_indexed import (
    DeformedSystem,
    build_P_Dn,
    hD_ratio,
    leading_P,
    special_point,
    special_value_eta0,
)

__all__ = [
    "g_prime",
    "map_I",
    "build_X",
    "VarCoeffTable",
    "build_R_table",
    "verify_rr_var",
    "generate_from_rr",
    "ConstRecurrence",
    "solve_const_coeffs",
    "CheckReport",
    "check_symmetry",
    "check_eta0",
    "check_top",
    "SpectralFit",
    "pair_product_poly",
    "fit_Iz",
    "interpolate",
]

HALF = Fraction(1, 2)


def g_prime(n: int, k: int) -> Fraction:
    """Coefficient of ``eta^{n-k}`` in the divided difference of ``eta^{n+1}``."""
    if not 0 <= k <= n:
        raise ValueError(f"g'({n},{k}) needs 0 <= k <= n")
    if k % 2:
        return Fraction(0)
    return Fraction((-1) ** (k // 2) * comb(n + 1, k + 1), 2 ** k)


def _divided_difference(P: Poly) -> Poly:
    """``(P(x - i/2) - P(x + i/2)) / (-i)``."""
    return (poly_shift(P, -HALF) - poly_shift(P, HALF)) * I


def map_I(p: Poly) -> Poly:
    """Discrete antiderivative with zero constant term.

    The result ``P`` satisfies ``(P(x - i/2) - P(x + i/2)) / (-i) = p``; this is
    checked on every call.
    """
    n = p.degree
    if n < 0:
        return Poly()
    b = [ZERO] * (n + 2)
    for k in range(n, -1, -1):
        acc = p.coeff(k)
        for j in range(k + 1, n + 1):
            g = g_prime(j, j - k)
            if g:
                acc = acc - b[j + 1] * g
        b[k + 1] = acc / g_prime(k, 0)
    out = Poly(b)
    if _divided_difference(out) != p:
        raise ArithmeticError("map_I self-check failed")
    return out


def build_X(system: DeformedSystem, Y: Poly) -> Poly:
    """``X = I[Xi_D * Y]``, of degree ``L = ell_D + deg Y + 1``."""
    if Y.is_zero():
        raise ValueError("Y must be nonzero")
    return map_I(system.Xi * Y)


# ---------------------------------------------------------------------------
# variable-coefficient relations


class VarCoeffTable:
    """Lazily filled table of ``R^[s]_{n,k}(eta)`` for one parameter set."""

    def __init__(self, params: ModelParams, M: int):
        if M < 0:
            raise ValueError("M must be non-negative")
        self.params = params
        self.M = M
        self._memo: Dict[Tuple[int, int, int], Poly] = {}
        self._abc: Dict[int, tuple] = {}

    def abc(self, n: int):
        if n not in self._abc:
            self._abc[n] = three_term_coeffs(self.params, n)
        return self._abc[n]

    def entry(self, s: int, n: int, k: int) -> Poly:
        """``R^[s]_{n,k}``; zero when ``|k| > s+1``, ``n + k < 0`` or ``n < 0``."""
        if abs(k) > s + 1 or n + k < 0 or n < 0:
            return Poly()
        if s == -1:
            return Poly.const(1)
        key = (s, n, k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        a_n, b_n, c_n = self.abc(n)
        out = Poly()
        up = self.entry(s - 1, n + 1, k - 1)
        if not up.is_zero() and a_n:
            out = out + poly_shift(up, HALF) * a_n
        mid = self.entry(s - 1, n, k)
        if not mid.is_zero():
            factor = Poly([b_n + GaussianRational(0, Fraction(s, 2)), -1])
            out = out + factor * poly_shift(mid, HALF)
        down = self.entry(s - 1, n - 1, k + 1)
        if not down.is_zero() and c_n:
            out = out + poly_shift(down, HALF) * c_n
        self._memo[key] = out
        return out

    def row(self, n: int) -> Dict[int, Poly]:
        return {k: self.entry(self.M, n, k) for k in range(-self.M - 1, self.M + 2)}


def build_R_table(params: ModelParams, M: int, n_range=None) -> VarCoeffTable:
    """Table through ``s = M``; entries for ``n`` in ``n_range`` are filled eagerly."""
    table = VarCoeffTable(params, M)
    for n in n_range or ():
        table.row(n)
    return table


def verify_rr_var(system: DeformedSystem, table: VarCoeffTable, n: int) -> Poly:
    """Residual of the variable-coefficient relation at ``n`` (zero when it holds)."""
    M = table.M
    if M != system.D.M:
        raise ValueError("table depth must equal the number of seeds")
    total = Poly()
    for k in range(-M - 1, M + 2):
        if n + k < 0:
            continue
        r = table.entry(M, n, k)
        if r.is_zero():
            continue
        total = total + r * system.P(n + k)
    return total


def generate_from_rr(system: DeformedSystem, table: VarCoeffTable, n_max: int) -> List[Poly]:
    """``P_{D,0..n_max}`` from ``M+1`` determinant seeds and the variable-coefficient relation."""
    M = table.M
    out = [system.P(n) for n in range(min(M, n_max) + 1)]
    for m in range(M + 1, n_max + 1):
        n = m - M - 1
        top = table.entry(M, n, M + 1)
        if top.degree != 0:
            raise DegenerateParameterError(f"top coefficient R^[{M}]_{{{n},{M + 1}}} vanishes")
        acc = Poly()
        for k in range(-M - 1, M + 1):
            if n + k < 0:
                continue
            acc = acc + table.entry(M, n, k) * out[n + k]
        out.append(acc * (-top.coeff(0).inverse()))
    return out


# ---------------------------------------------------------------------------
# constant-coefficient relations


@dataclass
class ConstRecurrence:
    """Solved coefficients ``r_{n,k}`` of ``X P_{D,n} = sum_k r_{n,k} P_{D,n+k}``."""

    Y: Optional[Poly]
    X: Poly
    L: int
    n_max: int
    r: Dict[Tuple[int, int], GaussianRational]
    residuals: Dict[int, Poly]

    def coeff(self, n: int, k: int) -> GaussianRational:
        if n < 0 or n + k < 0 or abs(k) > self.L:
            return ZERO
        return self.r[(n, k)]

    @property
    def ok(self) -> bool:
        return all(res.is_zero() for res in self.residuals.values())

    def failures(self) -> Dict[int, Poly]:
        return {n: res for n, res in self.residuals.items() if not res.is_zero()}


def solve_const_coeffs(system: DeformedSystem, X: Poly, n_max: int, Y: Optional[Poly] = None) -> ConstRecurrence:
    """Expand ``X P_{D,n}`` in the graded basis ``{P_{D,m}}`` for ``0 <= n <= n_max``.

    The basis polynomials have distinct degrees ``ell_D + m``, so the top
    coefficient can be peeled off one degree at a time.  Whatever remains after
    ``k = -min(n, L)`` is the residual; it is zero exactly when the relation holds.
    """
    L = X.degree
    ell = system.D.ell
    r: Dict[Tuple[int, int], GaussianRational] = {}
    residuals: Dict[int, Poly] = {}
    for n in range(n_max + 1):
        target = X * system.P(n)
        for k in range(L, -min(n, L) - 1, -1):
            m = n + k
            basis = system.P(m)
            lead = basis.leading
            if not lead or basis.degree != ell + m:
                raise DegenerateParameterError(f"P_D,{m} lacks its top coefficient")
            c = target.coeff(ell + m) / lead
            r[(n, k)] = c
            if c:
                target = target - basis * c
        for k in range(-L, -min(n, L)):
            r[(n, k)] = ZERO
        residuals[n] = target
    return ConstRecurrence(Y, X, L, n_max, r, residuals)


@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    failures: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked, "failures": self.failures}


def check_symmetry(rec: ConstRecurrence, system: DeformedSystem) -> CheckReport:
    """``r_{n+k,-k} = (h_{D,n+k} / h_{D,n}) r_{n,k}`` for ``1 <= k <= L``."""
    rep = CheckReport("h-ratio symmetry", True)
    for n in range(rec.n_max + 1):
        for k in range(1, rec.L + 1):
            if n + k > rec.n_max:
                continue
            lhs = rec.coeff(n + k, -k)
            rhs = hD_ratio(system.params, system.D, n, k) * rec.coeff(n, k)
            rep.checked += 1
            if lhs != rhs:
                rep.passed = False
                rep.failures.append({"n": n, "k": k, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


def check_eta0(rec: ConstRecurrence, system: DeformedSystem) -> CheckReport:
    """``X(eta_0) P_{D,n}(eta_0) = sum_k r_{n,k} P_{D,n+k}(eta_0)`` with closed-form values."""
    rep = CheckReport("special-point identity", True)
    params, D = system.params, system.D.sorted()
    sign = 1 if D == system.D else None
    if sign is None:
        # the closed form assumes sorted blocks; compare against the sorted set's values
        # rescaled by the constant ratio between the two orderings
        ratio = system.Xi.leading / _sorted_system_leading(system)
    else:
        ratio = ONE
    x0 = special_point(params, system.D)
    xv = rec.X(x0)
    vals = {}

    def val(m):
        if m not in vals:
            vals[m] = special_value_eta0(params, D, m) * ratio if m >= 0 else ZERO
        return vals[m]

    for n in range(rec.n_max + 1):
        lhs = xv * val(n)
        rhs = ZERO
        for k in range(-rec.L, rec.L + 1):
            c = rec.coeff(n, k)
            if c:
                rhs = rhs + c * val(n + k)
        rep.checked += 1
        if lhs != rhs:
            rep.passed = False
            rep.failures.append({"n": n, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


def _sorted_system_leading(system: DeformedSystem) -> GaussianRational:
    from .multi_indexed import build_Xi_D

    return build_Xi_D(system.params, system.D.sorted()).leading


def check_top(rec: ConstRecurrence, system: DeformedSystem) -> CheckReport:
    """``r_{n,L} = c^X c^P_{D,n} / c^P_{D,n+L}``."""
    rep = CheckReport("top coefficient", True)
    cx = rec.X.leading
    for n in range(rec.n_max + 1):
        want = cx * leading_P(system.params, system.D, n) / leading_P(system.params, system.D, n + rec.L)
        rep.checked += 1
        if rec.coeff(n, rec.L) != want:
            rep.passed = False
            rep.failures.append({"n": n, "got": rec.coeff(n, rec.L).to_json(), "want": want.to_json()})
    return rep


# ---------------------------------------------------------------------------
# spectral fit of the diagonal coefficient


def pair_product_poly(params: ModelParams, L: int, j: int) -> Poly:
    """``alpha_j(z) alpha_{2L+1-j}(z)`` as a polynomial in ``z`` (1 <= j <= L)."""
    m = L + 1 - j
    if params.is_mp:
        return Poly.const(as_gaussian(-4 * m * m * params.s ** 2))
    b = params.b1 - 1
    return Poly([m * m * (m * m - b * b), -4 * m * m])


def pair_sum(params: ModelParams, L: int, j: int) -> GaussianRational:
    """``alpha_j + alpha_{2L+1-j}``."""
    m = L + 1 - j
    return ZERO if params.is_mp else as_gaussian(2 * m * m)


def interpolate(nodes: List[GaussianRational], values: List[GaussianRational]) -> Poly:
    """Exact Newton interpolation through ``(nodes[i], values[i])``."""
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes collide")
    n = len(nodes)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    out = Poly.const(coef[-1]) if coef else Poly()
    for i in range(n - 2, -1, -1):
        out = out * Poly([-nodes[i], 1]) + coef[i]
    return out


@dataclass
class SpectralFit:
    I_poly: Poly
    L: int
    denominator: Poly
    degree_bound: int
    nodes: List[int]
    held_out: List[int]
    held_out_ok: bool
    within_bound: bool


def fit_Iz(rec: ConstRecurrence, system: DeformedSystem) -> SpectralFit:
    """Fit ``I(z)`` with ``r_{n,0} = -I(E_n) / prod_j alpha_j alpha_{2L+1-j} |_{z=E_n}``.

    Interpolates on ``n = 0..bound`` and checks every remaining solved ``n``.
    """
    params = system.params
    L = rec.L
    bound = L if params.is_mp else 2 * L
    den = Poly.const(1)
    for j in range(1, L + 1):
        den = den * pair_product_poly(params, L, j)
    ns = list(range(rec.n_max + 1))
    if len(ns) < bound + 2:
        raise ValueError(f"need r_(n,0) for at least {bound + 2} values of n")
    z = [energy(params, n) for n in ns]
    y = [-(rec.coeff(n, 0) * den(zn)) for n, zn in zip(ns, z)]
    fit_n = ns[: bound + 1]
    poly = interpolate([z[n] for n in fit_n], [y[n] for n in fit_n])
    held = ns[bound + 1:]
    ok = all(poly(z[n]) == y[n] for n in held)
    return SpectralFit(poly, L, den, bound, fit_n, held, ok, poly.degree <= bound)
