"""Multi-indexed MP and cH polynomials built from virtual-state determinants.

An index set ``D`` picks the virtual states used as Darboux seeds.  From it we
build the denominator polynomial ``Xi_D`` (degree ``ell_D``) and the
eigenpolynomials ``P_{D,n}`` (degree ``ell_D + n``) of the deformed
square-root-free difference operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Tuple

from .classical import (
    CH,
    MP,
    DegenerateParameterError,
    ModelParams,
    classical_pn,
    classical_pn_hypergeometric,
    energy,
    htilde_apply,
    leading_cn,
    potential,
)
from .exact_core import (
    I,
    ONE,
    ZERO,
    GaussianRational,
    InexactDivisionError,
    Poly,
    PolyMatrix,
    as_gaussian,
    det,
    exact_divide,
    pochhammer,
    pochhammer_poly,
    poly_shift,
    poly_star,
)

__all__ = [
    "TYPE_I",
    "TYPE_II",
    "ConstructionError",
    "IndexSet",
    "VirtualState",
    "DeformedSystem",
    "twist",
    "twist_shift",
    "virtual_energy",
    "build_xi",
    "r_factor",
    "build_Xi_D",
    "build_P_Dn",
    "build_Xi_D_mp_form",
    "build_P_Dn_mp_form",
    "leading_Xi",
    "leading_P",
    "ground_ratio",
    "reduce_dj_zero",
    "special_point",
    "special_value_eta0",
    "hD_ratio",
    "norm_factor",
    "deformed_system",
    "htilde_D_apply",
    "deformed_shift_apply",
]

TYPE_I = "I"
TYPE_II = "II"
HALF = Fraction(1, 2)


class ConstructionError(ArithmeticError):
    """A determinant construction produced something other than the expected polynomial."""


@dataclass(frozen=True)
class IndexSet:
    """Ordered multi-index.

    MP uses ``first`` only.  cH keeps the type-I block in ``first`` and the
    type-II block in ``second``.  The order given by the caller is kept,
    since swapping two entries flips the sign of ``Xi_D`` and ``P_{D,n}``.
    """

    model: str
    first: Tuple[int, ...] = ()
    second: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "first", tuple(int(d) for d in self.first))
        object.__setattr__(self, "second", tuple(int(d) for d in self.second))
        if self.model == MP and self.second:
            raise ValueError("MP index sets have a single block")
        for block in (self.first, self.second):
            if any(d < 0 for d in block):
                raise ValueError("indices must be non-negative")
            if len(set(block)) != len(block):
                raise ValueError("indices within a block must be distinct")

    @classmethod
    def mp(cls, ds: Sequence[int] = ()) -> "IndexSet":
        return cls(MP, tuple(ds))

    @classmethod
    def ch(cls, type_i: Sequence[int] = (), type_ii: Sequence[int] = ()) -> "IndexSet":
        return cls(CH, tuple(type_i), tuple(type_ii))

    @property
    def M(self) -> int:
        return len(self.first) + len(self.second)

    @property
    def m1(self) -> int:
        return len(self.first)

    @property
    def m2(self) -> int:
        return len(self.second)

    @property
    def ell(self) -> int:
        """Degree of ``Xi_D``."""
        M = self.M
        base = sum(self.first) + sum(self.second) - M * (M - 1) // 2
        if self.model == CH:
            base += 2 * self.m1 * self.m2
        return base

    def sorted(self) -> "IndexSet":
        return IndexSet(self.model, tuple(sorted(self.first)), tuple(sorted(self.second)))

    @property
    def is_sorted(self) -> bool:
        return list(self.first) == sorted(self.first) and list(self.second) == sorted(self.second)

    def label(self) -> str:
        if self.model == MP:
            return "{" + ",".join(map(str, self.first)) + "}"
        parts = [f"{d}^I" for d in self.first] + [f"{d}^II" for d in self.second]
        return "{" + ",".join(parts) + "}"

    def to_json(self):
        if self.model == MP:
            return list(self.first)
        return {"typeI": list(self.first), "typeII": list(self.second)}


@dataclass(frozen=True)
class VirtualState:
    v: int
    kind: Optional[str]
    twisted: ModelParams
    energy: GaussianRational
    xi: Poly


def _check_kind(params: ModelParams, kind: Optional[str]) -> None:
    if params.is_mp:
        if kind not in (None,):
            raise ValueError("MP has a single virtual-state type")
    elif kind not in (TYPE_I, TYPE_II):
        raise ValueError("cH virtual states need type 'I' or 'II'")


def twist(params: ModelParams, kind: Optional[str] = None) -> ModelParams:
    """Twisted parameters generating the virtual states."""
    _check_kind(params, kind)
    if params.is_mp:
        return ModelParams(MP, a=1 - params.a, phi=params.phi)
    if kind == TYPE_I:
        return ModelParams(CH, a1=ONE - params.a1.conjugate(), a2=params.a2)
    return ModelParams(CH, a1=params.a1, a2=ONE - params.a2.conjugate())


def twist_shift(params: ModelParams, kind: Optional[str] = None, times=1) -> ModelParams:
    """``lam + times * delta~`` for the given twist type."""
    _check_kind(params, kind)
    h = Fraction(times, 2)
    if params.is_mp:
        return params.shifted(-h)
    if kind == TYPE_I:
        return params.shifted(-h, h)
    return params.shifted(h, -h)


def lam_prime(params: ModelParams, D: IndexSet) -> ModelParams:
    if params.is_mp:
        return twist_shift(params, None, D.M)
    h1, h2 = Fraction(D.m1, 2), Fraction(D.m2, 2)
    return params.shifted(-h1 + h2, h1 - h2)


def virtual_energy(params: ModelParams, v: int, kind: Optional[str] = None) -> GaussianRational:
    _check_kind(params, kind)
    if params.is_mp:
        return as_gaussian(-2 * (2 * params.a - v - 1) * params.s)
    s1, s1p = params.sigma1, params.sigma1p
    if kind == TYPE_I:
        return as_gaussian(-(s1 - v - 1) * (s1p + v))
    return as_gaussian(-(s1p - v - 1) * (s1 + v))


@lru_cache(maxsize=4096)
def _xi_poly(params: ModelParams, v: int, kind: Optional[str]) -> Poly:
    # The hypergeometric form never divides by three-term denominators, which
    # may vanish at twisted cH parameters.
    return classical_pn_hypergeometric(twist(params, kind), v)


def build_xi(params: ModelParams, v: int, kind: Optional[str] = None, check: bool = True) -> VirtualState:
    """Virtual state ``xi_v = P_v(eta; t(lam))``; invariants are checked unless ``check=False``."""
    if v < 0:
        raise ValueError("virtual state index must be non-negative")
    _check_kind(params, kind)
    xi = _xi_poly(params, v, kind)
    e = virtual_energy(params, v, kind)
    if check:
        if xi.degree != v:
            raise ConstructionError(f"deg xi_{v} = {xi.degree}")
        if not xi.is_star_real:
            raise ConstructionError(f"xi_{v} is not star-real")
        # In the gauge of the twisted ground state the operator is H~(t(lam)) + E~_0,
        # so xi_v is an eigenpolynomial of that operator with eigenvalue E~_v.
        shift = virtual_energy(params, 0, kind)
        if htilde_apply(twist(params, kind), xi) + xi * shift != xi * e:
            raise ConstructionError(f"xi_{v} fails the eigen-equation")
    return VirtualState(v, kind, twist(params, kind), e, xi)


def r_factor(params: ModelParams, j: int, N: int, which: Optional[str] = None) -> Poly:
    """``r_j(x; lam, N)`` as a polynomial in the unshifted ``x``.

    ``which`` selects the parameter for cH: ``'I'`` uses ``a1``, ``'II'`` uses ``a2``.
    """
    if params.is_mp:
        u = as_gaussian(params.a)
    else:
        u = params.a1 if which == TYPE_I else params.a2
    off = Fraction(N - 1, 2)
    up = Poly([u - off, I])
    down = Poly([u.conjugate() - off, -I])
    sign = -1 if (j - 1) % 2 else 1
    pref = I ** ((1 - N) % 4) * sign
    return pochhammer_poly(up, j - 1) * pochhammer_poly(down, N - j) * pref


def _row_shift(N: int, j: int) -> Fraction:
    return Fraction(N + 1, 2) - j


def _pair_pochhammer_product(u: GaussianRational, off: Fraction, upto: int) -> Poly:
    """``prod_{j=1}^{upto} (u - off + i x)_j (u* - off - i x)_j``."""
    up = Poly([u - off, I])
    down = Poly([u.conjugate() - off, -I])
    out = Poly.const(1)
    for j in range(1, upto + 1):
        out = out * pochhammer_poly(up, j) * pochhammer_poly(down, j)
    return out


def _xi_columns(params: ModelParams, D: IndexSet):
    """Yields (polynomial, row-factor selector) for each seed column."""
    if params.is_mp:
        for d in D.first:
            yield _xi_poly(params, d, None), None
        return
    for d in D.first:
        yield _xi_poly(params, d, TYPE_I), TYPE_II
    for d in D.second:
        yield _xi_poly(params, d, TYPE_II), TYPE_I


def _validate(params: ModelParams, D: IndexSet) -> None:
    if params.model != D.model:
        raise ValueError("parameter model and index-set model differ")


def _checked(poly: Poly, degree: int, what: str) -> Poly:
    if poly.degree != degree:
        raise ConstructionError(f"{what}: degree {poly.degree}, expected {degree}")
    if not poly.is_star_real:
        raise ConstructionError(f"{what}: not star-real")
    return poly


@lru_cache(maxsize=2048)
def build_Xi_D(params: ModelParams, D: IndexSet) -> Poly:
    """Denominator polynomial ``Xi_D(eta; lam)`` (raw determinant normalization)."""
    _validate(params, D)
    M = D.M
    if M == 0:
        return Poly.const(1)
    cols = list(_xi_columns(params, D))
    rows = []
    for j in range(1, M + 1):
        t = _row_shift(M, j)
        row = []
        for xi, which in cols:
            e = poly_shift(xi, t)
            if which is not None:
                e = r_factor(params, j, M, which) * e
            row.append(e)
        rows.append(row)
    out = det(PolyMatrix(rows)) * I ** ((M * (M - 1) // 2) % 4)
    if not params.is_mp:
        off = Fraction(M - 1, 2)
        pref = _pair_pochhammer_product(params.a2, off, D.m1 - 1) * _pair_pochhammer_product(
            params.a1, off, D.m2 - 1
        )
        try:
            out = exact_divide(out, pref)
        except InexactDivisionError as exc:
            raise ConstructionError(f"cH prefactor does not divide Xi_D: {exc}") from exc
    return _checked(out, D.ell, f"Xi_D for D={D.label()}")


@lru_cache(maxsize=8192)
def build_P_Dn(params: ModelParams, D: IndexSet, n: int) -> Poly:
    """Multi-indexed polynomial ``P_{D,n}(eta; lam)``; zero for n < 0."""
    _validate(params, D)
    if n < 0:
        return Poly()
    M = D.M
    pn = classical_pn_hypergeometric(params, n)
    if M == 0:
        return pn
    N = M + 1
    cols = list(_xi_columns(params, D))
    rows = []
    for j in range(1, N + 1):
        t = _row_shift(N, j)
        row = []
        for xi, which in cols:
            e = poly_shift(xi, t)
            if which is not None:
                e = r_factor(params, j, N, which) * e
            row.append(e)
        last = poly_shift(pn, t)
        if params.is_mp:
            last = r_factor(params, j, N) * last
        else:
            last = r_factor(params, j, N, TYPE_II) * r_factor(params, j, N, TYPE_I) * last
        row.append(last)
        rows.append(row)
    out = det(PolyMatrix(rows)) * I ** ((M * (M + 1) // 2) % 4)
    if not params.is_mp:
        off = Fraction(M, 2)
        pref = _pair_pochhammer_product(params.a2, off, D.m1) * _pair_pochhammer_product(
            params.a1, off, D.m2
        )
        try:
            out = exact_divide(out, pref)
        except InexactDivisionError as exc:
            raise ConstructionError(f"cH prefactor does not divide P_D,n: {exc}") from exc
    return _checked(out, D.ell + n, f"P_D,{n} for D={D.label()}")


def build_Xi_D_mp_form(params: ModelParams, D: IndexSet) -> Poly:
    """Plain determinant of seed polynomials, valid for MP and single-type cH sets."""
    if not params.is_mp and D.m1 and D.m2:
        raise ValueError("mixed cH index sets need the general construction")
    kind = None if params.is_mp else (TYPE_I if D.m1 else TYPE_II)
    ds = D.first if (params.is_mp or D.m1) else D.second
    M = len(ds)
    if M == 0:
        return Poly.const(1)
    rows = [[poly_shift(_xi_poly(params, d, kind), _row_shift(M, j)) for d in ds] for j in range(1, M + 1)]
    return det(PolyMatrix(rows)) * I ** ((M * (M - 1) // 2) % 4)


def build_P_Dn_mp_form(params: ModelParams, D: IndexSet, n: int) -> Poly:
    """Companion of :func:`build_Xi_D_mp_form` for ``P_{D,n}``."""
    if not params.is_mp and D.m1 and D.m2:
        raise ValueError("mixed cH index sets need the general construction")
    if n < 0:
        return Poly()
    kind = None if params.is_mp else (TYPE_I if D.m1 else TYPE_II)
    ds = D.first if (params.is_mp or D.m1) else D.second
    M = len(ds)
    pn = classical_pn_hypergeometric(params, n)
    N = M + 1
    rows = []
    for j in range(1, N + 1):
        t = _row_shift(N, j)
        row = [poly_shift(_xi_poly(params, d, kind), t) for d in ds]
        row.append(r_factor(params, j, N, kind) * poly_shift(pn, t))
        rows.append(row)
    return det(PolyMatrix(rows)) * I ** ((M * (M + 1) // 2) % 4)


def _vandermonde(ds: Sequence[int]) -> int:
    out = 1
    for j in range(len(ds)):
        for k in range(j + 1, len(ds)):
            out *= ds[k] - ds[j]
    return out


def leading_Xi(params: ModelParams, D: IndexSet) -> GaussianRational:
    """Closed-form leading coefficient of ``Xi_D``."""
    if params.is_mp:
        out = ONE
        tw = twist(params)
        for d in D.first:
            out = out * leading_cn(tw, d)
        return out * _vandermonde(D.first)
    out = ONE
    t1, t2 = twist(params, TYPE_I), twist(params, TYPE_II)
    for d in D.first:
        out = out * leading_cn(t1, d)
    for d in D.second:
        out = out * leading_cn(t2, d)
    out = out * _vandermonde(D.first) * _vandermonde(D.second)
    s1, s1p = params.sigma1, params.sigma1p
    for d1 in D.first:
        for d2 in D.second:
            out = out * (-s1p - d1 + s1 + d2)
    return out


def leading_P(params: ModelParams, D: IndexSet, n: int) -> GaussianRational:
    """Closed-form leading coefficient of ``P_{D,n}``."""
    out = leading_Xi(params, D) * leading_cn(params, n)
    if params.is_mp:
        for d in D.first:
            out = out * (-2 * params.a - n + d + 1)
        return out
    for d in D.first:
        out = out * (-params.sigma1 - n + d + 1)
    for d in D.second:
        out = out * (-params.sigma1p - n + d + 1)
    return out


def ground_ratio(params: ModelParams, D: IndexSet) -> GaussianRational:
    """Constant ``A`` with ``P_{D,0}(lam) = A * Xi_D(lam + delta)``."""
    out = ONE
    if params.is_mp:
        for d in D.first:
            out = out * (-2 * params.a + d + 1)
        return out
    for d in D.first:
        out = out * (-params.sigma1 + d + 1)
    for d in D.second:
        out = out * (-params.sigma1p + d + 1)
    return out


def reduce_dj_zero(params: ModelParams, D: IndexSet, n: int, kind: Optional[str] = None):
    """Data for the reduction of a set whose last (typed) index is 0.

    Returns ``(A, D', lam')`` with ``P_{D,n}(lam) = A * P_{D',n}(lam')``.
    """
    if params.is_mp:
        if not D.first or D.first[-1] != 0:
            raise ValueError("the last index must be 0")
        M = D.M
        a_const = as_gaussian((-1) ** M * (2 * params.a + n - 1) * (2 * params.s) ** (M - 1))
        Dp = IndexSet.mp([d - 1 for d in D.first[:-1]])
        return a_const, Dp, twist_shift(params)
    s1, s1p = params.sigma1, params.sigma1p
    if kind == TYPE_I:
        if not D.first or D.first[-1] != 0:
            raise ValueError("the last type-I index must be 0")
        c = Fraction((-1) ** D.m1) * (s1 + n - 1)
        for d in D.first[:-1]:
            c *= -s1 + s1p + d + 1
        for d in D.second:
            c *= d + 1
        Dp = IndexSet.ch([d - 1 for d in D.first[:-1]], [d + 1 for d in D.second])
        return as_gaussian(c), Dp, twist_shift(params, TYPE_I)
    if kind == TYPE_II:
        if not D.second or D.second[-1] != 0:
            raise ValueError("the last type-II index must be 0")
        c = Fraction((-1) ** D.M) * (s1p + n - 1)
        for d in D.second[:-1]:
            c *= -s1p + s1 + d + 1
        for d in D.first:
            c *= d + 1
        Dp = IndexSet.ch([d + 1 for d in D.first], [d - 1 for d in D.second[:-1]])
        return as_gaussian(c), Dp, twist_shift(params, TYPE_II)
    raise ValueError("cH reduction needs kind 'I' or 'II'")


def special_point(params: ModelParams, D: IndexSet) -> GaussianRational:
    """The imaginary point ``eta_0`` where ``P_{D,n}`` takes closed-form values."""
    if params.is_mp:
        return GaussianRational(0, -(params.a - Fraction(D.M, 2)))
    return -I * (params.a2.conjugate() + Fraction(D.m1 - D.m2, 2))


def _poch_pair(u, v, k):
    return pochhammer(u, k) * pochhammer(v, k)


def special_value_eta0(params: ModelParams, D: IndexSet, n: int) -> GaussianRational:
    """Closed-form ``P_{D,n}(eta_0)``; requires each block sorted ascending."""
    if not D.is_sorted:
        raise ValueError("special values need each index block sorted ascending")
    cP = leading_P(params, D, n)
    ell = D.ell
    if params.is_mp:
        a, s = params.a, params.s
        val = cP * params.phi.exp_i ** (ell - n) * (pochhammer(2 * a, n) / (2 * s) ** (ell + n))
        for j, d in enumerate(D.first, start=1):
            val = val * (pochhammer(1 - 2 * a, d) / pochhammer(1 - 2 * a, j - 1))
            val = val * (Fraction(d + 1 - 2 * a) / (d + 1 - n - 2 * a))
        return val
    a1, a2 = params.a1, params.a2
    a1c, a2c = a1.conjugate(), a2.conjugate()
    s1, s1p = params.sigma1, params.sigma1p
    d1s, d2s = D.first, D.second
    m2 = D.m2
    sign = (-1) ** (sum(d2s) - m2 * (m2 - 1) // 2)
    val = (-I) ** ((ell + n) % 4) * cP * sign
    u1 = a2c - a1c + 1
    for d in d1s:
        val = val * _poch_pair(u1, as_gaussian(s1p), d) / pochhammer(as_gaussian(s1p - s1 + d + 1), d)
    for j in range(len(d1s)):
        for k in range(j + 1, len(d1s)):
            val = val * (s1p - s1 + d1s[j] + d1s[k] + 1)
    for j in range(1, len(d1s) + 1):
        val = val / _poch_pair(u1, as_gaussian(s1p), j - 1)
    u2 = a1c - a2c + 1
    for d in d2s:
        val = val * _poch_pair(u2, as_gaussian(1 - s1p), d) / pochhammer(as_gaussian(s1 - s1p + d + 1), d)
    for j in range(len(d2s)):
        for k in range(j + 1, len(d2s)):
            val = val * (s1 - s1p + d2s[j] + d2s[k] + 1)
    for j in range(1, len(d2s) + 1):
        val = val / _poch_pair(u2, as_gaussian(1 - s1p), j - 1)
    for j, dj in enumerate(d1s, start=1):
        for k, dk in enumerate(d2s, start=1):
            val = val * (a2c - a1c + j - k) * (s1p + j - k) / (s1p - s1 + dj - dk)
    val = val * _poch_pair(a1 + a2c, as_gaussian(s1p), n) / pochhammer(as_gaussian(s1 + s1p + n - 1), n)
    for j, d in enumerate(d1s, start=1):
        val = val * (Fraction(s1p + d + n) / (s1p + j - 1))
    for d in d2s:
        val = val * (Fraction(d + 1 - s1p) / (d + 1 - n - s1p))
    return val


def _ratio_step(params: ModelParams, D: IndexSet, n: int, k: int) -> GaussianRational:
    """``h_{D,n+k} / h_{D,n}`` for k >= 0."""
    if params.is_mp:
        a = params.a
        val = Fraction(pochhammer(n + 2 * a, k)) / pochhammer(Fraction(n + 1), k)
        for d in D.first:
            den = n + 2 * a - d - 1
            if den == 0:
                raise ZeroDivisionError(f"h-ratio denominator vanishes at n={n}, d={d}")
            val *= (den + k) / den
        return as_gaussian(val)
    a1, a2 = params.a1, params.a2
    a1c, a2c = a1.conjugate(), a2.conjugate()
    s1, s1p, b1 = params.sigma1, params.sigma1p, params.b1
    num = ONE
    for u in (n + a1 + a1c, n + a1 + a2c, n + a2 + a1c, n + a2 + a2c):
        num = num * pochhammer(u, k)
    den = pochhammer(Fraction(n + 1), k) * pochhammer(Fraction(n + b1 - 1), k)
    if den == 0 or 2 * n + b1 - 1 + 2 * k == 0:
        raise ZeroDivisionError(f"h-ratio denominator vanishes at n={n}")
    val = num / den * (Fraction(2 * n + b1 - 1) / (2 * n + b1 - 1 + 2 * k))
    for d in D.first:
        d_a, d_b = n + s1 - 1 - d, n + s1p + d
        if d_a * d_b == 0:
            raise ZeroDivisionError(f"h-ratio denominator vanishes at n={n}, d={d}")
        val = val * ((d_a + k) * (d_b + k) / (d_a * d_b))
    for d in D.second:
        d_a, d_b = n + s1p - 1 - d, n + s1 + d
        if d_a * d_b == 0:
            raise ZeroDivisionError(f"h-ratio denominator vanishes at n={n}, d={d}")
        val = val * ((d_a + k) * (d_b + k) / (d_a * d_b))
    return val


def hD_ratio(params: ModelParams, D: IndexSet, n: int, k: int) -> GaussianRational:
    """``h_{D,n+k} / h_{D,n}`` for ``n >= 0`` and ``n + k >= 0``."""
    if n < 0 or n + k < 0:
        raise ValueError("need n >= 0 and n + k >= 0")
    if k >= 0:
        return _ratio_step(params, D, n, k)
    return _ratio_step(params, D, n + k, -k).inverse()


def norm_factor(params: ModelParams, D: IndexSet, n: int) -> GaussianRational:
    """``prod_j (E_n - E~_{d_j})``, the factor relating ``h_{D,n}`` to ``h_n``."""
    e = energy(params, n)
    out = ONE
    if params.is_mp:
        for d in D.first:
            out = out * (e - virtual_energy(params, d))
        return out
    for d in D.first:
        out = out * (e - virtual_energy(params, d, TYPE_I))
    for d in D.second:
        out = out * (e - virtual_energy(params, d, TYPE_II))
    return out


@dataclass(frozen=True)
class DeformedSystem:
    """Deformed operator data for ``(lam, D)``.

    The potentials ``V_D`` and ``V'_D`` are rational in ``x``; they are kept as
    numerator/denominator pairs and every operator application ends with an
    exact division.
    """

    params: ModelParams
    D: IndexSet

    @cached_property
    def Xi(self) -> Poly:
        return build_Xi_D(self.params, self.D)

    @cached_property
    def Xi_delta(self) -> Poly:
        """``Xi_D(x; lam + delta)``."""
        return build_Xi_D(self.params.plus_delta(), self.D)

    @cached_property
    def lam_prime(self) -> ModelParams:
        return lam_prime(self.params, self.D)

    @cached_property
    def V(self) -> Poly:
        """``V(x; lam')``."""
        return potential(self.lam_prime)

    @cached_property
    def Xi_plus(self) -> Poly:
        return poly_shift(self.Xi, HALF)

    @cached_property
    def Xi_minus(self) -> Poly:
        return poly_shift(self.Xi, -HALF)

    @cached_property
    def V_prime(self) -> Tuple[Poly, Poly]:
        """``V'_D = V(lam') Xi(x + i/2) / Xi(x - i/2)`` as (numerator, denominator)."""
        return self.V * self.Xi_plus, self.Xi_minus

    @cached_property
    def V_D(self) -> Tuple[Poly, Poly]:
        """``V_D = V'_D Xi(x - i; lam+delta) / Xi(x; lam+delta)`` as (numerator, denominator)."""
        num, den = self.V_prime
        return num * poly_shift(self.Xi_delta, -1), den * self.Xi_delta

    @cached_property
    def _htilde_parts(self):
        u = self.V * self.Xi_plus * self.Xi_plus * self.Xi_delta
        w = poly_star(self.V) * self.Xi_minus * self.Xi_minus * self.Xi_delta
        diag = (
            self.V * self.Xi_plus * self.Xi_plus * poly_shift(self.Xi_delta, -1)
            + poly_star(self.V) * self.Xi_minus * self.Xi_minus * poly_shift(self.Xi_delta, 1)
        )
        den = self.Xi_minus * self.Xi_plus * self.Xi_delta
        return u, w, diag, den

    def htilde(self, p: Poly) -> Poly:
        """Deformed square-root-free operator applied to a polynomial."""
        u, w, diag, den = self._htilde_parts
        num = u * poly_shift(p, -1) + w * poly_shift(p, 1) - diag * p
        return exact_divide(num, den)

    def forward(self, p: Poly) -> Poly:
        """``F_D``: maps ``P_{D,n}(lam)`` to ``f_n P_{D,n-1}(lam + delta)``."""
        xd = self.Xi_delta
        num = (poly_shift(xd, HALF) * poly_shift(p, -HALF) - poly_shift(xd, -HALF) * poly_shift(p, HALF)) * I
        return exact_divide(num, self.Xi)

    def backward(self, p: Poly) -> Poly:
        """``B_D``: maps ``P_{D,n-1}(lam + delta)`` to ``n P_{D,n}(lam)``."""
        num = (
            self.V * self.Xi_plus * poly_shift(p, -HALF)
            - poly_star(self.V) * self.Xi_minus * poly_shift(p, HALF)
        ) * (-I)
        return exact_divide(num, self.Xi_delta)

    def P(self, n: int) -> Poly:
        return build_P_Dn(self.params, self.D, n)

    def energy(self, n: int) -> GaussianRational:
        return energy(self.params, n)


@lru_cache(maxsize=512)
def deformed_system(params: ModelParams, D: IndexSet) -> DeformedSystem:
    return DeformedSystem(params, D)


def htilde_D_apply(system: DeformedSystem, p: Poly) -> Poly:
    return system.htilde(p)


def deformed_shift_apply(system: DeformedSystem, direction: str, p: Poly) -> Poly:
    """Apply ``F_D`` (``direction='F'``, input at ``lam``) or ``B_D`` (``'B'``, input at ``lam+delta``)."""
    if direction == "F":
        return system.forward(p)
    if direction == "B":
        return system.backward(p)
    raise ValueError("direction must be 'F' or 'B'")
