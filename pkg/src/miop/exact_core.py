"""Exact arithmetic over the Gaussian rationals Q(i).

Everything in the exact layer is built from three pieces:

* :class:`GaussianRational`, an element ``re + i*im`` with Fraction parts,
* :class:`UnitCirclePoint`, a rational point ``(cos phi, sin phi)`` standing in
  for ``e^{i phi}``,
* :class:`Poly`, a dense univariate polynomial with GaussianRational
  coefficients.

All objects are immutable.
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussianRational",
    "UnitCirclePoint",
    "Poly",
    "PolyMatrix",
    "InexactDivisionError",
    "I",
    "ZERO",
    "ONE",
    "as_gaussian",
    "parse_gaussian",
    "make_circle_point",
    "poly_shift",
    "poly_star",
    "det",
    "det_cofactor",
    "exact_divide",
    "pochhammer",
    "pochhammer_poly",
]


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


ScalarLike = Union["GaussianRational", int, Fraction]


class GaussianRational:
    """Exact element of Q(i).

    Both parts are :class:`fractions.Fraction`, so they are always reduced
    with a positive denominator.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re * other, self.im * other)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._raw(a * c, b)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions -----------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(self)

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self):
        """Serialize as ``"p/q"`` when real, else ``{"re": .., "im": ..}``."""
        if not self.im:
            return str(self.re)
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            return cls(Fraction(obj.get("re", "0")), Fraction(obj.get("im", "0")))
        return cls(Fraction(obj))


def _coerce(x) -> "GaussianRational | None":
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational._raw(Fraction(x), Fraction(0))
    if isinstance(x, Rational):
        return GaussianRational(Fraction(x.numerator, x.denominator))
    return None


_COMPLEX_TERM = re.compile(r"([+-]?)([^+-]*)")


def parse_gaussian(text: str) -> GaussianRational:
    """Parse strings such as ``"3/2"``, ``"1+i"``, ``"-2/3i"``, ``"7/4 - 1/2*i"``."""
    t = text.replace(" ", "").replace("*", "")
    if not t:
        raise ValueError("empty number")
    re_part, im_part = Fraction(0), Fraction(0)
    pos = 0
    for m in _COMPLEX_TERM.finditer(t):
        if m.start() != pos or (not m.group(0) and m.end() < len(t)):
            raise ValueError(f"cannot parse {text!r}")
        pos = m.end()
        sign, body = m.group(1), m.group(2)
        if not body:
            if sign:
                raise ValueError(f"cannot parse {text!r}")
            continue
        value_sign = -1 if sign == "-" else 1
        if body.endswith("i") or body.startswith("i"):
            core = body.strip("i")
            if body.startswith("i") and body.endswith("i") and len(body) > 1:
                raise ValueError(f"cannot parse {text!r}")
            if core.startswith("/"):
                core = "1" + core
            im_part += value_sign * (Fraction(core) if core else Fraction(1))
        else:
            re_part += value_sign * Fraction(body)
    if pos != len(t):
        raise ValueError(f"cannot parse {text!r}")
    return GaussianRational(re_part, im_part)


def as_gaussian(x) -> GaussianRational:
    """Coerce an int, Fraction, numeric string or GaussianRational."""
    if isinstance(x, str):
        return parse_gaussian(x)
    g = _coerce(x)
    if g is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(i)")
    return g


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


@dataclass(frozen=True)
class UnitCirclePoint:
    """Rational point on the unit circle, ``e^{i phi} = c + i s`` with s > 0."""

    c: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.c * self.c + self.s * self.s != 1:
            raise ValueError(f"({self.c}, {self.s}) is not on the unit circle")
        if self.s <= 0:
            raise ValueError("sin(phi) must be positive (0 < phi < pi)")

    @property
    def exp_i(self) -> GaussianRational:
        return GaussianRational(self.c, self.s)

    @property
    def cot(self) -> Fraction:
        return self.c / self.s

    @property
    def sin2(self) -> Fraction:
        return 2 * self.c * self.s

    @property
    def cos2(self) -> Fraction:
        return self.c * self.c - self.s * self.s

    @property
    def cos4(self) -> Fraction:
        return 2 * self.cos2 ** 2 - 1

    @property
    def angle(self) -> float:
        import math

        return math.atan2(float(self.s), float(self.c))


def make_circle_point(p: int, q: int, r: int) -> UnitCirclePoint:
    """Point ``(cos, sin) = (q/r, p/r)`` from a Pythagorean triple ``p^2+q^2=r^2``."""
    if r == 0 or p * p + q * q != r * r:
        raise ValueError(f"({p}, {q}, {r}) is not a Pythagorean triple")
    s = Fraction(p, r)
    if s <= 0:
        raise ValueError("sin(phi) = p/r must be positive")
    return UnitCirclePoint(Fraction(q, r), s)


class Poly:
    """Dense polynomial in one variable over Q(i); ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_gaussian(c) if not isinstance(c, GaussianRational) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    __bool__ = lambda self: bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == ((o,) if o else ())

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, Poly):
            o = _coerce(other)
            if o is None:
                return NotImplemented
            other = Poly._raw([o])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            o = _coerce(other)
            if o is None:
                return NotImplemented
            other = Poly._raw([o])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Poly._raw([])
            out = [ZERO] * (len(a) + len(b) - 1)
            for i, ca in enumerate(a):
                if not ca:
                    continue
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = out[i + j] + ca * cb
            return Poly._raw(out)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            return Poly._raw([])
        return Poly._raw([c * o for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly._raw([ONE])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __call__(self, x):
        """Horner evaluation; works for GaussianRational, Fraction, complex or Poly."""
        if isinstance(x, complex) or isinstance(x, float):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        if isinstance(x, Poly):
            acc = Poly._raw([])
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = as_gaussian(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex_coeffs(self) -> list:
        return [complex(c) for c in self.coeffs]

    def divmod(self, den: "Poly") -> "tuple[Poly, Poly]":
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = den.degree
        inv_lead = den.leading.inverse()
        dc = den.coeffs
        if len(rem) - 1 < dd:
            return Poly._raw([]), self
        quot = [ZERO] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv_lead
            quot[k - dd] = q
            for j in range(dd + 1):
                if dc[j]:
                    rem[k - dd + j] = rem[k - dd + j] - q * dc[j]
        return Poly._raw(quot), Poly._raw(rem[:dd])

    def shift(self, t) -> "Poly":
        return poly_shift(self, t)

    def star(self) -> "Poly":
        return poly_star(self)

    @property
    def is_star_real(self) -> bool:
        return all(not c.im for c in self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = f"({c})" if (c.re and c.im) else str(c)
            if k == 0:
                terms.append(cs)
            elif k == 1:
                terms.append(f"{cs}*x")
            else:
                terms.append(f"{cs}*x^{k}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj) -> "Poly":
        return cls(GaussianRational.from_json(c) for c in obj)


def poly_shift(p: Poly, t) -> Poly:
    """Return ``q`` with ``q(x) = p(x + i*t)`` (Horner expansion, exact)."""
    h = GaussianRational(0, Fraction(t)) if not isinstance(t, GaussianRational) else I * t
    if not h or p.degree < 1:
        return p
    # Taylor shift by repeated synthetic division.
    cs = list(p.coeffs)
    n = len(cs)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            cs[k] = cs[k] + h * cs[k + 1]
    return Poly._raw(cs)


def poly_star(p: Poly) -> Poly:
    """Conjugate every coefficient; the variable is left untouched."""
    return Poly._raw([c.conjugate() for c in p.coeffs])


class PolyMatrix:
    """Rectangular grid of polynomials."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rs = tuple(tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row) for row in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rs)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def shape(self) -> "tuple[int, int]":
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def det_cofactor(m: PolyMatrix) -> Poly:
    """Leibniz/cofactor determinant; exponential cost, kept for small sizes and tests."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return m[0, 0]
    total = Poly._raw([])
    for j in range(n):
        e = m[0, j]
        if e.is_zero():
            continue
        minor = PolyMatrix([row[:j] + row[j + 1:] for row in m.rows[1:]])
        term = e * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _det_bareiss(m: PolyMatrix) -> Poly:
    n = m.shape[0]
    a = [list(row) for row in m.rows]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if piv is None:
                return Poly._raw([])
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = exact_divide(num, prev)
            a[i][k] = Poly._raw([])
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det(m: PolyMatrix) -> Poly:
    """Exact determinant: cofactor expansion up to 4x4, fraction-free Bareiss above."""
    n, k = m.shape
    if n != k:
        raise ValueError("determinant of a non-square matrix")
    if n <= 4:
        return det_cofactor(m)
    return _det_bareiss(m)


def exact_divide(num: Poly, den: Poly) -> Poly:
    """``num / den`` as a polynomial; raises :class:`InexactDivisionError` on a remainder."""
    q, r = num.divmod(den)
    if not r.is_zero():
        raise InexactDivisionError(f"nonzero remainder of degree {r.degree}")
    return q


def pochhammer(u, k: int):
    """Rising factorial ``(u)_k`` of a scalar (int, Fraction or GaussianRational)."""
    out = ONE if isinstance(u, GaussianRational) else Fraction(1)
    for m in range(k):
        out = out * (u + m)
    return out


def pochhammer_poly(base: Poly, k: int) -> Poly:
    """``(base)_k = base (base+1) ... (base+k-1)`` with ``(base)_0 = 1``."""
    out = Poly.const(1)
    for m in range(k):
        out = out * (base + m)
    return out


def binomial_shift_oracle(p: Poly, t) -> Poly:
    """Independent expansion of ``p(x + i t)`` via the binomial theorem."""
    h = GaussianRational(0, Fraction(t))
    out = [ZERO] * max(len(p.coeffs), 1)
    for k, a in enumerate(p.coeffs):
        for j in range(k + 1):
            out[j] = out[j] + a * comb(k, j) * h ** (k - j)
    return Poly(out)
