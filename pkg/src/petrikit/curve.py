"""Odd-degree hyperelliptic curves y^2 = f(x) over Q.

Local coordinates:

* affine unramified place (x0, y0), y0 != 0:  z = x - x0
* affine ramified place (x0, 0):              z = y
* the single place at infinity:               z = x^g / y, so that
  val(x) = -2 and val(y) = -(2g + 1)

Differentials are written h * dx/y; dx/y is holomorphic with divisor
(2g - 2) * infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .exact import ExactMatrix, LaurentSeries, Polynomial, RationalFunction, WindowError
from .exact.rational import as_rational
from .exact.series import power_series_sqrt

DEFAULT_WINDOW_PAD = 12
MAX_WINDOW = 4096

_ZERO = Fraction(0)


def rational_sqrt(q: Fraction) -> Fraction | None:
    q = as_rational(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True, order=False)
class Place:
    """A Q-rational place: affine (x, y) or the point at infinity (x = y = None)."""

    x: Fraction | None
    y: Fraction | None
    ramified: bool

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def is_affine(self) -> bool:
        return self.x is not None

    def sort_key(self) -> tuple:
        if self.is_infinity:
            return (1, _ZERO, _ZERO)
        return (0, self.x, self.y)

    def __str__(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({self.x}, {self.y})"

    def conjugate(self) -> Place:
        if self.is_infinity or self.ramified:
            return self
        return Place(self.x, -self.y, False)


class Divisor:
    """Finite formal sum of rational places with nonzero integer multiplicities."""

    __slots__ = ("_items",)

    def __init__(self, support: Mapping[Place, int] | Iterable[tuple[Place, int]] = ()):
        items = support.items() if isinstance(support, Mapping) else list(support)
        acc: dict[Place, int] = {}
        for p, m in items:
            acc[p] = acc.get(p, 0) + int(m)
        self._items = tuple(sorted(((p, m) for p, m in acc.items() if m), key=lambda pm: pm[0].sort_key()))

    @property
    def support(self) -> tuple[Place, ...]:
        return tuple(p for p, _ in self._items)

    def items(self) -> tuple[tuple[Place, int], ...]:
        return self._items

    def __getitem__(self, p: Place) -> int:
        for q, m in self._items:
            if q == p:
                return m
        return 0

    @property
    def degree(self) -> int:
        return sum(m for _, m in self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(("Divisor", self._items))

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(list(self._items) + list(other._items))

    def __neg__(self) -> Divisor:
        return Divisor([(p, -m) for p, m in self._items])

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor([(p, k * m) for p, m in self._items])

    __rmul__ = __mul__

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self._items)

    def __repr__(self) -> str:
        if not self._items:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{m}*{p}" for p, m in self._items) + ")"


class HyperellipticCurve:
    """y^2 = f(x) with f squarefree of odd degree 2g + 1 >= 3."""

    def __init__(self, f: Polynomial | Sequence):
        if not isinstance(f, Polynomial):
            f = Polynomial(f)
        if f.degree < 3 or f.degree % 2 == 0:
            raise ValueError("f must have odd degree 2g+1 with g >= 1")
        if not f.is_squarefree():
            raise ValueError("f must be squarefree (gcd(f, f') = 1)")
        self.f = f
        self.genus = (f.degree - 1) // 2
        self._fprime = f.derivative()
        self.infinity = Place(None, None, True)

    def __eq__(self, other) -> bool:
        return isinstance(other, HyperellipticCurve) and self.f == other.f

    def __hash__(self) -> int:
        return hash(("HyperellipticCurve", self.f))

    def __repr__(self) -> str:
        return f"HyperellipticCurve(y^2 = {self.f})"

    # places

    def place(self, x, y) -> Place:
        x, y = as_rational(x), as_rational(y)
        if y * y != self.f(x):
            raise ValueError(f"({x}, {y}) is not a rational point of {self}")
        return Place(x, y, y == 0)

    def check_place(self, p: Place) -> None:
        if p.is_infinity:
            return
        if p.y * p.y != self.f(p.x) or p.ramified != (p.y == 0):
            raise ValueError(f"{p} is not a rational place of {self}")

    def places_over(self, x0) -> list[Place]:
        x0 = as_rational(x0)
        v = self.f(x0)
        if v == 0:
            return [Place(x0, _ZERO, True)]
        r = rational_sqrt(v)
        if r is None:
            return []
        return [Place(x0, -r, False), Place(x0, r, False)]

    def rational_points(self, height: int = 10) -> list[Place]:
        """Affine rational places with x = a/b, |a|, b <= height."""
        xs = sorted({Fraction(a, b) for b in range(1, height + 1) for a in range(-height, height + 1)})
        out = []
        for x0 in xs:
            out.extend(self.places_over(x0))
        return out

    def canonical_divisor(self) -> Divisor:
        return Divisor({self.infinity: 2 * self.genus - 2})

    def point_divisor(self, p: Place, mult: int = 1) -> Divisor:
        self.check_place(p)
        return Divisor({p: mult})

    # functions

    def function(self, a=0, b=0) -> CurveFunction:
        return CurveFunction(self, a, b)

    def constant(self, c) -> CurveFunction:
        return CurveFunction(self, c, 0)

    @property
    def x(self) -> CurveFunction:
        return CurveFunction(self, RationalFunction.x(), 0)

    @property
    def y(self) -> CurveFunction:
        return CurveFunction(self, 0, 1)

    def reference_differential(self) -> CurveDifferential:
        return CurveDifferential(self.constant(1))

    # local coordinate data

    def local_xy(self, p: Place, window: int) -> tuple[LaurentSeries, LaurentSeries]:
        """Expansions of x and y in the uniformizer at ``p``, each known to at
        least ``window`` coefficients past its leading term."""
        self.check_place(p)
        return _local_xy(self, p, window)


def _ps_mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    out = [_ZERO] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j, bj in enumerate(b[: n - i]):
                out[i + j] += ai * bj
    return out


def _ps_inv(a: Sequence[Fraction], n: int) -> list[Fraction]:
    inv0 = 1 / a[0]
    out = [inv0]
    for k in range(1, n):
        s = sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), _ZERO)
        out.append(-s * inv0)
    return out


def _ps_eval(p: Polynomial, a: Sequence[Fraction], n: int) -> list[Fraction]:
    acc = [_ZERO] * n
    for c in reversed(p.coeffs):
        acc = _ps_mul(acc, a, n)
        acc[0] += c
    return acc


def _solve_fixed_point(g: Polynomial, n: int) -> list[Fraction]:
    """Power series u = z^2 / g(u) mod z^n, for g(0) != 0."""
    u = [_ZERO] * n
    for _ in range(n // 2 + 2):
        inv = _ps_inv(_ps_eval(g, u, n), n)
        u = ([_ZERO, _ZERO] + inv)[:n]
    return u


@lru_cache(maxsize=4096)
def _local_xy(curve: HyperellipticCurve, p: Place, window: int) -> tuple[LaurentSeries, LaurentSeries]:
    f = curve.f
    n = window + 2
    if p.is_infinity:
        g = curve.genus
        # v = 1/x satisfies v = z^2 * F(v) with F(v) = v^(2g+1) f(1/v)
        rev = Polynomial(list(reversed(f.coeffs)))
        v = _solve_fixed_point_general(rev, n + 2)
        vs = LaurentSeries(2, v[2:], n + 2)
        x = vs.inverse()
        y = (x ** g).shift(-1) if g else x.shift(-1)
        return x.truncate(x.lead + window), y.truncate(y.lead + window)
    shifted = f(Polynomial([p.x, 1]))
    if not p.ramified:
        x = LaurentSeries.from_terms({0: p.x, 1: 1}, window)
        y = LaurentSeries(0, power_series_sqrt(shifted.coeffs, p.y, window), window)
        return x, y
    # f(x0 + u) = u * G(u), z = y, u = z^2 / G(u)
    G = Polynomial(shifted.coeffs[1:])
    u = _solve_fixed_point(G, n)
    x = LaurentSeries(0, [p.x] + u[1:], n).truncate(window)
    y = LaurentSeries.monomial(1, window + 1)
    return x, y


def _solve_fixed_point_general(F: Polynomial, n: int) -> list[Fraction]:
    """Power series v = z^2 * F(v) mod z^n."""
    v = [_ZERO] * n
    for _ in range(n // 2 + 2):
        fv = _ps_eval(F, v, n)
        v = ([_ZERO, _ZERO] + fv)[:n]
    return v


def _reduce_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value)
    return RationalFunction(Polynomial([as_rational(value)]))


class CurveFunction:
    """Element a(x) + b(x) * y of the function field Q(x, y)."""

    __slots__ = ("curve", "a", "b")

    def __init__(self, curve: HyperellipticCurve, a=0, b=0):
        self.curve = curve
        self.a = _reduce_rf(a)
        self.b = _reduce_rf(b)

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CurveFunction(self.curve, other)
        if not isinstance(other, CurveFunction):
            return NotImplemented
        return self.curve == other.curve and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash(("CurveFunction", self.curve, self.a, self.b))

    def __repr__(self) -> str:
        return f"CurveFunction({self})"

    def __str__(self) -> str:
        if self.b.is_zero():
            return self.a.to_text()
        bt = self.b.to_text()
        bpart = {"1": "y", "-1": "-y"}.get(bt, f"({bt})*y")
        if self.a.is_zero():
            return bpart
        if bpart == "-y":
            return f"{self.a.to_text()} - y"
        return f"{self.a.to_text()} + {bpart}"

    def _coerce(self, other):
        if isinstance(other, CurveFunction):
            if other.curve != self.curve:
                raise ValueError("functions live on different curves")
            return other
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return CurveFunction(self.curve, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CurveFunction(self.curve, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> CurveFunction:
        return CurveFunction(self.curve, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = RationalFunction(self.curve.f)
        a = self.a * other.a + self.b * other.b * f
        b = self.a * other.b + self.b * other.a
        return CurveFunction(self.curve, a, b)

    __rmul__ = __mul__

    def conjugate(self) -> CurveFunction:
        return CurveFunction(self.curve, self.a, -self.b)

    def norm(self) -> RationalFunction:
        return self.a * self.a - self.b * self.b * RationalFunction(self.curve.f)

    def inverse(self) -> CurveFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        n = self.norm()
        return CurveFunction(self.curve, self.a / n, -self.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> CurveFunction:
        base = self if n >= 0 else self.inverse()
        out = CurveFunction(self.curve, 1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def derivative(self) -> CurveFunction:
        """d/dx, using dy/dx = f'/(2y) = f' y / (2 f)."""
        f = RationalFunction(self.curve.f)
        fp = RationalFunction(self.curve._fprime)
        return CurveFunction(self.curve, self.a.derivative(), self.b.derivative() + self.b * fp / (f * 2))

    def is_integral(self) -> bool:
        """True when a and b are polynomials (regular at every affine place)."""
        return self.a.is_polynomial() and self.b.is_polynomial()

    def expand(self, p: Place, window: int) -> LaurentSeries:
        """Expansion at ``p`` from the local x, y data at working ``window``
        (pessimistic truncation; may be shorter than ``window``)."""
        x, y = self.curve.local_xy(p, window)
        out = _eval_rf(self.a, x)
        if not self.b.is_zero():
            term = _eval_rf(self.b, x) * y
            out = term if out is None else out + term
        if out is None:
            return LaurentSeries.zero(window)
        return out


def _eval_rf(r: RationalFunction, x: LaurentSeries) -> LaurentSeries | None:
    if r.is_zero():
        return None
    n = r.num(x)
    d = r.den(x)
    if isinstance(n, Fraction):
        n = LaurentSeries.constant(n, x.trunc - min(x.lead, 0))
    if isinstance(d, Fraction):
        return n.scale(1 / d)
    if d.is_zero():
        raise WindowError("denominator vanishes to the full working window")
    return n / d


def _pole_degree_at_infinity(r: RationalFunction) -> int:
    return r.num.degree - r.den.degree


def valuation(s: CurveFunction, p: Place) -> int:
    """Order of vanishing of ``s`` at ``p`` in the local uniformizer."""
    if s.is_zero():
        raise ValueError("valuation of the zero function")
    curve = s.curve
    curve.check_place(p)
    g = curve.genus
    if p.is_infinity:
        cands = []
        if not s.a.is_zero():
            cands.append(-2 * _pole_degree_at_infinity(s.a))
        if not s.b.is_zero():
            cands.append(-2 * _pole_degree_at_infinity(s.b) - (2 * g + 1))
        return min(cands)
    if p.ramified:
        cands = []
        if not s.a.is_zero():
            cands.append(2 * (s.a.num.multiplicity(p.x) - s.a.den.multiplicity(p.x)))
        if not s.b.is_zero():
            cands.append(2 * (s.b.num.multiplicity(p.x) - s.b.den.multiplicity(p.x)) + 1)
        return min(cands)
    if s.b.is_zero():
        return s.a.num.multiplicity(p.x) - s.a.den.multiplicity(p.x)
    if s.a.is_zero():
        return s.b.num.multiplicity(p.x) - s.b.den.multiplicity(p.x)
    w = DEFAULT_WINDOW_PAD + 4 * g
    while w <= MAX_WINDOW:
        ser = s.expand(p, w)
        if not ser.is_zero():
            return ser.lead
        w *= 2
    raise WindowError("valuation not resolved within the maximal working window")


def local_expansion(s: CurveFunction, p: Place, order: int) -> LaurentSeries:
    """Laurent expansion of ``s`` at ``p``, exact through z^(order-1)."""
    if s.is_zero():
        raise ValueError("local expansion of the zero function")
    s.curve.check_place(p)
    v = valuation(s, p)
    if order <= v:
        raise ValueError(f"order {order} does not exceed the valuation {v}")
    w = max(order - min(v, 0) + DEFAULT_WINDOW_PAD, 4 * s.curve.genus + 12)
    while w <= MAX_WINDOW:
        ser = s.expand(p, w)
        if ser.trunc >= order:
            return ser.truncate(order)
        w *= 2
    raise WindowError(f"expansion order {order} unreachable at {p}")


def principal_part(s: CurveFunction, p: Place) -> LaurentSeries:
    """Negative-exponent part of the expansion of ``s`` at ``p`` (trunc 0)."""
    if s.is_zero() or valuation(s, p) >= 0:
        return LaurentSeries.zero(0)
    return local_expansion(s, p, 0)


def dx_dz(curve: HyperellipticCurve, p: Place, window: int) -> LaurentSeries:
    x, _ = curve.local_xy(p, window + 1)
    return x.derivative()


class CurveDifferential:
    """omega = h * dx/y."""

    __slots__ = ("h",)

    def __init__(self, h: CurveFunction):
        self.h = h

    @property
    def curve(self) -> HyperellipticCurve:
        return self.h.curve

    def is_zero(self) -> bool:
        return self.h.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurveDifferential):
            return NotImplemented
        return self.h == other.h

    def __hash__(self) -> int:
        return hash(("CurveDifferential", self.h))

    def __add__(self, other: CurveDifferential) -> CurveDifferential:
        return CurveDifferential(self.h + other.h)

    def __sub__(self, other: CurveDifferential) -> CurveDifferential:
        return CurveDifferential(self.h - other.h)

    def __neg__(self) -> CurveDifferential:
        return CurveDifferential(-self.h)

    def __mul__(self, s) -> CurveDifferential:
        return CurveDifferential(self.h * s)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"CurveDifferential(({self.h}) dx/y)"

    def __str__(self) -> str:
        return f"({self.h}) dx/y"

    def valuation(self, p: Place) -> int:
        base = 2 * self.curve.genus - 2 if p.is_infinity else 0
        return valuation(self.h, p) + base

    def is_holomorphic(self) -> bool:
        return is_holomorphic_form(self.h, 1)

    def coefficient_expansion(self, p: Place, order: int) -> LaurentSeries:
        """Series w(z) with omega = w(z) dz near ``p``, exact through z^(order-1)."""
        return differential_expansion(self.h, p, order, 1)


def is_holomorphic_form(h: CurveFunction, k: int) -> bool:
    """Whether h * (dx/y)^k is a holomorphic k-differential.

    Regular at every affine place iff a and b are polynomials (the integral
    closure of Q[x] is Q[x] + Q[x] y); at infinity the bound is
    val(h) >= -k (2g - 2).
    """
    if h.is_zero():
        return True
    if not h.is_integral():
        return False
    return valuation(h, h.curve.infinity) >= -k * (2 * h.curve.genus - 2)


def differential_expansion(h: CurveFunction, p: Place, order: int, k: int = 1) -> LaurentSeries:
    """Series w(z) with h (dx/y)^k = w(z) dz^k near ``p``, exact through z^(order-1)."""
    curve = h.curve
    curve.check_place(p)
    if h.is_zero():
        return LaurentSeries.zero(order)
    w = max(order + DEFAULT_WINDOW_PAD, 4 * curve.genus + 12)
    while w <= MAX_WINDOW:
        x, y = curve.local_xy(p, w + 1)
        frame = x.derivative() / y
        ser = h.expand(p, w) * (frame ** k)
        if ser.trunc >= order:
            return ser.truncate(order)
        w *= 2
    raise WindowError(f"differential expansion order {order} unreachable at {p}")


def residue(omega: CurveDifferential, p: Place) -> Fraction:
    """Coefficient of z^-1 dz of omega at ``p``."""
    return differential_expansion(omega.h, p, 0).residue()


def canonical_basis(curve: HyperellipticCurve) -> list[CurveDifferential]:
    out = []
    for i in range(curve.genus):
        omega = CurveDifferential(CurveFunction(curve, Polynomial.monomial(i)))
        if omega.valuation(curve.infinity) < 0 or not omega.is_holomorphic():
            raise AssertionError("canonical basis element failed its holomorphy check")
        out.append(omega)
    return out


def _pole_order_key(kind: str, k: int, g: int) -> int:
    return 2 * k if kind == "p" else 2 * k + 2 * g + 1


def riemann_roch_space(curve: HyperellipticCurve, divisor: Divisor) -> list[CurveFunction]:
    """Basis of L(D) = {s : div(s) + D >= 0}, ordered by pole order at infinity.

    Ansatz s = (p(x) + q(x) y) / m(x); the condition at infinity is a pure
    degree bound, the affine conditions are linear in the coefficients of
    p and q and are imposed through local expansions.
    """
    for p in divisor.support:
        try:
            curve.check_place(p)
        except ValueError as exc:
            raise ValueError(f"divisor support is not rational on the curve: {exc}") from None
    deg = divisor.degree
    g = curve.genus
    if deg < 0:
        return []

    xs = sorted({p.x for p in divisor.support if p.is_affine})
    exps: dict[Fraction, int] = {}
    for x0 in xs:
        e = 0
        for q in curve.places_over(x0):
            r = 2 if q.ramified else 1
            e = max(e, -(-divisor[q] // r))
        exps[x0] = e
    m = Polynomial([1])
    for x0, e in exps.items():
        if e:
            m = m * Polynomial([-x0, 1]) ** e
    big_m = m.degree
    n_inf = divisor[curve.infinity]
    dp = math.floor((n_inf + 2 * big_m) / 2)
    dq = math.floor((n_inf + 2 * big_m - 2 * g - 1) / 2)
    monomials = [("p", k) for k in range(dp + 1)] + [("q", k) for k in range(dq + 1)]
    monomials.sort(key=lambda mk: _pole_order_key(mk[0], mk[1], g))
    if not monomials:
        return []

    rows: list[list[Fraction]] = []
    for x0 in xs:
        for q in curve.places_over(x0):
            r = 2 if q.ramified else 1
            bound = exps[x0] * r - divisor[q]
            if bound <= 0:
                continue
            x, y = curve.local_xy(q, bound)
            x, y = x.truncate(bound), y.truncate(bound)
            powers = [LaurentSeries.constant(1, bound)]
            for _ in range(max(dp, dq)):
                powers.append((powers[-1] * x).truncate(bound))
            cols = []
            for kind, k in monomials:
                ser = powers[k] if kind == "p" else (powers[k] * y).truncate(bound)
                cols.append([ser[j] for j in range(bound)])
            for j in range(bound):
                rows.append([col[j] for col in cols])

    n = len(monomials)
    if rows:
        kernel = ExactMatrix(rows, n).kernel()
    else:
        kernel = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]

    # echelon form with the highest pole order leading, smallest first
    rev = [tuple(reversed(v)) for v in kernel]
    basis_vectors = []
    if rev:
        red, pivots = ExactMatrix(rev, n).rref()
        for i in range(len(pivots)):
            basis_vectors.append(tuple(reversed(red[i])))
    basis_vectors.sort(key=lambda v: max(i for i, c in enumerate(v) if c))

    out = []
    for v in basis_vectors:
        pc = [_ZERO] * (dp + 1)
        qc = [_ZERO] * (max(dq, -1) + 1)
        for c, (kind, k) in zip(v, monomials):
            if kind == "p":
                pc[k] = c
            else:
                qc[k] = c
        out.append(CurveFunction(curve, RationalFunction(Polynomial(pc), m), RationalFunction(Polynomial(qc), m)))

    if deg > 2 * g - 2 and len(out) != deg - g + 1:
        raise RuntimeError(
            f"Riemann-Roch gate failed: computed l(D) = {len(out)}, expected {deg - g + 1}"
        )
    return out


def ell(curve: HyperellipticCurve, divisor: Divisor) -> int:
    return len(riemann_roch_space(curve, divisor))


def in_riemann_roch_space(s: CurveFunction, divisor: Divisor) -> bool:
    """Exact test of div(s) + D >= 0 at every place of the curve."""
    if s.is_zero():
        return True
    curve = s.curve
    support_x = {p.x for p in divisor.support if p.is_affine}
    for r, allow in ((s.a, 0), (s.b, 1)):
        rest = r.den
        for x0 in support_x:
            while rest.degree > 0 and rest(x0) == 0:
                rest = rest // Polynomial([-x0, 1])
        # away from supp(D) the a-part must be regular and the b-part may
        # only have simple poles at ramification points
        if rest.degree > 0:
            if not allow or not (curve.f % rest).is_zero():
                return False
    places = set(divisor.support) | {curve.infinity}
    for x0 in support_x:
        places.update(curve.places_over(x0))
    return all(valuation(s, p) >= -divisor[p] for p in places)


def coordinates_in_span(target: CurveFunction, basis: Sequence[CurveFunction]) -> tuple[Fraction, ...] | None:
    """Exact coordinates of ``target`` in ``basis`` (None if outside the span).

    Works on the (a, b) numerator coefficients over the common denominator.
    """
    items = list(basis) + [target]
    den = Polynomial([1])
    for s in items:
        for r in (s.a, s.b):
            den = (den * r.den) // den.gcd(r.den)
    vecs = []
    width_a = width_b = 0
    polys = []
    for s in items:
        pa = (s.a * RationalFunction(den)).num
        pb = (s.b * RationalFunction(den)).num
        polys.append((pa, pb))
        width_a = max(width_a, pa.degree + 1)
        width_b = max(width_b, pb.degree + 1)
    for pa, pb in polys:
        vecs.append([pa[k] for k in range(width_a)] + [pb[k] for k in range(width_b)])
    cols = vecs[:-1]
    rhs = vecs[-1]
    m = ExactMatrix.from_columns(cols, rows=len(rhs))
    if not m.is_consistent(rhs):
        return None
    return m.solve(rhs)
