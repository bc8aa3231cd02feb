"""Truncated Laurent series in a local coordinate ``z`` and truncated power
series in a deformation parameter ``t``.

A :class:`LaurentSeries` stores the exact coefficients of ``z^lead`` through
``z^(trunc-1)`` and stands for ``sum c_k z^k + O(z^trunc)``.  Leading zeros
are stripped on construction, so ``lead`` is the true valuation whenever the
series is nonzero inside its window; a series with no nonzero coefficient in
its window has ``lead == trunc``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Generic, Iterable, Mapping, Sequence, TypeVar

from .rational import as_rational, format_rational

_ZERO = Fraction(0)


class WindowError(ArithmeticError):
    """Raised when a requested coefficient lies past a truncation window."""


class LaurentSeries:
    __slots__ = ("lead", "coeffs", "trunc")

    def __init__(self, lead: int, coeffs: Sequence = (), trunc: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if trunc is None:
            trunc = lead + len(cs)
        if trunc < lead:
            raise ValueError("lead_order must not exceed trunc_order")
        if len(cs) > trunc - lead:
            raise ValueError("more coefficients than the window holds")
        cs.extend([_ZERO] * (trunc - lead - len(cs)))
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        self.lead = lead + k
        self.coeffs = tuple(cs[k:])
        self.trunc = trunc

    # constructors

    @classmethod
    def zero(cls, trunc: int) -> LaurentSeries:
        return cls(trunc, (), trunc)

    @classmethod
    def constant(cls, c, trunc: int) -> LaurentSeries:
        if trunc <= 0:
            return cls.zero(trunc)
        return cls(0, [c], trunc)

    @classmethod
    def monomial(cls, k: int, trunc: int, c=1) -> LaurentSeries:
        if trunc <= k:
            return cls.zero(trunc)
        return cls(k, [c], trunc)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object] | Iterable[tuple[int, object]], trunc: int) -> LaurentSeries:
        """Build from ``{exponent: coefficient}``; terms at or past ``trunc`` are dropped."""
        items = dict(terms).items() if not isinstance(terms, Mapping) else terms.items()
        kept = {int(k): as_rational(v) for k, v in items if int(k) < trunc}
        if not kept:
            return cls.zero(trunc)
        lead = min(kept)
        cs = [kept.get(k, _ZERO) for k in range(lead, trunc)]
        return cls(lead, cs, trunc)

    # inspection

    def is_zero(self) -> bool:
        """True when every coefficient inside the window vanishes."""
        return self.lead == self.trunc

    @property
    def valuation(self) -> int | None:
        return None if self.is_zero() else self.lead

    def __getitem__(self, k: int) -> Fraction:
        if k >= self.trunc:
            raise WindowError(f"coefficient of z^{k} lies outside the window O(z^{self.trunc})")
        if k < self.lead:
            return _ZERO
        return self.coeffs[k - self.lead]

    def terms(self) -> dict[int, Fraction]:
        return {self.lead + i: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.lead, self.coeffs, self.trunc) == (other.lead, other.coeffs, other.trunc)

    def __hash__(self) -> int:
        return hash(("LaurentSeries", self.lead, self.coeffs, self.trunc))

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equality on the common window."""
        t = min(self.trunc, other.trunc)
        lo = min(self.lead, other.lead, t)
        return all(self[k] == other[k] for k in range(lo, t))

    def __repr__(self) -> str:
        return f"LaurentSeries({self})"

    def __str__(self) -> str:
        parts = []
        for k, c in sorted(self.terms().items()):
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        parts.append(f"O(z^{self.trunc})")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def truncate(self, trunc: int) -> LaurentSeries:
        trunc = min(trunc, self.trunc)
        if trunc <= self.lead:
            return LaurentSeries.zero(trunc)
        return LaurentSeries(self.lead, self.coeffs[: trunc - self.lead], trunc)

    def principal_part(self) -> LaurentSeries:
        """Negative-exponent part, as a series known through z^-1 (trunc 0)."""
        if self.trunc < 0:
            raise WindowError("principal part extends past the truncation window")
        return self.truncate(0)

    def _add(self, other: LaurentSeries, sign: int) -> LaurentSeries:
        trunc = min(self.trunc, other.trunc)
        lead = min(self.lead, other.lead, trunc)
        cs = [self[k] + sign * other[k] for k in range(lead, trunc)]
        return LaurentSeries(lead, cs, trunc)

    def __add__(self, other):
        if isinstance(other, LaurentSeries):
            return self._add(other, 1)
        if isinstance(other, (int, Fraction)):
            return self._add(LaurentSeries.constant(other, self.trunc), 1)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, LaurentSeries):
            return self._add(other, -1)
        if isinstance(other, (int, Fraction)):
            return self._add(LaurentSeries.constant(other, self.trunc), -1)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.lead, [-c for c in self.coeffs], self.trunc)

    def scale(self, c) -> LaurentSeries:
        c = as_rational(c)
        return LaurentSeries(self.lead, [c * a for a in self.coeffs], self.trunc)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        trunc = min(self.trunc + other.lead, other.trunc + self.lead)
        lead = self.lead + other.lead
        if trunc <= lead:
            return LaurentSeries.zero(trunc)
        n = trunc - lead
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * n
        for i in range(min(n, len(a))):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(n - i, len(b))):
                out[i + j] += ai * b[j]
        return LaurentSeries(lead, out, trunc)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by the exact monomial z^k."""
        return LaurentSeries(self.lead + k, self.coeffs, self.trunc + k)

    def inverse(self) -> LaurentSeries:
        if self.is_zero():
            raise WindowError("cannot invert a series with no nonzero coefficient in its window")
        n = self.trunc - self.lead
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, n):
            s = _ZERO
            for i in range(1, min(k, len(a) - 1) + 1):
                s += a[i] * out[k - i]
            out.append(-s * inv0)
        return LaurentSeries(-self.lead, out, -self.lead + n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / as_rational(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse().scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> LaurentSeries:
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            rel = self.trunc - self.lead
            return LaurentSeries.constant(1, rel)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def derivative(self) -> LaurentSeries:
        """d/dz; the window shrinks by one."""
        cs = [(self.lead + i) * c for i, c in enumerate(self.coeffs)]
        return LaurentSeries(self.lead - 1, cs, self.trunc - 1)

    def residue(self) -> Fraction:
        """Coefficient of z^-1."""
        if self.trunc <= -1:
            raise WindowError("residue outside truncation window")
        return self[-1]


def series_multiply(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    return a * b


def series_residue(a: LaurentSeries) -> Fraction:
    return a.residue()


def compose(outer: LaurentSeries, inner: LaurentSeries) -> LaurentSeries:
    """outer(inner(u)) for ``inner`` of valuation exactly 1 (a change of chart)."""
    if inner.is_zero() or inner.lead != 1:
        raise ValueError("inner series must have valuation exactly 1")
    if outer.is_zero():
        rel = inner.trunc - inner.lead
        return LaurentSeries.zero(min(outer.trunc, outer.lead + rel))
    rel = min(outer.trunc - outer.lead, inner.trunc - inner.lead)
    base = inner.truncate(1 + rel)
    acc = None
    power = base ** outer.lead if outer.lead else LaurentSeries.constant(1, rel)
    for c in outer.coeffs:
        term = power.scale(c)
        acc = term if acc is None else acc + term
        power = power * base
    trunc = outer.lead + rel
    return acc.truncate(trunc)


def power_series_sqrt(coeffs: Sequence[Fraction], root0: Fraction, n: int) -> list[Fraction]:
    """First ``n`` coefficients of the square root of a power series with the
    given constant-term square root ``root0`` (nonzero)."""
    if root0 == 0:
        raise ValueError("square root branch must have nonzero constant term")
    if as_rational(root0) ** 2 != (coeffs[0] if coeffs else 0):
        raise ValueError("root0 does not square to the constant term")
    out = [as_rational(root0)]
    two_r = 2 * out[0]
    for k in range(1, n):
        ck = coeffs[k] if k < len(coeffs) else _ZERO
        s = sum((out[i] * out[k - i] for i in range(1, k)), _ZERO)
        out.append((ck - s) / two_r)
    return out


T = TypeVar("T")


class DeformationSeries(Generic[T]):
    """``sum_{i < order} c_i t^i`` computed modulo ``t^order``.

    Coefficients may be any ring elements (rationals, Laurent series,
    curve functions); products use the truncated Cauchy rule.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[T], order: int | None = None):
        cs = list(coeffs)
        if order is None:
            order = len(cs)
        if order < 1:
            raise ValueError("deformation series needs order >= 1")
        if len(cs) > order:
            cs = cs[:order]
        if len(cs) < order:
            if not cs:
                raise ValueError("cannot infer a zero coefficient from an empty series")
            zero = cs[0] * 0
            cs.extend([zero] * (order - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    def __getitem__(self, i: int) -> T:
        return self.coeffs[i]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeformationSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("DeformationSeries", self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"DeformationSeries({list(self.coeffs)!r}, order={self.order})"

    def map(self, fn: Callable[[T], T]) -> DeformationSeries[T]:
        return DeformationSeries([fn(c) for c in self.coeffs], self.order)

    def __add__(self, other: DeformationSeries[T]) -> DeformationSeries[T]:
        n = min(self.order, other.order)
        return DeformationSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other: DeformationSeries[T]) -> DeformationSeries[T]:
        n = min(self.order, other.order)
        return DeformationSeries([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __neg__(self) -> DeformationSeries[T]:
        return self.map(lambda c: -c)

    def scale(self, c) -> DeformationSeries[T]:
        return self.map(lambda a: a * c)

    def __mul__(self, other):
        if not isinstance(other, DeformationSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = self.coeffs[0] * other.coeffs[k]
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return DeformationSeries(out, n)


def exp_coefficient(m: int) -> Fraction:
    return Fraction(1, factorial(m))
