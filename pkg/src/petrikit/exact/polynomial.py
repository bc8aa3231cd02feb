"""Dense univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .rational import as_rational, format_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _strip(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    """Immutable polynomial with rational coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip([as_rational(c) for c in coeffs])
        self._hash = None

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> Polynomial:
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Polynomial", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # ring operations

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self.coeffs])

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
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = as_rational(c)
        return Polynomial([c * a for a in self.coeffs])

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading()
        if self.degree < db:
            return Polynomial(), self
        quot = [_ZERO] * (self.degree - db + 1)
        for k in range(self.degree - db, -1, -1):
            c = rem[k + db] / lb
            quot[k] = c
            if c:
                for j, bj in enumerate(other.coeffs):
                    rem[k + j] -= c * bj
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self.scale(1 / self.leading())

    def gcd(self, other: Polynomial) -> Polynomial:
        """Monic gcd (zero if both inputs are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> Polynomial:
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def __call__(self, value):
        """Horner evaluation at a scalar or at any ring element (e.g. a series).

        Polynomials of degree <= 0 always evaluate to a scalar.
        """
        if self.degree <= 0:
            return self[0]
        acc = value * self.coeffs[-1]
        for k in range(self.degree - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                acc = acc + c
            if k:
                acc = acc * value
        return acc

    def multiplicity(self, root) -> int:
        """Order of vanishing at a rational ``root``."""
        if self.is_zero():
            raise ValueError("multiplicity of a root of the zero polynomial")
        lin = Polynomial([-as_rational(root), 1])
        p, m = self, 0
        while True:
            q, r = p.divmod(lin)
            if not r.is_zero():
                return m
            p, m = q, m + 1


class RationalFunction:
    """Reduced quotient of polynomials with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial([num])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.leading()
            if lc != 1:
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def from_poly(cls, p: Polynomial) -> RationalFunction:
        return cls(p)

    @classmethod
    def x(cls) -> RationalFunction:
        return cls(Polynomial.x())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("RationalFunction", self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, var: str = "x") -> str:
        if self.is_polynomial():
            return self.num.to_text(var)
        n, d = self.num.to_text(var), self.den.to_text(var)
        if len(self.num.coeffs) > 1:
            n = f"({n})"
        return f"{n}/({d})"

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

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
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

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

    def __pow__(self, n: int) -> RationalFunction:
        if n >= 0:
            return RationalFunction(self.num**n, self.den**n)
        return RationalFunction(self.den ** (-n), self.num ** (-n))

    def derivative(self) -> RationalFunction:
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, value):
        if isinstance(value, (int, Fraction)):
            dv = self.den(value)
            if dv == 0:
                raise ZeroDivisionError("rational function evaluated at a pole")
            return self.num(value) / dv
        n, d = self.num(value), self.den(value)
        if isinstance(d, Fraction):
            return n * (1 / d)
        return n / d
