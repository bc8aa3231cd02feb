"""The multiplication map mu_0: H^0(L) x H^0(K - L) -> H^0(K) and its tower.

For a tensor kappa = sum c_ij s_i (x) eta_j with eta_j = phi_j dx/y, level k
of the tower is

    mu_k(kappa) = sum c_ij (d^k s_i / dx^k) phi_j dx^k dx/y
                = y^k * sum c_ij s_i^(k) phi_j * (dx/y)^(k+1),

which is well defined (chart-free and holomorphic) once mu_0 .. mu_(k-1)
vanish on kappa.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .curve import (
    CurveDifferential,
    CurveFunction,
    Divisor,
    HyperellipticCurve,
    Place,
    canonical_basis,
    differential_expansion,
    is_holomorphic_form,
    local_expansion,
    riemann_roch_space,
    valuation,
)
from .exact import ExactMatrix, LaurentSeries, Polynomial
from .exact.matrix import row_space_basis
from .exact.series import compose


class PluriDifferential:
    """h * (dx/y)^weight."""

    __slots__ = ("h", "weight")

    def __init__(self, h: CurveFunction, weight: int):
        self.h = h
        self.weight = weight

    @property
    def curve(self) -> HyperellipticCurve:
        return self.h.curve

    def is_zero(self) -> bool:
        return self.h.is_zero()

    def is_holomorphic(self) -> bool:
        return is_holomorphic_form(self.h, self.weight)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PluriDifferential):
            return NotImplemented
        return self.weight == other.weight and self.h == other.h

    def __hash__(self) -> int:
        return hash(("PluriDifferential", self.h, self.weight))

    def __str__(self) -> str:
        if self.weight == 1:
            return f"({self.h}) dx/y"
        return f"({self.h}) (dx/y)^{self.weight}"

    def __repr__(self) -> str:
        return f"PluriDifferential({self})"

    def expansion(self, p: Place, order: int) -> LaurentSeries:
        """Coefficient of dz^weight in the uniformizer at ``p``."""
        return differential_expansion(self.h, p, order, self.weight)


@dataclass(frozen=True)
class PetriTensor:
    """sum c[i][j] s_i (x) eta_j."""

    coeffs: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vector(cls, vec: Sequence[Fraction], n: int, m: int) -> PetriTensor:
        return cls(tuple(tuple(Fraction(vec[i * m + j]) for j in range(m)) for i in range(n)))

    @classmethod
    def zero(cls, n: int, m: int) -> PetriTensor:
        return cls(tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n)))

    def vector(self) -> tuple[Fraction, ...]:
        return tuple(c for row in self.coeffs for c in row)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vector())

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, c) for i, row in enumerate(self.coeffs) for j, c in enumerate(row) if c]

    def label(self) -> str:
        parts = []
        for i, j, c in self.terms():
            mono = f"s{i + 1}*e{j + 1}"
            if c == 1:
                parts.append(f"+ {mono}")
            elif c == -1:
                parts.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                parts.append(f"{sign} {abs(c)}*{mono}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __add__(self, other: PetriTensor) -> PetriTensor:
        return PetriTensor(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> PetriTensor:
        c = Fraction(c)
        return PetriTensor(tuple(tuple(c * a for a in r) for r in self.coeffs))


@dataclass
class PetriMap:
    curve: HyperellipticCurve
    L_divisor: Divisor
    sections: list[CurveFunction]
    duals: list[CurveDifferential]
    matrix: ExactMatrix
    kernel: list[PetriTensor]
    base_point_free: bool | None = None
    base_points: list[Place] = field(default_factory=list)

    @property
    def domain_dim(self) -> int:
        return len(self.sections) * len(self.duals)

    @property
    def rank(self) -> int:
        return self.matrix.rank() if self.matrix.cols else 0

    @property
    def is_injective(self) -> bool:
        return not self.kernel

    def column_labels(self) -> list[str]:
        return [f"({i + 1},{j + 1})" for i in range(len(self.sections)) for j in range(len(self.duals))]

    def apply(self, kappa: PetriTensor) -> CurveDifferential:
        """mu_0(kappa) as a differential."""
        return CurveDifferential(_contract(self, kappa, 0))


@dataclass
class MuTowerResult:
    level: int
    value: PluriDifferential
    kernel_element: PetriTensor

    @property
    def nonzero(self) -> bool:
        return not self.value.is_zero()


def _contract(pm: PetriMap, kappa: PetriTensor, k: int) -> CurveFunction:
    """sum c_ij s_i^(k) phi_j with d/dx derivatives."""
    curve = pm.curve
    if len(kappa.coeffs) != len(pm.sections) or any(len(r) != len(pm.duals) for r in kappa.coeffs):
        raise ValueError("tensor shape does not match the Petri map domain")
    derivs = []
    for s in pm.sections:
        d = s
        for _ in range(k):
            d = d.derivative()
        derivs.append(d)
    acc = curve.constant(0)
    for i, j, c in kappa.terms():
        acc = acc + derivs[i] * pm.duals[j].h * c
    return acc


def _holomorphic_coordinates(h: CurveFunction) -> list[Fraction]:
    """Coordinates of a holomorphic h dx/y in the canonical basis x^k dx/y."""
    g = h.curve.genus
    if h.is_zero():
        return [Fraction(0)] * g
    if not is_holomorphic_form(h, 1) or not h.b.is_zero():
        raise AssertionError("product of sections is not a holomorphic differential")
    return [h.a.num[k] for k in range(g)]


def base_locus(curve: HyperellipticCurve, divisor: Divisor, sections: Sequence[CurveFunction]) -> tuple[list[Place], bool]:
    """Rational base points of |D| and whether the answer is complete.

    Off supp(D), a common zero of all sections lies over a common root of
    the numerators of their norms; irrational such roots are reported as
    unresolved rather than examined.
    """
    if not sections:
        return [], True
    points: list[Place] = []
    checked = set(divisor.support) | {curve.infinity}
    for x0 in {p.x for p in divisor.support if p.is_affine}:
        checked.update(curve.places_over(x0))
    for p in sorted(checked, key=Place.sort_key):
        if all(s.is_zero() or valuation(s, p) + divisor[p] > 0 for s in sections):
            points.append(p)
    common = Polynomial()
    for s in sections:
        common = common.gcd(s.norm().num)
    for x0 in {p.x for p in checked if p.is_affine}:
        while common.degree > 0 and common(x0) == 0:
            common = common // Polynomial([-x0, 1])
    complete = True
    for x0 in _rational_roots(common):
        for p in curve.places_over(x0):
            if all(s.is_zero() or valuation(s, p) > 0 for s in sections):
                points.append(p)
        while common.degree > 0 and common(x0) == 0:
            common = common // Polynomial([-x0, 1])
    if common.degree > 0:
        complete = False
    return sorted(set(points), key=Place.sort_key), complete


def _rational_roots(p: Polynomial) -> list[Fraction]:
    if p.degree <= 0:
        return []
    from math import gcd
    from itertools import product

    den = 1
    for c in p.coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return sorted(roots)
    q = Polynomial(ints)

    def divisors(n: int) -> list[int]:
        n = abs(n)
        return [d for d in range(1, n + 1) if n % d == 0] if n <= 10**6 else [1, n]

    for a, b in product(divisors(ints[0]), divisors(ints[-1])):
        for cand in (Fraction(a, b), Fraction(-a, b)):
            if q(cand) == 0:
                roots.add(cand)
    return sorted(roots)


def build_mu0(curve: HyperellipticCurve, L_divisor: Divisor) -> PetriMap:
    sections = riemann_roch_space(curve, L_divisor)
    if not sections:
        raise ValueError("no sections")
    duals = [CurveDifferential(phi) for phi in riemann_roch_space(curve, curve.canonical_divisor() - L_divisor)]
    g = curve.genus
    labels = [f"({i + 1},{j + 1})" for i in range(len(sections)) for j in range(len(duals))]
    columns = []
    for s in sections:
        for eta in duals:
            columns.append(_holomorphic_coordinates(s * eta.h))
    matrix = ExactMatrix.from_columns(
        columns, rows=g, row_labels=[f"x^{k} dx/y" for k in range(g)], col_labels=labels
    )
    n, m = len(sections), len(duals)
    kernel = [PetriTensor.from_vector(v, n, m) for v in row_space_basis(matrix.kernel(), n * m)] if columns else []
    base, complete = base_locus(curve, L_divisor, sections)
    bpf = (not base) if complete else (False if base else None)
    return PetriMap(curve, L_divisor, sections, duals, matrix, kernel, bpf, base)


def mu_value(pm: PetriMap, kappa: PetriTensor, level: int) -> PluriDifferential:
    """y^k * sum c_ij s_i^(k) phi_j in the (dx/y)^(k+1) frame, unchecked."""
    h = _contract(pm, kappa, level)
    return PluriDifferential(h * (pm.curve.y ** level), level + 1)


def mu_next(prev: PetriMap | MuTowerResult, kappa: PetriTensor, petri_map: PetriMap | None = None) -> MuTowerResult:
    """Next level of the tower on ``kappa``.

    ``prev`` is either the Petri map (giving mu_1) or the tower result at
    level k (giving mu_(k+1)); in the latter case ``petri_map`` supplies
    the bases.
    """
    if isinstance(prev, PetriMap):
        pm, level = prev, 1
    else:
        if petri_map is None:
            raise ValueError("petri_map is required when continuing from a tower result")
        if prev.kernel_element != kappa:
            raise ValueError("kappa differs from the element the previous level was evaluated on")
        pm, level = petri_map, prev.level + 1
    for j in range(level):
        if not _contract(pm, kappa, j).is_zero():
            raise ValueError(f"kappa is not in the kernel of mu_{j}")
    value = mu_value(pm, kappa, level)
    if not value.is_holomorphic():
        raise AssertionError("chart assembly bug: mu value is not holomorphic")
    return MuTowerResult(level, value, kappa)


@dataclass
class TowerLevel:
    level: int
    kernel: list[PetriTensor]
    values: list[MuTowerResult]


def _value_vector(value: PluriDifferential, width: int) -> list[Fraction]:
    h = value.h
    if not h.is_integral():
        raise AssertionError("chart assembly bug: mu value is not integral")
    return [h.a.num[k] for k in range(width)] + [h.b.num[k] for k in range(width)]


def tower(pm: PetriMap, depth: int) -> list[TowerLevel]:
    """Levels 1..depth: values of mu_k on a basis of ker mu_(k-1) and the new kernel.

    Stops early once the kernel is zero.
    """
    out: list[TowerLevel] = []
    kernel = list(pm.kernel)
    n, m = len(pm.sections), len(pm.duals)
    for level in range(1, depth + 1):
        if not kernel:
            break
        values = [mu_next(pm, kap) if level == 1 else _continue(pm, kap, level) for kap in kernel]
        width = max([1] + [max(v.value.h.a.num.degree, v.value.h.b.num.degree) + 1 for v in values])
        cols = [_value_vector(v.value, width) for v in values]
        mat = ExactMatrix.from_columns(cols, rows=2 * width)
        new_kernel = []
        for coeffs in row_space_basis(mat.kernel(), len(kernel)):
            t = PetriTensor.zero(n, m)
            for c, kap in zip(coeffs, kernel):
                if c:
                    t = t + kap.scale(c)
            new_kernel.append(t)
        out.append(TowerLevel(level, kernel, values))
        kernel = new_kernel
    return out


def _continue(pm: PetriMap, kappa: PetriTensor, level: int) -> MuTowerResult:
    res = mu_next(pm, kappa)
    while res.level < level:
        res = mu_next(res, kappa, pm)
    return res


def mu_value_in_chart(pm: PetriMap, kappa: PetriTensor, level: int, p: Place, chart: Sequence[Fraction], order: int) -> LaurentSeries:
    """sum c_ij (d^k s_i/du^k) w_j(u), computed purely from local expansions in
    the chart u with z = u + chart[0] u^2 + chart[1] u^3 + ... (z the
    uniformizer at ``p``); w_j du is eta_j in that chart."""
    zu = LaurentSeries(1, [1] + [Fraction(c) for c in chart], order + level + 2)
    dz_du = zu.derivative()
    width = order + level + 2
    acc = LaurentSeries.zero(order)
    for i, j, c in kappa.terms():
        s = pm.sections[i]
        if s.is_zero():
            continue
        v = valuation(s, p)
        sz = local_expansion(s, p, max(width, v + 1))
        su = compose(sz, zu)
        for _ in range(level):
            su = su.derivative()
        wz = differential_expansion(pm.duals[j].h, p, width)
        wu = compose(wz, zu) * dz_du
        acc = acc + (su * wu).scale(c)
    return acc.truncate(order)


def global_value_in_chart(value: PluriDifferential, p: Place, chart: Sequence[Fraction], order: int) -> LaurentSeries:
    """Coefficient of du^weight of a global pluri-differential in the same chart."""
    width = order + value.weight + 2
    zu = LaurentSeries(1, [1] + [Fraction(c) for c in chart], width)
    wz = value.expansion(p, width)
    return (compose(wz, zu) * zu.derivative() ** value.weight).truncate(order)


def wronskian_matrix(sections: Sequence[CurveFunction], p: Place, depth: int) -> ExactMatrix:
    """Rows k = 0..depth-1, columns sections: d^k s_i/dz^k at ``p``."""
    if not sections:
        raise ValueError("no sections")
    curve = sections[0].curve
    curve.check_place(p)
    if p.is_infinity or p.ramified:
        raise ValueError("Wronskian place must be affine and unramified")
    cols = []
    for s in sections:
        if s.is_zero():
            cols.append([Fraction(0)] * depth)
            continue
        if valuation(s, p) < 0:
            raise ValueError(f"section {s} has a pole at {p}")
        ser = local_expansion(s, p, depth)
        cols.append([factorial(k) * ser[k] for k in range(depth)])
    labels = [f"d^{k}" for k in range(depth)]
    return ExactMatrix.from_columns(cols, rows=depth, row_labels=labels)


def brill_noether_rho(g: int, r: int, d: int) -> int:
    if g < 0 or r < 0:
        raise ValueError("g and r must be nonnegative")
    return g - (r + 1) * (g - d + r)
